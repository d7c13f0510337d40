//! Time evolution under `H - H0`: short-time Krylov law, Trotter order,
//! conservation laws and truncation.

mod common;

use common::{distance, exact_evolution, real_dense, NestedPair};
use teqsci::det::{Determinant, Sector};
use teqsci::oracle::slater_condon;
use teqsci::simulator::{build_trotter_plan, evolve, probability_outside, two_qubit_cost};

#[test]
fn first_order_krylov_law() {
    let pair = NestedPair::new(5);
    let op = pair.operator();
    let (psi0, phi0) = pair.seed_state(0);
    let support: Vec<u64> = phi0.iter().map(|p| p.0).collect();
    let sector = Sector::of_table(&pair.full);
    let times = [1e-3, 2e-3, 4e-3];
    let states: Vec<_> = times
        .iter()
        .map(|&t| evolve(&psi0, &build_trotter_plan(&op, t, 1, None).unwrap()).unwrap())
        .collect();
    let mut checked = 0;
    for x in sector.determinants() {
        if support.contains(&x.bits()) {
            continue;
        }
        let h: f64 = phi0.iter().map(|&(y, c)| slater_condon(&pair.full, x, Determinant(y)) * c).sum();
        let expected = h * h;
        if expected < 1e-6 {
            continue;
        }
        // least squares for p(t) = a t^2 + b t^3
        let (mut s44, mut s45, mut s55, mut r4, mut r5) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for (t, psi) in times.iter().zip(&states) {
            let p = psi.probability(x.bits());
            let (u, v) = (t * t, t * t * t);
            s44 += u * u;
            s45 += u * v;
            s55 += v * v;
            r4 += u * p;
            r5 += v * p;
        }
        let a = (r4 * s55 - r5 * s45) / (s44 * s55 - s45 * s45);
        let rel = (a - expected).abs() / expected;
        assert!(rel < 0.05, "{x}: fitted {a}, expected {expected}");
        checked += 1;
    }
    assert!(checked >= 5, "only {checked} configurations checked");
}

#[test]
fn trotter_error_halves_per_doubling() {
    let pair = NestedPair::new(8);
    let op = pair.operator();
    let a = real_dense(&op);
    let (psi0, _) = pair.seed_state(0);
    let total = 1.0;
    let exact = exact_evolution(&a, psi0.amplitudes(), total);
    let errors: Vec<f64> = [4, 8, 16, 32]
        .iter()
        .map(|&n| {
            let plan = build_trotter_plan(&op, total / n as f64, n, None).unwrap();
            distance(evolve(&psi0, &plan).unwrap().amplitudes(), &exact)
        })
        .collect();
    for w in errors.windows(2) {
        let ratio = w[0] / w[1];
        assert!((1.5..=2.5).contains(&ratio), "errors {errors:?}");
    }
}

#[test]
fn untruncated_evolution_stays_in_sector() {
    let pair = NestedPair::new(11);
    let op = pair.operator();
    let sector = Sector::of_table(&pair.full);
    for k in 0..3 {
        let (psi0, _) = pair.seed_state(k);
        for dt in [1e-3, 0.5, 2.5, 7.5] {
            let psi = evolve(&psi0, &build_trotter_plan(&op, dt, 2, None).unwrap()).unwrap();
            assert!((psi.norm_squared() - 1.0).abs() < 1e-10);
            for b in 0..256u64 {
                if !sector.contains(Determinant(b)) {
                    assert!(psi.amplitude(b).norm() < 1e-10, "root {k} dt {dt}: leak on {b:08b}");
                }
            }
        }
    }
}

#[test]
fn outside_mass_grows_with_time() {
    let pair = NestedPair::new(14);
    let op = pair.operator();
    let a = real_dense(&op);
    let (psi0, phi0) = pair.seed_state(0);
    let support: Vec<Determinant> = phi0.iter().map(|p| Determinant(p.0)).collect();
    let mut last = 0.0;
    for t in [1e-3, 0.5, 1.0] {
        let amps = exact_evolution(&a, psi0.amplitudes(), t);
        let psi = teqsci::Statevector::from_amplitudes(8, amps).unwrap();
        let out = probability_outside(&psi, &support);
        assert!(out >= last, "t={t}: {out} < {last}");
        last = out;
    }
    assert!(last > 1e-4);
}

/// Independent statement of the truncation rule: walk the terms by
/// descending |c| (ties by letters), stop charging at the first costed term
/// that does not fit, keep all weight <= 1 terms.
#[test]
fn retained_count_matches_reference_greedy() {
    let op = NestedPair::new(3).operator();
    let mut ranked: Vec<(String, f64, usize)> = op
        .terms()
        .iter()
        .map(|(p, c)| (p.letters(), c.re.abs(), p.letters().chars().filter(|&l| l != 'I').count()))
        .collect();
    ranked.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    for budget in [0, 1, 2, 10, 40, 100, 1000] {
        let mut used = 0;
        let mut open = true;
        let mut expected = 0;
        for (_, _, w) in &ranked {
            let cost = if *w <= 1 { 0 } else { 2 * (w - 1) };
            if cost == 0 {
                expected += 1;
            } else if open && used + cost <= budget {
                used += cost;
                expected += 1;
            } else {
                open = false;
            }
        }
        let plan = build_trotter_plan(&op, 0.1, 2, Some(budget)).unwrap();
        assert_eq!(plan.n_retained(), expected, "budget {budget}");
        assert!(plan.gates_per_step() <= budget);
        assert_eq!(plan.retained().map(|t| two_qubit_cost(&t.string)).sum::<usize>(), used);
    }
}
