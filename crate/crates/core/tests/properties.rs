//! Property tests for the invariants of each module.

use proptest::prelude::*;
use teqsci::det::{combinations, spread_even, Determinant, Sector};
use teqsci::hamio::{parse_fcidump, restrict_active_space, write_fcidump, ActiveSpaceSpec};
use teqsci::model::random_table;
use teqsci::oniom::{oniom_energy, relative_profile, LayerEnergies};
use teqsci::oracle::{casci, fidelity, CiState};
use teqsci::qsci::qsci_energies;
use teqsci::selection::{merge, postselect, spin_augment, ConfigurationSet, PostSelected};
use teqsci::simulator::ShotBatch;

/// Determinant from independent alpha and beta occupation masks.
fn det(alpha: u64, beta: u64) -> Determinant {
    Determinant(spread_even(alpha) | spread_even(beta) << 1)
}

fn sector_det(m: usize, n_alpha: usize, n_beta: usize) -> impl Strategy<Value = Determinant> {
    let a = combinations(m, n_alpha);
    let b = combinations(m, n_beta);
    (0..a.len(), 0..b.len()).prop_map(move |(i, j)| det(a[i], b[j]))
}

fn raw_batch(n_qubits: usize) -> impl Strategy<Value = ShotBatch> {
    prop::collection::btree_map(0u64..(1 << n_qubits), 1u64..50, 0..20).prop_map(move |m| ShotBatch {
        n_qubits,
        n_shots: m.values().sum(),
        outcomes: m.into_iter().map(|(k, v)| (Determinant(k), v)).collect(),
        dt: 1.0,
        state_index: 0,
    })
}

fn spatial_pattern(d: Determinant, m: usize) -> Vec<u32> {
    (0..m).map(|p| (d.bits() >> (2 * p) & 1) as u32 + (d.bits() >> (2 * p + 1) & 1) as u32).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fcidump_round_trip(m in 1usize..5, seed in any::<u64>()) {
        let t = random_table(m, m, (m % 2) as i32, seed);
        let once = parse_fcidump(&write_fcidump(&t)).unwrap();
        prop_assert_eq!(&once, &t);
        let twice = parse_fcidump(&write_fcidump(&once)).unwrap();
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn restriction_keeps_symmetry(seed in any::<u64>(), lo in 0usize..2) {
        let parent = random_table(5, 6, 0, seed);
        // freeze `lo` lowest orbitals plus enough to hold 6 - active electrons
        let active: Vec<usize> = (lo..lo + 3).collect();
        let n_act = 6 - 2 * lo;
        if n_act > 6 { return Ok(()); }
        let t = restrict_active_space(&parent, &ActiveSpaceSpec::new(n_act, active)).unwrap();
        for p in 0..3 {
            for q in 0..3 {
                prop_assert_eq!(t.h1(p, q), t.h1(q, p));
                for r in 0..3 {
                    for s in 0..3 {
                        let v = t.eri(p, q, r, s);
                        prop_assert_eq!(v, t.eri(r, s, p, q));
                        prop_assert_eq!(v, t.eri(q, p, s, r));
                    }
                }
            }
        }
    }

    #[test]
    fn postselection_is_exact(batch in raw_batch(6), n_e in 0usize..7, ms2 in -2i32..3) {
        prop_assume!((n_e as i32 + ms2) % 2 == 0 && ms2.unsigned_abs() as usize <= n_e);
        let sector = Sector::new(3, n_e, ms2);
        let ps = postselect(&batch, &sector).unwrap();
        for (d, _) in &ps.kept {
            prop_assert_eq!(d.n_electrons(), n_e);
            prop_assert_eq!(d.ms2(), ms2);
        }
        prop_assert_eq!(ps.kept_count() + ps.rejected_count, batch.n_shots);
        let expected: u64 = batch.outcomes.iter().filter(|o| sector.contains(o.0)).map(|o| o.1).sum();
        prop_assert_eq!(ps.kept_count(), expected);
    }

    #[test]
    fn augmentation_closed_and_idempotent(d in sector_det(5, 3, 2)) {
        let out = spin_augment(d);
        prop_assert!(out.contains(&d));
        for a in &out {
            prop_assert_eq!(spatial_pattern(*a, 5), spatial_pattern(d, 5));
            prop_assert_eq!(a.ms2(), d.ms2());
            let mut again = spin_augment(*a);
            again.sort();
            prop_assert_eq!(&again, &out);
        }
        let n_open = d.singly_occupied().count_ones() as usize;
        let n_up = (n_open as i32 + d.ms2()) as usize / 2;
        prop_assert_eq!(out.len(), teqsci::det::binomial(n_open, n_up));
    }

    #[test]
    fn merge_is_monotone_and_deterministic(
        base in prop::collection::vec(sector_det(4, 2, 2), 1..5),
        first in raw_batch(8),
        second in raw_batch(8),
    ) {
        let sector = Sector::new(4, 4, 0);
        let baseline = ConfigurationSet::baseline(sector, base).unwrap();
        let a = postselect(&first, &sector).unwrap();
        let b = postselect(&second, &sector).unwrap();
        let one = merge(std::slice::from_ref(&a), &baseline).unwrap();
        let two = merge(&[a.clone(), b.clone()], &baseline).unwrap();
        prop_assert!(one.len() >= baseline.len());
        for d in one.members() {
            prop_assert!(two.contains(*d));
        }
        for d in two.members() {
            prop_assert!(sector.contains(*d));
        }
        prop_assert_eq!(&two.members()[..baseline.len()], baseline.members());
        let again = merge(&[a, b], &baseline).unwrap();
        prop_assert_eq!(two.to_json(), again.to_json());
        let empty: Vec<PostSelected> = vec![];
        prop_assert_eq!(merge(&empty, &baseline).unwrap(), baseline);
    }

    #[test]
    fn fidelity_symmetric_and_bounded(
        xs in prop::collection::vec((sector_det(3, 1, 1), -1.0f64..1.0), 1..6),
        ys in prop::collection::vec((sector_det(3, 1, 1), -1.0f64..1.0), 1..6),
    ) {
        let norm = |v: &[(Determinant, f64)]| {
            let mut m = std::collections::BTreeMap::new();
            for (d, c) in v { *m.entry(*d).or_insert(0.0) += c; }
            let n: f64 = m.values().map(|c: &f64| c * c).sum::<f64>().sqrt();
            let (d, c): (Vec<_>, Vec<_>) = m.into_iter().map(|(d, c)| (d, c / n)).unzip();
            CiState::new(d, c)
        };
        let (a, b) = (norm(&xs), norm(&ys));
        prop_assume!(a.coeffs.iter().all(|c| c.is_finite()) && b.coeffs.iter().all(|c| c.is_finite()));
        let f = fidelity(&a, &b);
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!((f - fidelity(&b, &a)).abs() < 1e-14);
        prop_assert!((fidelity(&a, &a) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oniom_linearity(lr in -1e3f64..1e3, lm in -1e3f64..1e3, hm in -1e3f64..1e3, shift in -10.0f64..10.0) {
        let base = oniom_energy(&LayerEnergies::ingested("x", lr, lm, hm)).unwrap();
        let moved = oniom_energy(&LayerEnergies::ingested("x", lr + shift, lm + shift, hm + shift)).unwrap();
        prop_assert!((moved - (base + shift)).abs() < 1e-9);
        prop_assert_eq!(oniom_energy(&LayerEnergies::ingested("x", lr, lm, lm)).unwrap(), lr);
        let entries = vec![LayerEnergies::ingested("a", lr, lm, hm), LayerEnergies::ingested("b", hm, lr, lm)];
        for (_, d) in relative_profile(&entries, "a").unwrap().iter().take(1) {
            prop_assert_eq!(*d, 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn qsci_bounds_and_ordering(seed in any::<u64>(), keep in 6usize..30, order_seed in any::<u64>()) {
        let t = random_table(4, 4, 0, seed);
        let sector = Sector::of_table(&t);
        let all = sector.determinants();
        let exact = casci(&t, 3).unwrap();
        let mut chosen: Vec<Determinant> = all.iter().copied().step_by(36 / keep.min(36)).collect();
        chosen.truncate(keep);
        prop_assume!(chosen.len() >= 3);
        let set = ConfigurationSet::baseline(sector, chosen.clone()).unwrap();
        let r = qsci_energies(&t, &set, 3).unwrap();
        for k in 0..3 {
            prop_assert!(r.eigenvalues[k] >= exact.eigenvalues[k] - 1e-10);
        }
        // any permutation of the same set
        let mut shuffled = chosen;
        let n = shuffled.len();
        for i in 0..n {
            let j = (order_seed.rotate_left(i as u32) as usize) % n;
            shuffled.swap(i, j);
        }
        let r2 = qsci_energies(&t, &ConfigurationSet::baseline(sector, shuffled).unwrap(), 3).unwrap();
        for k in 0..3 {
            prop_assert!((r.eigenvalues[k] - r2.eigenvalues[k]).abs() < 1e-10);
        }
    }
}
