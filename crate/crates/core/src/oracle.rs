//! Brute-force references: Slater–Condon matrix elements, full CASCI in the
//! determinant basis, Hartree–Fock determinant energy, `<S^2>` and state
//! fidelities.

use std::collections::HashMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::det::{annihilate, create, Determinant, Sector};
use crate::eigen::{davidson, dense_lowest, CsrMatrix, DavidsonOptions, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::hamio::IntegralTable;

/// Largest sector the oracle will diagonalize.
pub const MAX_CASCI_BASIS: usize = 1_000_000;
/// Above this dimension the oracle switches to the iterative solver.
pub const ORACLE_DENSE_LIMIT: usize = 4096;

#[inline]
fn spatial(q: usize) -> usize {
    q / 2
}

#[inline]
fn same_spin(a: usize, b: usize) -> bool {
    a % 2 == b % 2
}

/// Spin-orbital two-electron integral `(pq|rs)`, zero unless the spins of
/// `p,q` and of `r,s` match.
#[inline]
fn so_eri(t: &IntegralTable, p: usize, q: usize, r: usize, s: usize) -> f64 {
    if same_spin(p, q) && same_spin(r, s) {
        t.eri(spatial(p), spatial(q), spatial(r), spatial(s))
    } else {
        0.0
    }
}

fn occupied(bits: u64) -> impl Iterator<Item = usize> {
    let mut rest = bits;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let q = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(q)
        }
    })
}

/// Diagonal element `<x|H|x>` including the core energy.
pub fn diagonal_energy(table: &IntegralTable, x: Determinant) -> f64 {
    let occ: Vec<usize> = occupied(x.bits()).collect();
    let mut e = table.e_core();
    for (k, &i) in occ.iter().enumerate() {
        e += table.h1(spatial(i), spatial(i));
        for &j in &occ[..k] {
            e += table.eri(spatial(i), spatial(i), spatial(j), spatial(j));
            if same_spin(i, j) {
                e -= table.eri(spatial(i), spatial(j), spatial(j), spatial(i));
            }
        }
    }
    e
}

/// `<x|H|y>` by the Slater–Condon rules. Orbitals are real, so the element is
/// real; zero beyond double excitations. Fermionic signs follow the
/// spin-orbital (qubit) ordering.
pub fn slater_condon(table: &IntegralTable, x: Determinant, y: Determinant) -> f64 {
    let diff = x.bits() ^ y.bits();
    match diff.count_ones() {
        0 => diagonal_energy(table, x),
        2 => {
            // y -> x moves one electron i -> a
            let i = (diff & y.bits()).trailing_zeros() as usize;
            let a = (diff & x.bits()).trailing_zeros() as usize;
            if !same_spin(i, a) {
                return 0.0;
            }
            let (mid, s1) = annihilate(y.bits(), i).expect("occupied");
            let (_, s2) = create(mid, a).expect("empty");
            let mut v = table.h1(spatial(a), spatial(i));
            for k in occupied(y.bits()) {
                if k == i {
                    continue;
                }
                v += so_eri(table, a, i, k, k) - so_eri(table, a, k, k, i);
            }
            s1 * s2 * v
        }
        4 => {
            let holes = diff & y.bits();
            let parts = diff & x.bits();
            if holes.count_ones() != 2 {
                return 0.0;
            }
            let i = holes.trailing_zeros() as usize;
            let j = 63 - holes.leading_zeros() as usize;
            let a = parts.trailing_zeros() as usize;
            let b = 63 - parts.leading_zeros() as usize;
            // <x| a_a^+ a_b^+ a_j a_i |y>
            let mut bits = y.bits();
            let mut sign = 1.0;
            for (op_create, q) in [(false, i), (false, j), (true, b), (true, a)] {
                let (next, s) = if op_create { create(bits, q) } else { annihilate(bits, q) }
                    .expect("valid excitation");
                bits = next;
                sign *= s;
            }
            sign * (so_eri(table, a, i, b, j) - so_eri(table, a, j, b, i))
        }
        _ => 0.0,
    }
}

/// Energy of the aufbau determinant of the table's sector.
pub fn hf_energy(table: &IntegralTable) -> f64 {
    diagonal_energy(table, Sector::of_table(table).aufbau())
}

/// Exact eigenpairs of a full determinant sector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CasciSolution {
    pub sector: Sector,
    pub basis: Vec<Determinant>,
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k][i]` is the coefficient of `basis[i]` in root `k`.
    pub eigenvectors: Vec<Vec<f64>>,
}

impl CasciSolution {
    pub fn state(&self, root: usize) -> CiState {
        CiState::new(self.basis.clone(), self.eigenvectors[root].clone())
    }
}

/// Dense Hamiltonian over an explicit determinant list.
pub fn dense_hamiltonian(table: &IntegralTable, basis: &[Determinant]) -> DMatrix<f64> {
    let n = basis.len();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = slater_condon(table, basis[i], basis[j]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

fn sparse_hamiltonian(table: &IntegralTable, basis: &[Determinant]) -> CsrMatrix {
    use rayon::prelude::*;
    let rows = (0..basis.len())
        .into_par_iter()
        .map(|i| {
            basis
                .iter()
                .enumerate()
                .filter(|(_, d)| d.excitation_degree(basis[i]) <= 2)
                .map(|(j, &d)| (j, slater_condon(table, basis[i], d)))
                .filter(|&(j, v)| v != 0.0 || j == i)
                .collect()
        })
        .collect();
    CsrMatrix::from_rows(rows)
}

/// Full CASCI: the lowest `n_roots` eigenpairs in the table's sector.
pub fn casci(table: &IntegralTable, n_roots: usize) -> Result<CasciSolution> {
    let sector = Sector::of_table(table);
    let size = sector.dimension();
    if size > MAX_CASCI_BASIS {
        return Err(Error::BasisTooLarge { size, limit: MAX_CASCI_BASIS });
    }
    if n_roots > size {
        return Err(Error::TooManyRoots { requested: n_roots, dim: size });
    }
    let basis = sector.determinants();
    let pairs = if size <= ORACLE_DENSE_LIMIT {
        dense_lowest(&dense_hamiltonian(table, &basis), n_roots)?
    } else {
        let m = SymmetricMatrix::Sparse(sparse_hamiltonian(table, &basis));
        davidson(&m, n_roots, DavidsonOptions::default())?
    };
    let mut vectors = pairs.vectors;
    vectors.iter_mut().for_each(|v| fix_sign(v));
    Ok(CasciSolution { sector, basis, eigenvalues: pairs.values, eigenvectors: vectors })
}

/// Makes the largest-magnitude component positive (first one on ties).
pub fn fix_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() + 1e-12 {
            best = i;
        }
    }
    if v.get(best).is_some_and(|&x| x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Real CI vector over an explicit determinant list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CiState {
    pub dets: Vec<Determinant>,
    pub coeffs: Vec<f64>,
}

impl CiState {
    pub fn new(dets: Vec<Determinant>, coeffs: Vec<f64>) -> Self {
        assert_eq!(dets.len(), coeffs.len(), "one coefficient per determinant");
        Self { dets, coeffs }
    }

    pub fn norm_squared(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    fn as_map(&self) -> HashMap<Determinant, f64> {
        let mut map = HashMap::with_capacity(self.dets.len());
        for (d, c) in self.dets.iter().zip(&self.coeffs) {
            *map.entry(*d).or_insert(0.0) += c;
        }
        map
    }
}

/// `|<a|b>|^2` over the union support; determinants missing from one side
/// count as zero coefficients.
pub fn fidelity(a: &CiState, b: &CiState) -> f64 {
    let (small, large) = if a.dets.len() <= b.dets.len() { (a, b) } else { (b, a) };
    let map = large.as_map();
    let overlap: f64 =
        small.dets.iter().zip(&small.coeffs).map(|(d, c)| c * map.get(d).copied().unwrap_or(0.0)).sum();
    (overlap * overlap).min(1.0)
}

/// `<psi|S^2|psi>` with `S^2 = S_z^2 + n_open/2 + sum_{p!=q} s_p^+ s_q^-`;
/// spin-flipped determinants absent from the state contribute nothing.
pub fn s_squared(state: &CiState) -> f64 {
    let map = state.as_map();
    let mut total = 0.0;
    for (&d, &c) in state.dets.iter().zip(&state.coeffs) {
        if c == 0.0 {
            continue;
        }
        let sz = d.ms2() as f64 / 2.0;
        let open = d.singly_occupied();
        total += c * c * (sz * sz + open.count_ones() as f64 / 2.0);
        // s_p^+ s_q^-: q alpha -> beta, then p beta -> alpha
        let bits = d.bits();
        for q in occupied(open) {
            if bits >> (2 * q) & 1 == 0 {
                continue;
            }
            for p in occupied(open) {
                if p == q || bits >> (2 * p + 1) & 1 == 0 {
                    continue;
                }
                let step = annihilate(bits, 2 * q)
                    .and_then(|(b, s1)| create(b, 2 * q + 1).map(|(b, s2)| (b, s1 * s2)))
                    .and_then(|(b, s)| annihilate(b, 2 * p + 1).map(|(b, s3)| (b, s * s3)))
                    .and_then(|(b, s)| create(b, 2 * p).map(|(b, s4)| (b, s * s4)));
                if let Some((target, sign)) = step {
                    if let Some(&ct) = map.get(&Determinant(target)) {
                        total += c * ct * sign;
                    }
                }
            }
        }
    }
    total
}

/// Spin quantum number `S` nearest to `<S^2> = S(S+1)`, times two.
pub fn spin_multiplicity_index(s2: f64) -> usize {
    let s = (-1.0 + (1.0 + 4.0 * s2.max(0.0)).sqrt()) / 2.0;
    (2.0 * s).round() as usize
}

/// Labels roots `S0, S1, ...` (singlets), `D0, ...`, `T0, ...`, `Q0, ...`
/// by their `<S^2>`, counting within each multiplicity in energy order.
pub fn spin_labels(s2_values: &[f64]) -> Vec<String> {
    let mut counters: HashMap<usize, usize> = HashMap::new();
    s2_values
        .iter()
        .map(|&s2| {
            let twice_s = spin_multiplicity_index(s2);
            let prefix = match twice_s {
                0 => "S".to_string(),
                1 => "D".to_string(),
                2 => "T".to_string(),
                3 => "Qr".to_string(),
                4 => "Q".to_string(),
                n => format!("M{}-", n + 1),
            };
            let k = counters.entry(twice_s).or_insert(0);
            let label = format!("{prefix}{k}");
            *k += 1;
            label
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::random_table;

    #[test]
    fn one_orbital_closed_shell() {
        let t = IntegralTable::new(1, 2, 0, 0.4, vec![-1.1], vec![0.6]).unwrap();
        let sol = casci(&t, 1).unwrap();
        assert_eq!(sol.basis.len(), 1);
        assert!((sol.eigenvalues[0] - (2.0 * -1.1 + 0.6 + 0.4)).abs() < 1e-15);
    }

    #[test]
    fn excitation_degree_three_vanishes() {
        let t = random_table(4, 4, 0, 2);
        let x = Determinant::from_bitstring("11110000").unwrap();
        let y = Determinant::from_bitstring("10001111").unwrap();
        assert_eq!(x.excitation_degree(y), 3);
        assert_eq!(slater_condon(&t, x, y), 0.0);
    }

    #[test]
    fn matrix_is_symmetric() {
        let t = random_table(4, 4, 0, 3);
        let basis = Sector::of_table(&t).determinants();
        for &x in &basis {
            for &y in &basis {
                assert!((slater_condon(&t, x, y) - slater_condon(&t, y, x)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn basis_size_and_orthonormality() {
        let t = random_table(5, 4, 2, 4);
        let sol = casci(&t, 3).unwrap();
        assert_eq!(sol.basis.len(), 10 * 5);
        for a in 0..3 {
            for b in 0..3 {
                let d: f64 = sol.eigenvectors[a].iter().zip(&sol.eigenvectors[b]).map(|(x, y)| x * y).sum();
                assert!((d - if a == b { 1.0 } else { 0.0 }).abs() < 1e-10);
            }
        }
        assert!(sol.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn fidelity_limits() {
        let a = CiState::new(vec![Determinant(0b0011), Determinant(0b1100)], vec![0.6, 0.8]);
        assert!((fidelity(&a, &a) - 1.0).abs() < 1e-15);
        let b = CiState::new(vec![Determinant(0b0110)], vec![1.0]);
        assert_eq!(fidelity(&a, &b), 0.0);
        let c = CiState::new(vec![Determinant(0b1100), Determinant(0b0110)], vec![1.0, 0.0]);
        assert!((fidelity(&a, &c) - 0.64).abs() < 1e-15);
        assert_eq!(fidelity(&a, &c), fidelity(&c, &a));
    }

    #[test]
    fn s_squared_of_two_open_shells() {
        assert_eq!(s_squared(&CiState::new(vec![Determinant(0b0011)], vec![1.0])), 0.0);
        // orbital 0 alpha + orbital 1 beta, and the flipped pattern
        let ab = Determinant::from_bitstring("1001").unwrap();
        let ba = Determinant::from_bitstring("0110").unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = s_squared(&CiState::new(vec![ab, ba], vec![h, h]));
        let minus = s_squared(&CiState::new(vec![ab, ba], vec![h, -h]));
        // |1001> = a+_{0a} a+_{1b}|vac>, so the antisymmetric combination is
        // the singlet and the symmetric one the Sz=0 triplet
        assert!(minus.abs() < 1e-14, "{minus}");
        assert!((plus - 2.0).abs() < 1e-14, "{plus}");
        assert!((s_squared(&CiState::new(vec![ab], vec![1.0])) - 1.0).abs() < 1e-14);
        // high-spin triplet
        let aa = Determinant::from_bitstring("1010").unwrap();
        assert!((s_squared(&CiState::new(vec![aa], vec![1.0])) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn casci_roots_are_spin_eigenstates() {
        let t = random_table(4, 4, 0, 8);
        let sol = casci(&t, 8).unwrap();
        for k in 0..8 {
            let s2 = s_squared(&sol.state(k));
            let nearest = [0.0, 2.0, 6.0].iter().map(|v| (s2 - v).abs()).fold(f64::MAX, f64::min);
            assert!(nearest < 1e-8, "root {k}: <S^2> = {s2}");
        }
    }

    #[test]
    fn labels() {
        assert_eq!(spin_labels(&[0.0, 2.0, 1e-9, 2.0, 6.0]), vec!["S0", "T0", "S1", "T1", "Q0"]);
    }
}
