//! Qubit Hamiltonian against the determinant-basis Hamiltonian.

mod common;

use common::real_dense;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teqsci::det::Sector;
use teqsci::fermion_qubit::{jordan_wigner, number_operator, sz_operator};
use teqsci::model::random_table;
use teqsci::oracle::{casci, dense_hamiltonian, diagonal_energy, slater_condon};
use teqsci::simulator::Statevector;

#[test]
fn sector_blocks_match_slater_condon() {
    for (m, n_e, ms2, seed) in [(1, 2, 0, 1), (2, 2, 0, 2), (2, 1, 1, 3), (3, 4, 0, 4), (3, 3, 1, 5), (3, 2, 2, 6)] {
        let t = random_table(m, n_e, ms2, seed);
        let dense = real_dense(&jordan_wigner(&t));
        let basis = Sector::of_table(&t).determinants();
        let sc = dense_hamiltonian(&t, &basis);
        let idx: Vec<usize> = basis.iter().map(|d| d.bits() as usize).collect();
        let block = nalgebra::DMatrix::from_fn(idx.len(), idx.len(), |i, j| dense[(idx[i], idx[j])]);
        assert!((&block - &sc).abs().max() < 1e-10, "M={m}");
        let mut a: Vec<f64> = block.symmetric_eigen().eigenvalues.iter().copied().collect();
        let mut b: Vec<f64> = sc.symmetric_eigen().eigenvalues.iter().copied().collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-10);
        }
    }
}

#[test]
fn random_pairs_match_statevector_elements() {
    let t = random_table(4, 4, 0, 9);
    let op = jordan_wigner(&t);
    let basis = Sector::of_table(&t).determinants();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let x = basis[rng.gen_range(0..basis.len())];
        let y = basis[rng.gen_range(0..basis.len())];
        let col = Statevector::basis_state(8, y.bits()).unwrap().apply_operator(&op).unwrap();
        let v = col[x.bits() as usize];
        assert!((v.re - slater_condon(&t, x, y)).abs() < 1e-10 && v.im.abs() < 1e-12);
    }
    for _ in 0..50 {
        let x = basis[rng.gen_range(0..basis.len())];
        let e = Statevector::basis_state(8, x.bits()).unwrap().expectation(&op).unwrap();
        assert!((e.re - diagonal_energy(&t, x)).abs() < 1e-10);
    }
}

#[test]
fn casci_matches_jw_on_four_orbitals() {
    let t = random_table(4, 4, 0, 12);
    let dense = real_dense(&jordan_wigner(&t));
    let idx: Vec<usize> = Sector::of_table(&t).determinants().iter().map(|d| d.bits() as usize).collect();
    let block = nalgebra::DMatrix::from_fn(idx.len(), idx.len(), |i, j| dense[(idx[i], idx[j])]);
    let mut ev: Vec<f64> = block.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    let sol = casci(&t, 5).unwrap();
    for k in 0..5 {
        assert!((sol.eigenvalues[k] - ev[k]).abs() < 1e-10);
    }
}

#[test]
fn conserves_number_and_spin() {
    for m in 1..=3 {
        let t = random_table(m, m, if m % 2 == 1 { 1 } else { 0 }, 30 + m as u64);
        let h = jordan_wigner(&t).to_dense().unwrap();
        for op in [number_operator(2 * m), sz_operator(2 * m)] {
            let o = op.to_dense().unwrap();
            assert!((&h * &o - &o * &h).iter().all(|z| z.norm() < 1e-10));
        }
    }
    let big = jordan_wigner(&random_table(5, 4, 0, 44));
    for op in [number_operator(10), sz_operator(10)] {
        let c = big.commutator(&op).unwrap();
        assert!(c.is_empty(), "{} surviving commutator terms", c.len());
    }
}

#[test]
fn hermitian_residue_is_tiny() {
    let op = jordan_wigner(&random_table(4, 4, 0, 77));
    assert!(op.max_imaginary() < 1e-12);
    assert!(op.is_hermitian());
}
