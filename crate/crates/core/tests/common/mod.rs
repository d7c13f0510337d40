#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use teqsci::fermion_qubit::{embed_operator, jordan_wigner, subtract, PauliSum};
use teqsci::hamio::{restrict_active_space, ActiveSpaceSpec, IntegralTable};
use teqsci::model::random_table;
use teqsci::oracle::casci;
use teqsci::simulator::{prepare_initial_state, Statevector};

/// Real part of the dense matrix of a real-symmetric qubit operator, after
/// checking that the imaginary part vanishes.
pub fn real_dense(op: &PauliSum) -> DMatrix<f64> {
    let m = op.to_dense().unwrap();
    assert!(m.iter().all(|z| z.im.abs() < 1e-12));
    m.map(|z| z.re)
}

/// `exp(-i A t) v` for real symmetric `A`, by eigendecomposition.
pub fn exact_evolution(a: &DMatrix<f64>, v: &[Complex64], t: f64) -> Vec<Complex64> {
    let eig = SymmetricEigen::new(a.clone());
    let u = &eig.eigenvectors;
    let n = v.len();
    let mut w = vec![Complex64::default(); n];
    for k in 0..n {
        let proj: Complex64 = (0..n).map(|i| v[i] * u[(i, k)]).sum();
        let phase = Complex64::from_polar(1.0, -eig.eigenvalues[k] * t);
        for i in 0..n {
            w[i] += proj * phase * u[(i, k)];
        }
    }
    w
}

pub fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

/// A 4-orbital table with its (2,2) initial space on orbitals 1 and 2.
pub struct NestedPair {
    pub full: IntegralTable,
    pub initial: IntegralTable,
    pub placement: Vec<usize>,
    pub extra_occupied: Vec<usize>,
}

impl NestedPair {
    pub fn new(seed: u64) -> Self {
        let full = random_table(4, 4, 0, seed);
        let initial = restrict_active_space(&full, &ActiveSpaceSpec::new(2, vec![1, 2])).unwrap();
        Self { full, initial, placement: vec![2, 3, 4, 5], extra_occupied: vec![0, 1] }
    }

    pub fn operator(&self) -> PauliSum {
        let h0 = embed_operator(&jordan_wigner(&self.initial), &self.placement, 8).unwrap();
        subtract(&jordan_wigner(&self.full), &h0).unwrap()
    }

    /// Root `k` of the initial space, placed on the full register.
    pub fn seed_state(&self, k: usize) -> (Statevector, Vec<(u64, f64)>) {
        let st = casci(&self.initial, k + 1).unwrap().state(k);
        let amps: Vec<_> = st.dets.iter().copied().zip(st.coeffs.iter().copied()).collect();
        let psi = prepare_initial_state(&amps, &self.placement, &self.extra_occupied, 8).unwrap();
        let embedded = (0..256u64).filter(|&b| psi.probability(b) > 0.0).map(|b| (b, psi.amplitude(b).re)).collect();
        (psi, embedded)
    }
}
