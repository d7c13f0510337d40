//! Structure of `JW(H) - embed(JW(H0))` for nested frozen-core spaces.

use num_complex::Complex64;
use teqsci::det::Sector;
use teqsci::fermion_qubit::{embed_operator, jordan_wigner, subtract, PauliSum};
use teqsci::hamio::{restrict_active_space, ActiveSpaceSpec};
use teqsci::model::random_table;
use teqsci::oracle::casci;
use teqsci::simulator::{prepare_initial_state, Statevector};

fn element(op: &PauliSum, x: u64, y: u64) -> Complex64 {
    let col = Statevector::basis_state(op.n_qubits(), y).unwrap().apply_operator(op).unwrap();
    col[x as usize]
}

/// 4 orbitals, H0 on orbitals 1 and 2 with orbital 0 frozen and 3 virtual.
fn pair(seed: u64) -> (PauliSum, Vec<usize>, u64) {
    let parent = random_table(4, 4, 0, seed);
    let h0 = restrict_active_space(&parent, &ActiveSpaceSpec::new(2, vec![1, 2])).unwrap();
    let placement = vec![2, 3, 4, 5];
    let diff = subtract(&jordan_wigner(&parent), &embed_operator(&jordan_wigner(&h0), &placement, 8).unwrap()).unwrap();
    (diff, placement, 0b11)
}

#[test]
fn difference_vanishes_on_the_frozen_core_block() {
    for seed in [17, 18, 19] {
        let (diff, placement, core) = pair(seed);
        assert!(diff.is_hermitian());
        let small = Sector::new(2, 2, 0).determinants();
        let embed = |d: u64| -> u64 {
            placement.iter().enumerate().filter(|(i, _)| d >> i & 1 == 1).map(|(_, &t)| 1u64 << t).sum::<u64>() | core
        };
        for x in &small {
            for y in &small {
                let v = element(&diff, embed(x.0), embed(y.0));
                assert!(v.norm() < 1e-12, "seed {seed}: <{x}|H-H0|{y}> = {v}");
            }
        }
    }
}

#[test]
fn difference_couples_the_block_to_its_complement() {
    let (diff, placement, core) = pair(17);
    let block: u64 = placement.iter().map(|q| 1u64 << q).sum();
    assert!(diff.terms().iter().any(|(p, _)| p.support() & !block != 0 && p.support() & block != 0));
    // single excitation from the frozen orbital (alpha) into the virtual one
    let from = core | 1 << 2 | 1 << 3;
    let to = 1 << 1 | 1 << 2 | 1 << 3 | 1 << 6;
    assert!(element(&diff, to, from).norm() > 1e-8);
}

#[test]
fn embedded_h0_energy_of_injected_eigenstate() {
    let parent = random_table(4, 4, 0, 23);
    let h0 = restrict_active_space(&parent, &ActiveSpaceSpec::new(2, vec![1, 2])).unwrap();
    let sol = casci(&h0, 3).unwrap();
    let placement = [2, 3, 4, 5];
    let op = embed_operator(&jordan_wigner(&h0), &placement, 8).unwrap();
    for k in 0..3 {
        let st = sol.state(k);
        let amps: Vec<_> = st.dets.iter().copied().zip(st.coeffs.iter().copied()).collect();
        let psi = prepare_initial_state(&amps, &placement, &[0, 1], 8).unwrap();
        let e = psi.expectation(&op).unwrap();
        assert!((e.re - sol.eigenvalues[k]).abs() < 1e-10 && e.im.abs() < 1e-12);
    }
}
