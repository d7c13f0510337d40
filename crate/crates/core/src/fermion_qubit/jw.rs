//! Jordan–Wigner images of fermionic operators.
//!
//! `a_q = Z_0 ... Z_{q-1} (X_q + i Y_q) / 2`, with `|1>` meaning occupied.

use std::collections::HashMap;

use num_complex::Complex64;

use super::pauli::{PauliString, PauliSum};
use crate::hamio::IntegralTable;

type Term = (PauliString, Complex64);

fn ladder_terms(q: usize, n_qubits: usize, dagger: bool) -> [Term; 2] {
    let chain = (1u64 << q) - 1;
    let bit = 1u64 << q;
    let x = PauliString::new(n_qubits, bit, chain).expect("in range");
    let y = PauliString::new(n_qubits, bit, chain | bit).expect("in range");
    let sign = if dagger { -0.5 } else { 0.5 };
    [(x, Complex64::new(0.5, 0.0)), (y, Complex64::new(0.0, sign))]
}

/// `a_q` on an `n_qubits` register.
pub fn annihilation(q: usize, n_qubits: usize) -> PauliSum {
    PauliSum::from_terms(n_qubits, ladder_terms(q, n_qubits, false)).expect("same width")
}

/// `a_q^dagger` on an `n_qubits` register.
pub fn creation(q: usize, n_qubits: usize) -> PauliSum {
    PauliSum::from_terms(n_qubits, ladder_terms(q, n_qubits, true)).expect("same width")
}

fn product(factors: &[&[Term; 2]]) -> Vec<Term> {
    let mut out: Vec<Term> = vec![(PauliString::identity(factors[0][0].0.n_qubits()), Complex64::new(1.0, 0.0))];
    for f in factors {
        let mut next = Vec::with_capacity(out.len() * 2);
        for (p, a) in &out {
            for (q, b) in f.iter() {
                let (ph, r) = p.mul(q);
                next.push((r, ph * a * b));
            }
        }
        out = next;
    }
    out
}

/// Qubit Hamiltonian of the table on `2 * n_orbitals` qubits (qubit `2p` is
/// orbital `p` alpha, `2p + 1` orbital `p` beta), with `e_core` carried by
/// the identity term.
pub fn jordan_wigner(table: &IntegralTable) -> PauliSum {
    let m = table.n_orbitals();
    let n = 2 * m;
    let creators: Vec<[Term; 2]> = (0..n).map(|q| ladder_terms(q, n, true)).collect();
    let annihilators: Vec<[Term; 2]> = (0..n).map(|q| ladder_terms(q, n, false)).collect();

    let mut acc: HashMap<PauliString, Complex64> = HashMap::new();
    acc.insert(PauliString::identity(n), Complex64::new(table.e_core(), 0.0));
    let mut push = |terms: Vec<Term>, coef: f64| {
        for (p, c) in terms {
            *acc.entry(p).or_default() += c * coef;
        }
    };

    for p in 0..m {
        for q in 0..m {
            let h = table.h1(p, q);
            if h == 0.0 {
                continue;
            }
            for spin in 0..2 {
                push(product(&[&creators[2 * p + spin], &annihilators[2 * q + spin]]), h);
            }
        }
    }

    for p in 0..m {
        for q in 0..m {
            for r in 0..m {
                for s in 0..m {
                    let v = table.eri(p, q, r, s);
                    if v == 0.0 {
                        continue;
                    }
                    for sigma in 0..2 {
                        for tau in 0..2 {
                            let (pp, qq) = (2 * p + sigma, 2 * q + sigma);
                            let (rr, ss) = (2 * r + tau, 2 * s + tau);
                            if pp == rr || qq == ss {
                                continue;
                            }
                            push(
                                product(&[
                                    &creators[pp],
                                    &creators[rr],
                                    &annihilators[ss],
                                    &annihilators[qq],
                                ]),
                                0.5 * v,
                            );
                        }
                    }
                }
            }
        }
    }

    PauliSum::canonical(n, acc)
}

/// Total particle-number operator `sum_q n_q`.
pub fn number_operator(n_qubits: usize) -> PauliSum {
    let terms = (0..n_qubits).flat_map(|q| {
        [
            (PauliString::identity(n_qubits), Complex64::new(0.5, 0.0)),
            (PauliString::new(n_qubits, 0, 1 << q).expect("in range"), Complex64::new(-0.5, 0.0)),
        ]
    });
    PauliSum::from_terms(n_qubits, terms).expect("same width")
}

/// Spin projection `S_z = (n_alpha - n_beta) / 2`.
pub fn sz_operator(n_qubits: usize) -> PauliSum {
    let terms = (0..n_qubits).map(|q| {
        let sign = if q % 2 == 0 { -0.25 } else { 0.25 };
        (PauliString::new(n_qubits, 0, 1 << q).expect("in range"), Complex64::new(sign, 0.0))
    });
    PauliSum::from_terms(n_qubits, terms).expect("same width")
}
