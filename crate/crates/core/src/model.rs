//! Stand-in Hamiltonians for testing and demos.
//!
//! [`ppp_polyene`] builds the pi-electron Pariser–Parr–Pople model of a linear
//! polyene in its RHF molecular-orbital basis, a small multiconfigurational
//! system in the same family as retinal. [`random_table`] produces dense
//! random tables with positive semidefinite two-electron integrals.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hamio::IntegralTable;
use crate::oniom::HARTREE_TO_EV;

/// Random table with increasing orbital energies and `(pq|rs) = sum_L B^L_pq B^L_rs`.
///
/// Panics if `(n_electrons, ms2)` does not fit `n_orbitals`.
pub fn random_table(n_orbitals: usize, n_electrons: usize, ms2: i32, seed: u64) -> IntegralTable {
    let m = n_orbitals;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h1 = vec![0.0; m * m];
    for p in 0..m {
        h1[p * m + p] = -2.0 + 0.6 * p as f64 + rng.gen_range(-0.1..0.1);
        for q in 0..p {
            let v = rng.gen_range(-0.15..0.15);
            h1[p * m + q] = v;
            h1[q * m + p] = v;
        }
    }
    let n_aux = m + 2;
    let mut b = vec![0.0; n_aux * m * m];
    for l in 0..n_aux {
        for p in 0..m {
            for q in 0..=p {
                let v = if p == q { rng.gen_range(0.2..0.6) } else { rng.gen_range(-0.12..0.12) };
                b[(l * m + p) * m + q] = v;
                b[(l * m + q) * m + p] = v;
            }
        }
    }
    let scale = 1.0 / n_aux as f64;
    let mut h2 = vec![0.0; m * m * m * m];
    for p in 0..m {
        for q in 0..m {
            for r in 0..m {
                for s in 0..m {
                    let v: f64 = (0..n_aux).map(|l| b[(l * m + p) * m + q] * b[(l * m + r) * m + s]).sum();
                    h2[((p * m + q) * m + r) * m + s] = v * scale;
                }
            }
        }
    }
    // average the eight images so the table is exactly symmetric
    let mut sym = h2.clone();
    for p in 0..m {
        for q in 0..m {
            for r in 0..m {
                for s in 0..m {
                    let idx = |a: usize, b: usize, c: usize, d: usize| ((a * m + b) * m + c) * m + d;
                    let avg = (h2[idx(p, q, r, s)]
                        + h2[idx(q, p, r, s)]
                        + h2[idx(p, q, s, r)]
                        + h2[idx(q, p, s, r)]
                        + h2[idx(r, s, p, q)]
                        + h2[idx(s, r, p, q)]
                        + h2[idx(r, s, q, p)]
                        + h2[idx(s, r, q, p)])
                        / 8.0;
                    sym[idx(p, q, r, s)] = avg;
                }
            }
        }
    }
    let e_core = rng.gen_range(0.2..1.0);
    IntegralTable::new(m, n_electrons, ms2, e_core, h1, sym).expect("valid random table")
}

/// Geometry and parameters of the PPP chain.
#[derive(Debug, Clone, Copy)]
pub struct PppParameters {
    /// Short (formally double) bond length in angstrom.
    pub short_bond: f64,
    pub long_bond: f64,
    /// Hopping integrals in eV.
    pub beta_short: f64,
    pub beta_long: f64,
    /// On-site repulsion in eV.
    pub hubbard_u: f64,
}

impl Default for PppParameters {
    fn default() -> Self {
        Self { short_bond: 1.35, long_bond: 1.46, beta_short: -2.6, beta_long: -2.2, hubbard_u: 11.13 }
    }
}

/// Ohno-interpolated repulsion in eV for a distance in angstrom.
fn ohno(u: f64, r: f64) -> f64 {
    const E2: f64 = 14.397;
    E2 / ((E2 / u).powi(2) + r * r).sqrt()
}

fn sorted_eigenvectors(m: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(m.clone());
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut c = DMatrix::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        let mut col: Vec<f64> = eig.eigenvectors.column(src).iter().copied().collect();
        crate::oracle::fix_sign(&mut col);
        for i in 0..n {
            c[(i, k)] = col[i];
        }
    }
    c
}

/// PPP Hamiltonian of a neutral all-trans polyene with `n_sites` carbons
/// (one pi electron each) in the canonical RHF orbital basis, in hartree.
pub fn ppp_polyene(n_sites: usize, params: PppParameters) -> IntegralTable {
    assert!(n_sites >= 2 && n_sites.is_multiple_of(2), "closed-shell chain needs an even site count");
    let n = n_sites;
    let angle = 30f64.to_radians();
    let mut pos = vec![(0.0f64, 0.0f64); n];
    for k in 1..n {
        let len = if k % 2 == 1 { params.short_bond } else { params.long_bond };
        let dir = if k % 2 == 1 { angle } else { -angle };
        pos[k] = (pos[k - 1].0 + len * dir.cos(), pos[k - 1].1 + len * dir.sin());
    }
    let dist = |i: usize, j: usize| ((pos[i].0 - pos[j].0).powi(2) + (pos[i].1 - pos[j].1).powi(2)).sqrt();

    let mut gamma = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gamma[(i, j)] = ohno(params.hubbard_u, dist(i, j)) / HARTREE_TO_EV;
        }
    }
    let mut h = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = -(0..n).filter(|&j| j != i).map(|j| gamma[(i, j)]).sum::<f64>();
        if i + 1 < n {
            let beta = if i % 2 == 0 { params.beta_short } else { params.beta_long } / HARTREE_TO_EV;
            h[(i, i + 1)] = beta;
            h[(i + 1, i)] = beta;
        }
    }
    let e_core: f64 = (0..n).flat_map(|i| (0..i).map(move |j| (i, j))).map(|(i, j)| gamma[(i, j)]).sum();

    // RHF with the Hückel guess
    let n_occ = n / 2;
    let mut c = sorted_eigenvectors(&h);
    let density = |c: &DMatrix<f64>| {
        let occ = c.columns(0, n_occ);
        occ.clone() * occ.transpose() * 2.0
    };
    let mut d = density(&c);
    for _ in 0..500 {
        let mut f = h.clone();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    f[(i, i)] += (0..n).map(|k| d[(k, k)] * gamma[(i, k)]).sum::<f64>() - 0.5 * d[(i, i)] * gamma[(i, i)];
                } else {
                    f[(i, j)] -= 0.5 * d[(i, j)] * gamma[(i, j)];
                }
            }
        }
        c = sorted_eigenvectors(&f);
        let next = density(&c);
        let change = (&next - &d).abs().max();
        d = next;
        if change < 1e-13 {
            break;
        }
    }

    let mut h1 = vec![0.0; n * n];
    let hm = c.transpose() * &h * &c;
    for p in 0..n {
        for q in 0..n {
            h1[p * n + q] = 0.5 * (hm[(p, q)] + hm[(q, p)]);
        }
    }
    // (pq|rs) = sum_ij C_ip C_iq gamma_ij C_jr C_js
    let mut pair = vec![0.0; n * n * n];
    for p in 0..n {
        for q in 0..n {
            for i in 0..n {
                pair[(p * n + q) * n + i] = c[(i, p)] * c[(i, q)];
            }
        }
    }
    let mut half = vec![0.0; n * n * n];
    for p in 0..n {
        for q in 0..n {
            for j in 0..n {
                half[(p * n + q) * n + j] = (0..n).map(|i| pair[(p * n + q) * n + i] * gamma[(i, j)]).sum();
            }
        }
    }
    let mut h2 = vec![0.0; n * n * n * n];
    for p in 0..n {
        for q in 0..=p {
            for r in 0..n {
                for s in 0..=r {
                    if (p, q) < (r, s) {
                        continue;
                    }
                    let v: f64 = (0..n).map(|j| half[(p * n + q) * n + j] * pair[(r * n + s) * n + j]).sum();
                    for (a, b, cc, dd) in [
                        (p, q, r, s),
                        (q, p, r, s),
                        (p, q, s, r),
                        (q, p, s, r),
                        (r, s, p, q),
                        (s, r, p, q),
                        (r, s, q, p),
                        (s, r, q, p),
                    ] {
                        h2[((a * n + b) * n + cc) * n + dd] = v;
                    }
                }
            }
        }
    }
    IntegralTable::new(n, n, 0, e_core, h1, h2).expect("valid PPP table")
}
