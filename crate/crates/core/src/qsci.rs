//! Selected CI over a configuration set: the projected Hamiltonian `P^T H P`
//! built with Slater–Condon rules and its lowest eigenpairs.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::det::{Determinant, Sector};
use crate::eigen::{davidson, dense_lowest, CsrMatrix, DavidsonOptions, Eigenpairs, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::hamio::IntegralTable;
use crate::oracle::{fix_sign, s_squared, slater_condon, spin_labels, CiState};
use crate::selection::ConfigurationSet;

/// Dimensions up to this use the dense solver.
pub const DENSE_LIMIT: usize = 512;

/// Eigenvalues closer than this are treated as degenerate when ordering roots.
const DEGENERACY_TOL: f64 = 1e-9;

/// Projected Hamiltonian over `configs` in their stored order. Dense up to
/// [`DENSE_LIMIT`], compressed rows above.
pub fn build_subspace_hamiltonian(table: &IntegralTable, configs: &ConfigurationSet) -> Result<SymmetricMatrix> {
    let sector = Sector::of_table(table);
    if configs.sector().n_qubits() != sector.n_qubits() {
        return Err(Error::Width { expected: sector.n_qubits(), got: configs.sector().n_qubits() });
    }
    let members = configs.members();
    for &d in members {
        sector.check(d)?;
    }
    let n = members.len();
    let rows: Vec<Vec<(usize, f64)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let x = members[i];
            members
                .iter()
                .enumerate()
                .filter(|(_, y)| x.excitation_degree(**y) <= 2)
                .map(|(j, &y)| (j, slater_condon(table, x, y)))
                .filter(|&(j, v)| v != 0.0 || j == i)
                .collect()
        })
        .collect();
    if n <= DENSE_LIMIT {
        let mut m = DMatrix::zeros(n, n);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row {
                m[(i, j)] = v;
            }
        }
        // exact symmetry regardless of summation order
        let m = (&m + m.transpose()) * 0.5;
        Ok(SymmetricMatrix::Dense(m))
    } else {
        Ok(SymmetricMatrix::Sparse(CsrMatrix::from_rows(rows)))
    }
}

/// Lowest `n_roots` eigenpairs; dense below [`DENSE_LIMIT`], Davidson above.
pub fn solve(matrix: &SymmetricMatrix, n_roots: usize) -> Result<Eigenpairs> {
    solve_with(matrix, n_roots, DavidsonOptions::default())
}

pub fn solve_with(matrix: &SymmetricMatrix, n_roots: usize, opts: DavidsonOptions) -> Result<Eigenpairs> {
    let dim = matrix.dim();
    if n_roots > dim {
        return Err(Error::TooManyRoots { requested: n_roots, dim });
    }
    let mut pairs = if dim <= DENSE_LIMIT {
        dense_lowest(&matrix.to_dense(), n_roots)?
    } else {
        davidson(matrix, n_roots, opts)?
    };
    pairs.vectors.iter_mut().for_each(|v| fix_sign(v));
    Ok(pairs)
}

/// Eigen-decomposition of the projected Hamiltonian.
#[derive(Debug, Clone)]
pub struct SubspaceResult {
    pub configurations: ConfigurationSet,
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k][i]` is the coefficient of configuration `i` in root `k`.
    pub eigenvectors: Vec<Vec<f64>>,
    pub s_squared: Vec<f64>,
    pub labels: Vec<String>,
}

impl SubspaceResult {
    pub fn n_roots(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn sector(&self) -> Sector {
        self.configurations.sector()
    }

    pub fn state(&self, root: usize) -> CiState {
        CiState::new(self.configurations.members().to_vec(), self.eigenvectors[root].clone())
    }

    /// First root carrying `label`.
    pub fn root_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// JSON summary with the `top_k` largest amplitudes per root.
    pub fn to_json(&self, top_k: usize) -> String {
        let width = self.sector().n_qubits();
        let members = self.configurations.members();
        let roots: Vec<RootJson> = (0..self.n_roots())
            .map(|k| {
                let v = &self.eigenvectors[k];
                let mut order: Vec<usize> = (0..v.len()).collect();
                order.sort_by(|&a, &b| v[b].abs().total_cmp(&v[a].abs()).then(members[a].cmp(&members[b])));
                RootJson {
                    root: k,
                    label: self.labels[k].clone(),
                    energy: self.eigenvalues[k],
                    s_squared: self.s_squared[k],
                    top_amplitudes: order
                        .into_iter()
                        .take(top_k)
                        .map(|i| (members[i].to_bitstring(width), v[i]))
                        .collect(),
                }
            })
            .collect();
        let out = ResultJson {
            sector: self.sector(),
            n_configurations: members.len(),
            n_baseline: self.configurations.provenance().iter().filter(|p| p.baseline).count(),
            eigenvalues: self.eigenvalues.clone(),
            roots,
        };
        serde_json::to_string_pretty(&out).expect("subspace result serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct RootJson {
    root: usize,
    label: String,
    energy: f64,
    s_squared: f64,
    top_amplitudes: Vec<(String, f64)>,
}

#[derive(Serialize, Deserialize)]
struct ResultJson {
    sector: Sector,
    n_configurations: usize,
    n_baseline: usize,
    eigenvalues: Vec<f64>,
    roots: Vec<RootJson>,
}

fn leading_configuration(v: &[f64], members: &[Determinant]) -> Determinant {
    let mut best = 0;
    for i in 1..v.len() {
        let (a, b) = (v[i].abs(), v[best].abs());
        if a > b + 1e-12 || ((a - b).abs() <= 1e-12 && members[i] < members[best]) {
            best = i;
        }
    }
    members[best]
}

/// Builds, solves and labels the lowest `n_roots` states over `configs`.
pub fn qsci_energies(table: &IntegralTable, configs: &ConfigurationSet, n_roots: usize) -> Result<SubspaceResult> {
    let matrix = build_subspace_hamiltonian(table, configs)?;
    let pairs = solve(&matrix, n_roots)?;
    let members = configs.members();
    let mut roots: Vec<(f64, Vec<f64>)> = pairs.values.into_iter().zip(pairs.vectors).collect();
    // within a degenerate block, order by the leading configuration's bits
    let mut start = 0;
    while start < roots.len() {
        let mut end = start + 1;
        while end < roots.len() && roots[end].0 - roots[start].0 < DEGENERACY_TOL {
            end += 1;
        }
        roots[start..end].sort_by_key(|r| leading_configuration(&r.1, members));
        start = end;
    }
    let (eigenvalues, eigenvectors): (Vec<f64>, Vec<Vec<f64>>) = roots.into_iter().unzip();
    let s2: Vec<f64> = eigenvectors.iter().map(|v| s_squared(&CiState::new(members.to_vec(), v.clone()))).collect();
    Ok(SubspaceResult {
        configurations: configs.clone(),
        eigenvalues,
        eigenvectors,
        labels: spin_labels(&s2),
        s_squared: s2,
    })
}
