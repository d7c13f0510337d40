//! Lowest eigenpairs of real symmetric matrices: a dense path backed by
//! `nalgebra` and a Davidson iteration for large sparse operators.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Real symmetric matrix in either dense or compressed-row form. The sparse
/// form stores both triangles.
#[derive(Debug, Clone)]
pub enum SymmetricMatrix {
    Dense(DMatrix<f64>),
    Sparse(CsrMatrix),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    pub dim: usize,
    pub row_ptr: Vec<usize>,
    pub cols: Vec<usize>,
    pub vals: Vec<f64>,
}

impl CsrMatrix {
    /// Builds from per-row `(col, value)` lists.
    pub fn from_rows(rows: Vec<Vec<(usize, f64)>>) -> Self {
        let dim = rows.len();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let nnz = rows.iter().map(Vec::len).sum();
        let mut cols = Vec::with_capacity(nnz);
        let mut vals = Vec::with_capacity(nnz);
        row_ptr.push(0);
        for mut row in rows {
            row.sort_unstable_by_key(|e| e.0);
            for (c, v) in row {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        Self { dim, row_ptr, cols, vals }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[range.clone()].binary_search(&j) {
            Ok(k) => self.vals[range.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }
}

impl SymmetricMatrix {
    pub fn dim(&self) -> usize {
        match self {
            SymmetricMatrix::Dense(m) => m.nrows(),
            SymmetricMatrix::Sparse(m) => m.dim,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match self {
            SymmetricMatrix::Dense(m) => m[(i, j)],
            SymmetricMatrix::Sparse(m) => m.get(i, j),
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.get(i, i)).collect()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        match self {
            SymmetricMatrix::Dense(m) => (m * DVector::from_column_slice(x)).as_slice().to_vec(),
            SymmetricMatrix::Sparse(m) => (0..m.dim)
                .into_par_iter()
                .map(|i| {
                    (m.row_ptr[i]..m.row_ptr[i + 1]).map(|k| m.vals[k] * x[m.cols[k]]).sum::<f64>()
                })
                .collect(),
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        match self {
            SymmetricMatrix::Dense(m) => m.clone(),
            SymmetricMatrix::Sparse(s) => {
                let mut m = DMatrix::zeros(s.dim, s.dim);
                for i in 0..s.dim {
                    for k in s.row_ptr[i]..s.row_ptr[i + 1] {
                        m[(i, s.cols[k])] = s.vals[k];
                    }
                }
                m
            }
        }
    }
}

/// Ascending eigenvalues with their eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl Eigenpairs {
    pub fn residuals(&self, matrix: &SymmetricMatrix) -> Vec<f64> {
        self.values
            .iter()
            .zip(&self.vectors)
            .map(|(&e, v)| {
                let hv = matrix.matvec(v);
                hv.iter().zip(v).map(|(a, b)| (a - e * b).powi(2)).sum::<f64>().sqrt()
            })
            .collect()
    }
}

/// Full dense diagonalization, keeping the lowest `n_roots` pairs.
pub fn dense_lowest(matrix: &DMatrix<f64>, n_roots: usize) -> Result<Eigenpairs> {
    let dim = matrix.nrows();
    if n_roots > dim {
        return Err(Error::TooManyRoots { requested: n_roots, dim });
    }
    let eig = SymmetricEigen::new(matrix.clone());
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order[..n_roots].iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = order[..n_roots]
        .iter()
        .map(|&k| eig.eigenvectors.column(k).iter().copied().collect())
        .collect();
    Ok(Eigenpairs { values, vectors })
}

/// Davidson settings.
#[derive(Debug, Clone, Copy)]
pub struct DavidsonOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Subspace size that triggers a restart from the current Ritz vectors.
    pub max_subspace: usize,
}

impl Default for DavidsonOptions {
    fn default() -> Self {
        Self { tolerance: 1e-8, max_iterations: 200, max_subspace: 0 }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Orthogonalizes `v` against `basis` (two passes) and normalizes it.
/// Returns `None` when nothing new is left.
fn orthonormalize(mut v: Vec<f64>, basis: &[Vec<f64>]) -> Option<Vec<f64>> {
    let start = norm(&v);
    if start == 0.0 {
        return None;
    }
    for _ in 0..2 {
        for b in basis {
            let c = dot(b, &v);
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
    }
    let n = norm(&v);
    if n < 1e-10 * start || n < 1e-14 {
        return None;
    }
    v.iter_mut().for_each(|x| *x /= n);
    Some(v)
}

/// Block Davidson with the diagonal preconditioner, seeded from the unit
/// vectors on the smallest diagonal entries.
pub fn davidson(matrix: &SymmetricMatrix, n_roots: usize, opts: DavidsonOptions) -> Result<Eigenpairs> {
    let dim = matrix.dim();
    if n_roots > dim {
        return Err(Error::TooManyRoots { requested: n_roots, dim });
    }
    if n_roots == 0 {
        return Ok(Eigenpairs { values: vec![], vectors: vec![] });
    }
    let diag = matrix.diagonal();
    let block = (2 * n_roots).max(n_roots + 4).min(dim);
    let max_subspace = if opts.max_subspace == 0 { (8 * block).max(40) } else { opts.max_subspace }.min(dim);

    let mut seeds: Vec<usize> = (0..dim).collect();
    seeds.sort_by(|&a, &b| diag[a].total_cmp(&diag[b]).then(a.cmp(&b)));
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for &i in seeds.iter().take(block) {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        if let Some(v) = orthonormalize(e, &basis) {
            basis.push(v);
        }
    }
    let mut images: Vec<Vec<f64>> = basis.iter().map(|v| matrix.matvec(v)).collect();
    let mut residual_norms = vec![f64::INFINITY; n_roots];

    for _iter in 0..opts.max_iterations {
        let k = basis.len();
        let mut small = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            for j in 0..=i {
                let v = dot(&basis[i], &images[j]);
                small[(i, j)] = v;
                small[(j, i)] = v;
            }
        }
        let ritz = dense_lowest(&small, n_roots.min(k))?;
        let n_have = ritz.values.len();

        let mut ritz_vecs = Vec::with_capacity(n_have);
        let mut residuals = Vec::with_capacity(n_have);
        for r in 0..n_have {
            let y = &ritz.vectors[r];
            let mut x = vec![0.0; dim];
            let mut ax = vec![0.0; dim];
            for (c, (b, ab)) in y.iter().zip(basis.iter().zip(&images)) {
                x.iter_mut().zip(b).for_each(|(xi, bi)| *xi += c * bi);
                ax.iter_mut().zip(ab).for_each(|(xi, bi)| *xi += c * bi);
            }
            let res: Vec<f64> = ax.iter().zip(&x).map(|(a, b)| a - ritz.values[r] * b).collect();
            residual_norms[r] = norm(&res);
            ritz_vecs.push(x);
            residuals.push(res);
        }

        if n_have == n_roots && residual_norms.iter().all(|&r| r < opts.tolerance) {
            return Ok(Eigenpairs { values: ritz.values, vectors: ritz_vecs });
        }
        if k == dim {
            // the subspace spans everything; Ritz pairs are exact up to rounding
            return Ok(Eigenpairs { values: ritz.values, vectors: ritz_vecs });
        }

        let mut corrections = Vec::new();
        for r in 0..n_have {
            if residual_norms[r] < opts.tolerance {
                continue;
            }
            let theta = ritz.values[r];
            let t: Vec<f64> = residuals[r]
                .iter()
                .zip(&diag)
                .map(|(res, d)| {
                    let denom = theta - d;
                    if denom.abs() < 1e-8 {
                        res / 1e-8_f64.copysign(denom)
                    } else {
                        res / denom
                    }
                })
                .collect();
            corrections.push(t);
        }

        if k + corrections.len() > max_subspace {
            // restart from the Ritz vectors
            let mut fresh: Vec<Vec<f64>> = Vec::new();
            for x in ritz_vecs {
                if let Some(v) = orthonormalize(x, &fresh) {
                    fresh.push(v);
                }
            }
            basis = fresh;
            images = basis.iter().map(|v| matrix.matvec(v)).collect();
        }

        let mut added = 0;
        for t in corrections {
            if let Some(v) = orthonormalize(t, &basis) {
                images.push(matrix.matvec(&v));
                basis.push(v);
                added += 1;
            }
        }
        if added == 0 {
            // stagnated preconditioner: fall back to raw residual directions
            for r in 0..n_have {
                if let Some(v) = orthonormalize(residuals[r].clone(), &basis) {
                    images.push(matrix.matvec(&v));
                    basis.push(v);
                    added += 1;
                }
            }
            if added == 0 {
                break;
            }
        }
    }
    Err(Error::NotConverged { iterations: opts.max_iterations, residuals: residual_norms })
}
