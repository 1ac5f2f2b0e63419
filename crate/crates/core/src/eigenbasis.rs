//! Symmetric matrices with a prescribed orthogonal eigenbasis.
//!
//! Fix an orthogonal `P`. Every symmetric `A = P diag(x) P^T` satisfies
//! `A[r][c] = sum_k x[k] P[r][k] P[c][k]`, i.e. the entry at `(r, c)` is the
//! row `P[r] ⊙ P[c]` applied to `x`. Choosing `n` index pairs whose rows are
//! linearly independent gives an invertible `Q`; any `n` prescribed entries
//! `z` then determine `x = Q^{-1} z` and, through it, the whole matrix.

use nalgebra::{DMatrix, DVector};

use crate::boolean::{check_dim, sign};
use crate::error::{CoreError, Result};

/// Largest basis size handled by the dense solver.
pub const MAX_BASIS_SIZE: usize = 4096;

pub const ORTHOGONALITY_TOL: f64 = 1e-9;

/// Default residual threshold for greedy row selection.
pub const DEFAULT_SELECTION_TOL: f64 = 1e-10;

/// Entries at or below this fraction of the row norm count as zero.
const ZERO_ENTRY_REL: f64 = 1e-12;

/// Reconstruction refuses index sets whose `Q` has a larger 1-norm condition number.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalBasis {
    p: DMatrix<f64>,
}

impl OrthogonalBasis {
    pub fn new(p: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = p.shape();
        if rows != cols || rows == 0 {
            return Err(CoreError::Shape {
                expected: rows.max(cols),
                rows,
                cols,
            });
        }
        if rows > MAX_BASIS_SIZE {
            return Err(CoreError::TooLarge {
                what: "orthogonal basis",
                n: rows,
                max: MAX_BASIS_SIZE,
            });
        }
        if let Some((index, &value)) = p.iter().enumerate().find(|(_, x)| !x.is_finite()) {
            return Err(CoreError::NonFinite { index, value });
        }
        let gram = p.transpose() * &p;
        let deviation = (gram - DMatrix::identity(rows, rows)).amax();
        if deviation > ORTHOGONALITY_TOL {
            return Err(CoreError::NotOrthogonal { deviation });
        }
        Ok(Self { p })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(DMatrix::identity(n, n))
    }

    /// `P[i][j] = (-1)^<i|j> / sqrt(2^dim)`.
    pub fn walsh_hadamard(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        let n = 1usize << dim;
        let scale = (n as f64).sqrt().recip();
        Self::new(DMatrix::from_fn(n, n, |i, j| f64::from(sign(i, j)) * scale))
    }

    pub fn n(&self) -> usize {
        self.p.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.p
    }

    fn row_product(&self, r: usize, c: usize) -> DVector<f64> {
        let n = self.n();
        DVector::from_fn(n, |k, _| self.p[(r, k)] * self.p[(c, k)])
    }

    fn has_no_zero_entry(&self, row: usize) -> bool {
        let r = self.p.row(row);
        let threshold = ZERO_ENTRY_REL * r.norm();
        r.iter().all(|x| x.abs() > threshold)
    }

    fn constant_value(&self, row: usize) -> Option<f64> {
        let r = self.p.row(row);
        let first = r[0];
        let threshold = ZERO_ENTRY_REL * r.norm();
        (first.abs() > threshold && r.iter().all(|x| (x - first).abs() <= threshold))
            .then_some(first)
    }
}

/// A row of `P` whose entries all equal `mu`; then `Q = mu P` and
/// `x = P^T z / mu` needs no solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantRow {
    pub row: usize,
    pub mu: f64,
}

/// `n` index pairs `(r_j, c_j)`, 0-based, selecting the fixed entries.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexSet {
    pairs: Vec<(usize, usize)>,
    constant_row: Option<ConstantRow>,
}

impl IndexSet {
    /// Validates user-supplied pairs against `basis`, including invertibility
    /// of the induced `Q`.
    pub fn new(basis: &OrthogonalBasis, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let n = basis.n();
        if pairs.len() != n {
            return Err(CoreError::InvalidIndexSet(format!(
                "expected {n} pairs, got {}",
                pairs.len()
            )));
        }
        if let Some(&(r, c)) = pairs.iter().find(|&&(r, c)| r >= n || c >= n) {
            return Err(CoreError::InvalidIndexSet(format!(
                "pair ({r}, {c}) out of range for n = {n}"
            )));
        }
        let constant_row = (0..n).find_map(|row| {
            let is_row_sweep = pairs.iter().enumerate().all(|(i, &p)| p == (row, i));
            basis
                .constant_value(row)
                .filter(|_| is_row_sweep)
                .map(|mu| ConstantRow { row, mu })
        });
        let set = Self { pairs, constant_row };
        if set.constant_row.is_none() {
            condition_checked_lu(&build_q(basis, &set))?;
        }
        Ok(set)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn constant_row(&self) -> Option<ConstantRow> {
        self.constant_row
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Picks `n` index pairs with linearly independent rows `P[r] ⊙ P[c]`.
///
/// A row of `P` without zero entries gives the sweep `{(k, i)}` directly
/// (constant rows are preferred). Otherwise pairs are scanned in
/// lexicographic order with `r <= c`, keeping each one whose row has a
/// Gram–Schmidt residual above `tol` relative to its norm.
pub fn select_index_set(basis: &OrthogonalBasis, tol: f64) -> Result<IndexSet> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CoreError::InvalidIndexSet(format!("tolerance must be positive, got {tol}")));
    }
    let n = basis.n();

    let constant = (0..n).find_map(|row| basis.constant_value(row).map(|mu| ConstantRow { row, mu }));
    if let Some(c) = constant {
        return Ok(IndexSet {
            pairs: (0..n).map(|i| (c.row, i)).collect(),
            constant_row: Some(c),
        });
    }
    if let Some(row) = (0..n).find(|&row| basis.has_no_zero_entry(row)) {
        return Ok(IndexSet {
            pairs: (0..n).map(|i| (row, i)).collect(),
            constant_row: None,
        });
    }

    let mut accepted: Vec<DVector<f64>> = Vec::with_capacity(n);
    let mut pairs = Vec::with_capacity(n);
    'scan: for r in 0..n {
        for c in r..n {
            let row = basis.row_product(r, c);
            let norm = row.norm();
            if norm == 0.0 {
                continue;
            }
            let mut residual = row;
            // two passes of modified Gram–Schmidt
            for _ in 0..2 {
                for q in &accepted {
                    let proj = q.dot(&residual);
                    residual.axpy(-proj, q, 1.0);
                }
            }
            let rn = residual.norm();
            if rn > tol * norm {
                accepted.push(residual / rn);
                pairs.push((r, c));
                if pairs.len() == n {
                    break 'scan;
                }
            }
        }
    }
    if pairs.len() < n {
        return Err(CoreError::NoIndependentSet {
            tol,
            found: pairs.len(),
            needed: n,
        });
    }
    Ok(IndexSet {
        pairs,
        constant_row: None,
    })
}

/// `Q[j][k] = P[r_j][k] * P[c_j][k]`.
pub fn build_q(basis: &OrthogonalBasis, index: &IndexSet) -> DMatrix<f64> {
    let n = basis.n();
    let p = basis.matrix();
    DMatrix::from_fn(n, n, |j, k| {
        let (r, c) = index.pairs[j];
        p[(r, k)] * p[(c, k)]
    })
}

fn condition_checked_lu(q: &DMatrix<f64>) -> Result<nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>> {
    let lu = q.clone().lu();
    let inverse = lu
        .try_inverse()
        .ok_or_else(|| CoreError::Reconstruction("Q is singular".into()))?;
    let norm1 = |m: &DMatrix<f64>| {
        m.column_iter()
            .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    let condition = norm1(q) * norm1(&inverse);
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(CoreError::Reconstruction(format!(
            "Q is ill-conditioned (condition number {condition:e})"
        )));
    }
    Ok(lu)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionResult {
    /// The symmetric matrix `P diag(x) P^T`.
    pub a: DMatrix<f64>,
    /// Eigenvalues; `x[k]` belongs to column `k` of `P`.
    pub x: DVector<f64>,
    pub q: DMatrix<f64>,
}

/// Solves `Q x = z` and assembles `A = P diag(x) P^T`, so that
/// `A[r_j][c_j] = z[j]` for every pair.
pub fn reconstruct(basis: &OrthogonalBasis, index: &IndexSet, z: &[f64]) -> Result<ReconstructionResult> {
    let n = basis.n();
    if z.len() != n || index.len() != n {
        return Err(CoreError::Reconstruction(format!(
            "expected {n} fixed entries and {n} pairs, got {} and {}",
            z.len(),
            index.len()
        )));
    }
    if let Some((i, &value)) = z.iter().enumerate().find(|(_, x)| !x.is_finite()) {
        return Err(CoreError::NonFinite { index: i, value });
    }
    let p = basis.matrix();
    let q = build_q(basis, index);
    let zv = DVector::from_column_slice(z);

    let x = match index.constant_row {
        Some(ConstantRow { mu, .. }) => p.tr_mul(&zv).unscale(mu),
        None => condition_checked_lu(&q)?
            .solve(&zv)
            .ok_or_else(|| CoreError::Reconstruction("Q is singular".into()))?,
    };

    let weighted = DMatrix::from_fn(n, n, |i, k| p[(i, k)] * x[k]);
    let mut a = weighted * p.transpose();
    for i in 0..n {
        for j in 0..i {
            a[(i, j)] = a[(j, i)];
        }
    }
    Ok(ReconstructionResult { a, x, q })
}
