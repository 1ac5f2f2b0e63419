//! Exact spectra and dense adjacency matrices of weighted cubelike graphs.
//!
//! A weight vector `z` of length `n = 2^d` assigns the weight `z[h]` to every
//! edge `{u, u ^ h}`; `z[0]` is the loop weight. The adjacency matrix is
//! `a[i][j] = z[i ^ j]` and the characters of the group diagonalize it, so the
//! spectrum is the unnormalized Walsh–Hadamard transform of `z`.

use std::ops::{Add, Sub};

use nalgebra::DMatrix;

use crate::boolean::{check_dim, dim_of_len};
use crate::error::{CoreError, Result};

/// Largest dimension for which dense `n x n` matrices are materialized.
pub const MAX_DENSE_DIM: u32 = 13;

/// Reals with magnitude above this are never treated as exact integers.
const MAX_EXACT_F64: f64 = 9_007_199_254_740_992.0; // 2^53

/// Tolerance used when checking circulant structure of a non-integer matrix.
pub const CIRCULANT_TOL: f64 = 1e-9;

/// In-place unnormalized fast Walsh–Hadamard transform.
///
/// Length must be a power of two (checked by the public wrappers).
pub fn fwht_in_place<T>(data: &mut [T])
where
    T: Copy + Add<Output = T> + Sub<Output = T>,
{
    let n = data.len();
    let mut half = 1;
    while half < n {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*x, *y);
                *x = a + b;
                *y = a - b;
            }
        }
        half *= 2;
    }
}

/// `out[k] = sum_l (-1)^<k|l> v[l]` over the reals.
pub fn fwht(v: &[f64]) -> Result<Vec<f64>> {
    dim_of_len(v.len())?;
    let mut out = v.to_vec();
    fwht_in_place(&mut out);
    Ok(out)
}

/// Exact integer transform; fails with [`CoreError::Overflow`] instead of wrapping.
pub fn fwht_exact(v: &[i64]) -> Result<Vec<i64>> {
    dim_of_len(v.len())?;
    let mut data = v.to_vec();
    let n = data.len();
    let mut half = 1;
    while half < n {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*x, *y);
                *x = a.checked_add(b).ok_or(CoreError::Overflow)?;
                *y = a.checked_sub(b).ok_or(CoreError::Overflow)?;
            }
        }
        half *= 2;
    }
    Ok(data)
}

/// A sequence of values that is either exactly integral or real.
#[derive(Debug, Clone, PartialEq)]
pub enum Entries {
    Integer(Vec<i64>),
    Real(Vec<f64>),
}

impl Entries {
    fn from_reals(values: Vec<f64>) -> Result<Self> {
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(CoreError::NonFinite { index, value });
            }
        }
        let integral = values
            .iter()
            .all(|x| x.fract() == 0.0 && x.abs() <= MAX_EXACT_F64);
        Ok(if integral {
            Entries::Integer(values.iter().map(|&x| x as i64).collect())
        } else {
            Entries::Real(values)
        })
    }

    pub fn len(&self) -> usize {
        match self {
            Entries::Integer(v) => v.len(),
            Entries::Real(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> f64 {
        match self {
            Entries::Integer(v) => v[i] as f64,
            Entries::Real(v) => v[i],
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Entries::Integer(v) => v.iter().map(|&x| x as f64).collect(),
            Entries::Real(v) => v.clone(),
        }
    }

    pub fn as_integers(&self) -> Option<&[i64]> {
        match self {
            Entries::Integer(v) => Some(v),
            Entries::Real(_) => None,
        }
    }
}

/// Edge weights per connection class.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    dim: u32,
    entries: Entries,
}

impl WeightVector {
    pub fn from_integers(z: Vec<i64>) -> Result<Self> {
        let dim = dim_of_len(z.len())?;
        check_dim(dim)?;
        Ok(Self {
            dim,
            entries: Entries::Integer(z),
        })
    }

    /// Accepts any finite reals; integrality is detected automatically.
    pub fn from_reals(z: Vec<f64>) -> Result<Self> {
        let dim = dim_of_len(z.len())?;
        check_dim(dim)?;
        Ok(Self {
            dim,
            entries: Entries::from_reals(z)?,
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_integral(&self) -> bool {
        matches!(self.entries, Entries::Integer(_))
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn integers(&self) -> Option<&[i64]> {
        self.entries.as_integers()
    }

    /// The weights as integers, or a [`CoreError::NonIntegral`] naming the
    /// first offending entry.
    pub fn require_integers(&self) -> Result<&[i64]> {
        match &self.entries {
            Entries::Integer(v) => Ok(v),
            Entries::Real(v) => {
                let index = v.iter().position(|x| x.fract() != 0.0).unwrap_or(0);
                Err(CoreError::NonIntegral {
                    index,
                    value: v[index],
                })
            }
        }
    }

    pub fn get(&self, h: usize) -> f64 {
        self.entries.get(h)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.to_f64()
    }

    pub fn loop_weight(&self) -> f64 {
        self.get(0)
    }
}

/// Eigenvalues indexed by character: `values[k]` belongs to the eigenvector
/// `((-1)^<u|k> / sqrt(n))_u`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    dim: u32,
    values: Entries,
}

impl Spectrum {
    pub fn from_integers(values: Vec<i64>) -> Result<Self> {
        let dim = dim_of_len(values.len())?;
        check_dim(dim)?;
        Ok(Self {
            dim,
            values: Entries::Integer(values),
        })
    }

    pub fn from_reals(values: Vec<f64>) -> Result<Self> {
        let dim = dim_of_len(values.len())?;
        check_dim(dim)?;
        Ok(Self {
            dim,
            values: Entries::from_reals(values)?,
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &Entries {
        &self.values
    }

    pub fn integers(&self) -> Option<&[i64]> {
        self.values.as_integers()
    }

    pub fn get(&self, k: usize) -> f64 {
        self.values.get(k)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.to_f64()
    }
}

/// Spectrum of the weighted cubelike graph generated by `z`; exact for
/// integer weights.
pub fn eigenvalues_from_weights(z: &WeightVector) -> Result<Spectrum> {
    let values = match &z.entries {
        Entries::Integer(v) => Entries::Integer(fwht_exact(v)?),
        Entries::Real(v) => Entries::Real(fwht(v)?),
    };
    Ok(Spectrum { dim: z.dim, values })
}

/// Dense symmetric adjacency matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    dim: u32,
    a: Vec<f64>,
}

impl WeightedGraph {
    /// Builds a graph from a square row-major matrix whose side is `2^d`.
    pub fn from_row_major(n: usize, a: Vec<f64>) -> Result<Self> {
        if a.len() != n * n {
            return Err(CoreError::Shape {
                expected: n,
                rows: a.len() / n.max(1),
                cols: n,
            });
        }
        let dim = dim_of_len(n)?;
        check_dim(dim)?;
        check_dense(dim)?;
        for (index, &value) in a.iter().enumerate() {
            if !value.is_finite() {
                return Err(CoreError::NonFinite { index, value });
            }
        }
        Ok(Self { dim, a })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(CoreError::Shape {
                expected: n,
                rows: n,
                cols: bad.len(),
            });
        }
        Self::from_row_major(n, rows.concat())
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn n(&self) -> usize {
        1 << self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n() + j]
    }

    pub fn as_row_major(&self) -> &[f64] {
        &self.a
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.a.chunks(self.n()).map(<[f64]>::to_vec).collect()
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.n(), self.n(), &self.a)
    }
}

fn check_dense(dim: u32) -> Result<()> {
    if dim > MAX_DENSE_DIM {
        return Err(CoreError::TooLarge {
            what: "dense adjacency matrix",
            n: 1 << dim,
            max: 1 << MAX_DENSE_DIM,
        });
    }
    Ok(())
}

/// `a[i][j] = z[i ^ j]`.
pub fn adjacency_from_weights(z: &WeightVector) -> Result<WeightedGraph> {
    check_dense(z.dim)?;
    let n = z.len();
    let zf = z.to_f64();
    let mut a = Vec::with_capacity(n * n);
    for i in 0..n {
        a.extend((0..n).map(|j| zf[i ^ j]));
    }
    Ok(WeightedGraph { dim: z.dim, a })
}

/// Inverse of [`adjacency_from_weights`]. The matrix must satisfy
/// `a[i][j] = a[0][i ^ j]`, exactly for integer matrices and within
/// [`CIRCULANT_TOL`] otherwise.
pub fn weights_from_adjacency(graph: &WeightedGraph) -> Result<WeightVector> {
    let n = graph.n();
    let exact = graph.a.iter().all(|x| x.fract() == 0.0);
    for i in 0..n {
        for j in 0..n {
            let found = graph.entry(i, j);
            let expected = graph.entry(0, i ^ j);
            let ok = if exact {
                found == expected
            } else {
                (found - expected).abs() <= CIRCULANT_TOL * expected.abs().max(1.0)
            };
            if !ok {
                return Err(CoreError::NotCirculant {
                    row: i,
                    col: j,
                    found,
                    expected,
                });
            }
        }
    }
    WeightVector::from_reals(graph.a[..n].to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(x: i64) -> Self {
        if x.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructuralReport {
    pub loop_weight: f64,
    pub loop_free: bool,
    pub integral: bool,
    /// Common parity of all eigenvalues; `None` for non-integer weights.
    pub eigenvalue_parity: Option<Parity>,
    pub eigenvalue_sum: f64,
}

pub fn structural_report(z: &WeightVector) -> Result<StructuralReport> {
    let spectrum = eigenvalues_from_weights(z)?;
    let eigenvalue_parity = match spectrum.integers() {
        Some(values) => {
            let first = Parity::of(values[0]);
            // every eigenvalue shares the parity of the number of odd weights
            debug_assert!(values.iter().all(|&v| Parity::of(v) == first));
            Some(first)
        }
        None => None,
    };
    let eigenvalue_sum = match spectrum.integers() {
        Some(values) => values.iter().map(|&v| i128::from(v)).sum::<i128>() as f64,
        None => spectrum.to_f64().iter().sum(),
    };
    Ok(StructuralReport {
        loop_weight: z.loop_weight(),
        loop_free: z.loop_weight() == 0.0,
        integral: z.is_integral(),
        eigenvalue_parity,
        eigenvalue_sum,
    })
}
