use thiserror::Error;

use crate::walk::VerificationReport;

pub type Result<T, E = CoreError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("invalid dimension {dim}: must be between {min} and {max}")]
    InvalidDimension { dim: u32, min: u32, max: u32 },

    #[error("group element {bits} does not fit in dimension {dim}")]
    ElementOutOfRange { bits: usize, dim: u32 },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("arithmetic overflow while transforming exact integer weights")]
    Overflow,

    #[error("non-finite value {value} at position {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("matrix is not circulant over the Boolean group: entry ({row}, {col}) = {found}, expected {expected}")]
    NotCirculant {
        row: usize,
        col: usize,
        found: f64,
        expected: f64,
    },

    #[error("expected a square {expected}x{expected} matrix, got {rows}x{cols}")]
    Shape {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("{what} requires n <= {max}, got {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("matrix is not orthogonal: max |P^T P - I| = {deviation:e}")]
    NotOrthogonal { deviation: f64 },

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("no linearly independent row set found at tolerance {tol:e} ({found} of {needed} rows)")]
    NoIndependentSet { tol: f64, found: usize, needed: usize },

    #[error("reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("weights must be integers: entry {index} = {value}")]
    NonIntegral { index: usize, value: f64 },

    #[error("eigenvalue difference lambda[{index}] - lambda[0] = {difference} is odd")]
    ParityViolation { index: usize, difference: i64 },

    #[error("spectrum is inconsistent with transfer element {sigma}: mismatch at index {index}")]
    Inconsistent { sigma: usize, index: usize },

    #[error("route disagreement: sigma from spectrum = {from_spectrum}, from weights = {from_weights}")]
    RouteDisagreement {
        from_spectrum: usize,
        from_weights: usize,
    },

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("time must be finite, got {0}")]
    InvalidTime(f64),

    #[error("invalid transfer result: {0}")]
    InvalidResult(String),

    #[error("verification failed:\n{}", .report.failure_summary())]
    VerificationFailed { report: Box<VerificationReport> },
}
