//! Continuous-time quantum walk oracle.
//!
//! The transition matrix `U(t) = exp(i t A)` is built by two unrelated routes:
//! a character sum driven by the exact spectrum, and a scaling-and-squaring
//! Taylor exponential of the dense adjacency matrix. Each route is used to
//! check the other and to audit [`crate::pst::classify`].

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::pst::{PstKind, PstResult};
use crate::spectral::{
    adjacency_from_weights, eigenvalues_from_weights, fwht_in_place, Spectrum, WeightVector,
    WeightedGraph, MAX_DENSE_DIM,
};

/// Largest dimension accepted by the Taylor route and by verification.
pub const MAX_TAYLOR_DIM: u32 = 10;

/// Fidelity at or above which a transfer is considered perfect.
pub const PST_THRESHOLD: f64 = 1.0 - 1e-9;

/// Largest modulus tolerated outside the claimed target of a column.
pub const LEAKAGE_THRESHOLD: f64 = 1e-6;

/// Largest elementwise disagreement tolerated between the two routes.
pub const ROUTE_AGREEMENT: f64 = 1e-8;

/// Norm bound for the scaled matrix before the Taylor series is summed.
const TAYLOR_SCALED_NORM: f64 = 0.5;
const TAYLOR_MAX_TERMS: usize = 40;

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    t: f64,
    u: DMatrix<Complex64>,
}

impl TransitionMatrix {
    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn n(&self) -> usize {
        self.u.nrows()
    }

    /// Amplitude `<row| U(t) |col>`.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.u[(row, col)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.u
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_difference(&self, other: &TransitionMatrix) -> f64 {
        self.u
            .iter()
            .zip(other.u.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() {
        Ok(())
    } else {
        Err(CoreError::InvalidTime(t))
    }
}

/// `exp(i t lambda)`; exact (one of ±1, ±i) when `t` is pi/2 and `lambda` is an
/// integer.
fn phase(t: f64, spectrum: &Spectrum, k: usize) -> Complex64 {
    match spectrum.integers() {
        Some(values) if t == FRAC_PI_2 => match values[k].rem_euclid(4) {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        },
        _ => Complex64::from_polar(1.0, t * spectrum.get(k)),
    }
}

/// `U[u][v] = (1/n) sum_k (-1)^<u|k> (-1)^<v|k> exp(i t lambda[k])`.
///
/// The sum only depends on `u ^ v`, so a single transform of the phase vector
/// gives the first column and the rest of the matrix follows by translation.
pub fn transition_spectral(z: &WeightVector, t: f64) -> Result<TransitionMatrix> {
    check_time(t)?;
    if z.dim() > MAX_DENSE_DIM {
        return Err(CoreError::TooLarge {
            what: "spectral transition matrix",
            n: z.len(),
            max: 1 << MAX_DENSE_DIM,
        });
    }
    let spectrum = eigenvalues_from_weights(z)?;
    let n = z.len();
    let mut column: Vec<Complex64> = (0..n).map(|k| phase(t, &spectrum, k)).collect();
    fwht_in_place(&mut column);
    let scale = 1.0 / n as f64;
    let u = DMatrix::from_fn(n, n, |row, col| column[row ^ col] * scale);
    Ok(TransitionMatrix { t, u })
}

fn norm_1(m: &DMatrix<Complex64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Dense `exp(i t A)` by scaling and squaring a truncated Taylor series.
pub fn transition_taylor(graph: &WeightedGraph, t: f64) -> Result<TransitionMatrix> {
    check_time(t)?;
    if graph.dim() > MAX_TAYLOR_DIM {
        return Err(CoreError::TooLarge {
            what: "Taylor transition matrix",
            n: graph.n(),
            max: 1 << MAX_TAYLOR_DIM,
        });
    }
    let n = graph.n();
    let generator = graph
        .to_matrix()
        .map(|a| Complex64::new(0.0, t * a));

    let norm = norm_1(&generator);
    let squarings = if norm > TAYLOR_SCALED_NORM {
        (norm / TAYLOR_SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let scaled = generator.unscale(2f64.powi(squarings));

    let mut sum = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    for k in 1..=TAYLOR_MAX_TERMS {
        term = (&term * &scaled).unscale(k as f64);
        sum += &term;
        if norm_1(&term) <= f64::EPSILON * 1e-3 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Ok(TransitionMatrix { t, u: sum })
}

/// Transfer amplitude modulus `|U[v][u]|` from `u` to `v`.
pub fn fidelity(u_t: &TransitionMatrix, u: usize, v: usize) -> Result<f64> {
    let n = u_t.n();
    for vertex in [u, v] {
        if vertex >= n {
            return Err(CoreError::VertexOutOfRange { vertex, n });
        }
    }
    Ok(u_t.entry(v, u).norm())
}

/// Which transition-matrix routes [`verify_result_with`] consults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleRoutes {
    SpectralOnly,
    Both,
}

/// Outcome for one claimed pair, or one vertex when the result is periodic.
#[derive(Debug, Clone, PartialEq)]
pub struct PairCheck {
    pub u: usize,
    pub v: usize,
    /// Smallest of `|U[v][u]|` and `|U[u][v]|` over the routes consulted.
    pub fidelity: f64,
    /// Largest modulus in columns `u` and `v` outside the claimed targets.
    pub max_leakage: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub sigma: usize,
    pub kind: PstKind,
    pub checks: Vec<PairCheck>,
    /// Largest elementwise disagreement between routes, when both were built.
    pub route_discrepancy: Option<f64>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &PairCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn failure_summary(&self) -> String {
        let mut out = String::new();
        if let Some(d) = self.route_discrepancy {
            if d > ROUTE_AGREEMENT {
                let _ = writeln!(out, "  routes disagree by {d:e}");
            }
        }
        for c in self.failures() {
            let _ = writeln!(
                out,
                "  ({}, {}): fidelity {:.12}, leakage {:e}",
                c.u, c.v, c.fidelity, c.max_leakage
            );
        }
        out
    }
}

fn column_check(matrices: &[TransitionMatrix], u: usize, target: usize) -> (f64, f64) {
    let mut fid = f64::INFINITY;
    let mut leak = 0.0f64;
    for m in matrices {
        fid = fid.min(m.entry(target, u).norm());
        for row in (0..m.n()).filter(|&row| row != target) {
            leak = leak.max(m.entry(row, u).norm());
        }
    }
    (fid, leak)
}

/// Checks a classification against the walk at pi/2 built by both routes.
pub fn verify_result(z: &WeightVector, result: &PstResult) -> Result<VerificationReport> {
    verify_result_with(z, result, OracleRoutes::Both)
}

pub fn verify_result_with(
    z: &WeightVector,
    result: &PstResult,
    routes: OracleRoutes,
) -> Result<VerificationReport> {
    z.require_integers()?;
    if z.dim() != result.dim() {
        return Err(CoreError::DimensionMismatch {
            left: z.dim(),
            right: result.dim(),
        });
    }
    if z.dim() > MAX_TAYLOR_DIM {
        return Err(CoreError::TooLarge {
            what: "verification",
            n: z.len(),
            max: 1 << MAX_TAYLOR_DIM,
        });
    }
    let t = result.time();
    let mut matrices = vec![transition_spectral(z, t)?];
    if routes == OracleRoutes::Both {
        matrices.push(transition_taylor(&adjacency_from_weights(z)?, t)?);
    }
    let route_discrepancy = (matrices.len() == 2).then(|| matrices[0].max_difference(&matrices[1]));

    let claimed: Vec<(usize, usize)> = match result.kind() {
        PstKind::Periodic => (0..z.len()).map(|u| (u, u)).collect(),
        PstKind::PerfectStateTransfer => result.pairs().to_vec(),
    };
    let checks: Vec<PairCheck> = claimed
        .into_iter()
        .map(|(u, v)| {
            let (fu, lu) = column_check(&matrices, u, v);
            let (fv, lv) = column_check(&matrices, v, u);
            let fidelity = fu.min(fv);
            let max_leakage = lu.max(lv);
            PairCheck {
                u,
                v,
                fidelity,
                max_leakage,
                passed: fidelity >= PST_THRESHOLD && max_leakage <= LEAKAGE_THRESHOLD,
            }
        })
        .collect();

    let passed = checks.iter().all(|c| c.passed)
        && route_discrepancy.is_none_or(|d| d <= ROUTE_AGREEMENT);
    let report = VerificationReport {
        sigma: result.sigma().bits(),
        kind: result.kind(),
        checks,
        route_discrepancy,
        passed,
    };
    if report.passed {
        Ok(report)
    } else {
        Err(CoreError::VerificationFailed {
            report: Box::new(report),
        })
    }
}
