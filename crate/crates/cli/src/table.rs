//! Regression fixtures: nine integer weight vectors with their spectra and
//! transfer pairs, in 1-based vertex labels.

use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use cubewalk_core::{
    classify, eigenvalues_from_weights, transition_spectral, verify_result, CoreError, PstKind,
    WeightVector,
};

use crate::report::orbit_pairs;

#[derive(Debug, Clone, Copy)]
pub struct TableRow {
    pub index: usize,
    pub weights: &'static [i64],
    pub eigenvalues: &'static [i64],
    /// 1-based; periodic rows list every vertex paired with itself.
    pub pairs: &'static [(usize, usize)],
}

#[rustfmt::skip]
pub const TABLE: [TableRow; 9] = [
    TableRow {
        index: 1,
        weights: &[0, 1, -7, -10],
        eigenvalues: &[-16, 2, 18, -4],
        pairs: &[(1, 4), (2, 3)],
    },
    TableRow {
        index: 2,
        weights: &[0, 50, -10, -3],
        eigenvalues: &[37, -57, 63, -43],
        pairs: &[(1, 4), (2, 3)],
    },
    TableRow {
        index: 3,
        weights: &[0, 3, 1, 4, -6, 0, -1, 10],
        eigenvalues: &[11, -23, -17, 5, 5, 11, 13, -5],
        pairs: &[(1, 6), (2, 5), (3, 8), (4, 7)],
    },
    TableRow {
        index: 4,
        weights: &[0, 2, 3, 4, 5, 6, 5, 4],
        eigenvalues: &[29, -3, -3, -3, -11, -3, -7, 1],
        pairs: &[(1, 1), (2, 2), (3, 3), (4, 4), (5, 5), (6, 6), (7, 7), (8, 8)],
    },
    TableRow {
        index: 5,
        weights: &[0, -72, 38, 93, 100, -86, -91, -42],
        eigenvalues: &[-60, 154, -56, 362, 178, -120, -350, -108],
        pairs: &[(1, 6), (2, 5), (3, 8), (4, 7)],
    },
    TableRow {
        index: 6,
        weights: &[0, 5, -1, -4, -1, 5, 3, 2, -8, 10, -8, -4, -8, 1, 7, -1],
        eigenvalues: &[-2, -30, 10, -46, -18, -18, 38, 2, 20, 16, 8, 16, 0, 24, -16, -4],
        pairs: &[(1, 9), (2, 10), (3, 11), (4, 12), (5, 13), (6, 14), (7, 15), (8, 16)],
    },
    TableRow {
        index: 7,
        weights: &[0, -83, -80, -35, 65, 64, -31, -50, 94, 5, 97, -60, -92, -25, -5, 24],
        eigenvalues: &[-112, 208, 168, 4, -12, 360, 20, 116, -188, -92, 316, 216, -480, -324, -376, 176],
        pairs: &[(1, 1), (2, 2), (3, 3), (4, 4), (5, 5), (6, 6), (7, 7), (8, 8), (9, 9), (10, 10), (11, 11), (12, 12), (13, 13), (14, 14), (15, 15), (16, 16)],
    },
    TableRow {
        index: 8,
        weights: &[0, -30, 99, 5, 46, -85, -19, 100, 83, -10, -43, -4, 59, 60, 29, 22],
        eigenvalues: &[312, 196, -66, 310, -112, 160, 38, -174, -80, 76, -442, 62, 176, 64, -66, -454],
        pairs: &[(1, 3), (2, 4), (5, 7), (6, 8), (9, 11), (10, 12), (13, 15), (14, 16)],
    },
    TableRow {
        index: 9,
        weights: &[0, -10, -5, 0, -7, -7, -5, 2, -1, -3, -3, -9, -7, 3, 6, -8, -5, 5, 0, 4, 3, 9, 2, 10, 1, 7, 8, -3, 8, -3, -2, -8],
        eigenvalues: &[-18, 4, 4, -22, -10, 4, 0, -2, 10, -64, -44, 58, -26, 20, 4, 2, -90, 16, -24, 10, -6, 28, 32, 58, -30, 36, 0, 42, 50, -4, -12, -26],
        pairs: &[(1, 4), (2, 3), (5, 8), (6, 7), (9, 12), (10, 11), (13, 16), (14, 15), (17, 20), (18, 19), (21, 24), (22, 23), (25, 28), (26, 27), (29, 32), (30, 31)],
    },
];

/// Number of sample times strictly inside `(0, pi/2)` for the minimality scan.
pub const MINIMALITY_SAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct RowOutcome {
    pub index: usize,
    pub dim: u32,
    pub eigenvalues: Vec<i64>,
    pub eigenvalues_match: bool,
    /// 1-based pairs computed from the weights.
    pub pairs: Vec<(usize, usize)>,
    pub pairs_match: bool,
    /// `None` when the oracle confirmed the classification.
    pub oracle_failure: Option<String>,
    /// Best transfer (or return, for periodic rows) fidelity seen on the grid
    /// below pi/2. Informational only.
    pub best_fidelity_before: f64,
}

impl RowOutcome {
    pub fn passed(&self) -> bool {
        self.eigenvalues_match && self.pairs_match && self.oracle_failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub rows: Vec<RowOutcome>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(RowOutcome::passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "indexing: one-based");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "row {} (d={}): eigenvalues {}, pairs {}, oracle {}, best fidelity below pi/2 {:.6}: {}",
                row.index,
                row.dim,
                ok(row.eigenvalues_match),
                ok(row.pairs_match),
                ok(row.oracle_failure.is_none()),
                row.best_fidelity_before,
                if row.passed() { "PASS" } else { "FAIL" }
            );
            let fixture = &TABLE[row.index - 1];
            if !row.eigenvalues_match {
                let _ = writeln!(out, "  expected eigenvalues {:?}", fixture.eigenvalues);
                let _ = writeln!(out, "  computed eigenvalues {:?}", row.eigenvalues);
            }
            if !row.pairs_match {
                let _ = writeln!(out, "  expected pairs {:?}", fixture.pairs);
                let _ = writeln!(out, "  computed pairs {:?}", row.pairs);
            }
            if let Some(msg) = &row.oracle_failure {
                let _ = writeln!(out, "  oracle: {msg}");
            }
        }
        let _ = writeln!(out, "table: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

fn ok(flag: bool) -> &'static str {
    if flag {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn best_fidelity_before(z: &WeightVector, periodic: bool) -> Result<f64, CoreError> {
    let n = z.len();
    let mut best = 0.0f64;
    for k in 1..=MINIMALITY_SAMPLES {
        let t = FRAC_PI_2 * k as f64 / (MINIMALITY_SAMPLES + 1) as f64;
        let u = transition_spectral(z, t)?;
        let value = if periodic {
            (0..n).map(|v| u.entry(v, v).norm()).fold(f64::INFINITY, f64::min)
        } else {
            (0..n)
                .flat_map(|c| (0..n).filter(move |&r| r != c).map(move |r| (r, c)))
                .map(|(r, c)| u.entry(r, c).norm())
                .fold(0.0, f64::max)
        };
        best = best.max(value);
    }
    Ok(best)
}

pub fn evaluate_row(row: &TableRow) -> Result<RowOutcome, CoreError> {
    let z = WeightVector::from_integers(row.weights.to_vec())?;
    let spectrum = eigenvalues_from_weights(&z)?;
    let eigenvalues = spectrum.integers().expect("integer weights").to_vec();
    let result = classify(&z)?;
    let pairs: Vec<(usize, usize)> = orbit_pairs(&result)
        .into_iter()
        .map(|(u, v)| (u + 1, v + 1))
        .collect();
    let computed: BTreeSet<(usize, usize)> = pairs.iter().copied().collect();
    let expected: BTreeSet<(usize, usize)> = row
        .pairs
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    let oracle_failure = match verify_result(&z, &result) {
        Ok(_) => None,
        Err(e) => Some(e.to_string()),
    };
    Ok(RowOutcome {
        index: row.index,
        dim: z.dim(),
        eigenvalues_match: eigenvalues == row.eigenvalues,
        eigenvalues,
        pairs_match: computed == expected,
        pairs,
        oracle_failure,
        best_fidelity_before: best_fidelity_before(&z, result.kind() == PstKind::Periodic)?,
    })
}

pub fn run_table() -> Result<TableReport, CoreError> {
    let rows = TABLE.iter().map(evaluate_row).collect::<Result<_, _>>()?;
    Ok(TableReport { rows })
}
