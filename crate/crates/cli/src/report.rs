//! Machine (JSON) and human (text) renderings of command results.

use std::fmt::Write as _;

use cubewalk_core::{
    Entries, GroupElement, PstKind, PstResult, Spectrum, VerificationReport,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Indexing {
    ZeroBased,
    OneBased,
}

impl Indexing {
    pub fn label(self, vertex: usize) -> usize {
        match self {
            Indexing::ZeroBased => vertex,
            Indexing::OneBased => vertex + 1,
        }
    }

    /// Converts a user-facing label back to a 0-based vertex.
    pub fn vertex(self, label: usize) -> Result<usize, CliError> {
        match self {
            Indexing::ZeroBased => Ok(label),
            Indexing::OneBased => label
                .checked_sub(1)
                .ok_or_else(|| CliError::usage("one-based vertex labels start at 1")),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Indexing::ZeroBased => "zero-based",
            Indexing::OneBased => "one-based",
        }
    }
}

/// An exact integer or a real, serialized without a decimal point when exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Real(f64),
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Real(v) => write!(f, "{v}"),
        }
    }
}

pub fn scalars(entries: &Entries) -> Vec<Scalar> {
    match entries {
        Entries::Integer(v) => v.iter().copied().map(Scalar::Int).collect(),
        Entries::Real(v) => v.iter().copied().map(Scalar::Real).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Periodic,
    PerfectStateTransfer,
}

impl From<PstKind> for Kind {
    fn from(k: PstKind) -> Self {
        match k {
            PstKind::Periodic => Kind::Periodic,
            PstKind::PerfectStateTransfer => Kind::PerfectStateTransfer,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityEntry {
    pub u: usize,
    pub v: usize,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairCheckEntry {
    pub u: usize,
    pub v: usize,
    pub fidelity: f64,
    pub max_leakage: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checks {
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub route_discrepancy: Option<f64>,
    pub pairs: Vec<PairCheckEntry>,
}

/// Output document shared by every command; absent fields are omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub indexing: Indexing,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<Scalar>>,
    /// Transfer element as an integer whose bit `j` has weight `2^j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<Kind>,
    /// Where each vertex sits at pi/2: `(u, u ^ sigma)` with `u <= u ^ sigma`.
    /// Periodic graphs list the diagonal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fidelities: Option<Vec<FidelityEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Checks>,
}

/// Orbit pairs `(u, u ^ sigma)`; the diagonal when `sigma = 0`.
pub fn orbit_pairs(result: &PstResult) -> Vec<(usize, usize)> {
    match result.kind() {
        PstKind::Periodic => (0..1usize << result.dim()).map(|u| (u, u)).collect(),
        PstKind::PerfectStateTransfer => result.pairs().to_vec(),
    }
}

impl Report {
    pub fn new(indexing: Indexing) -> Self {
        Self {
            indexing,
            eigenvalues: None,
            sigma: None,
            kind: None,
            pairs: None,
            time: None,
            fidelities: None,
            checks: None,
        }
    }

    pub fn with_spectrum(mut self, spectrum: &Spectrum) -> Self {
        self.eigenvalues = Some(scalars(spectrum.values()));
        self
    }

    pub fn with_result(mut self, result: &PstResult) -> Self {
        let ix = self.indexing;
        self.sigma = Some(result.sigma().bits());
        self.kind = Some(result.kind().into());
        self.pairs = Some(
            orbit_pairs(result)
                .into_iter()
                .map(|(u, v)| [ix.label(u), ix.label(v)])
                .collect(),
        );
        self
    }

    pub fn with_verification(mut self, report: &VerificationReport) -> Self {
        let ix = self.indexing;
        self.checks = Some(Checks {
            passed: report.passed,
            route_discrepancy: report.route_discrepancy,
            pairs: report
                .checks
                .iter()
                .map(|c| PairCheckEntry {
                    u: ix.label(c.u),
                    v: ix.label(c.v),
                    fidelity: c.fidelity,
                    max_leakage: c.max_leakage,
                    passed: c.passed,
                })
                .collect(),
        });
        self
    }

    /// Rebuilds the classification carried by a `pst` document.
    pub fn to_pst_result(&self) -> Result<PstResult, CliError> {
        let n = self
            .eigenvalues
            .as_ref()
            .map(Vec::len)
            .ok_or_else(|| CliError::usage("report has no eigenvalues"))?;
        if n < 2 || !n.is_power_of_two() {
            return Err(CliError::usage(format!("report has {n} eigenvalues")));
        }
        let dim = n.trailing_zeros();
        let sigma = self.sigma.ok_or_else(|| CliError::usage("report has no sigma"))?;
        let sigma = GroupElement::new(sigma, dim).map_err(|e| CliError::usage(e.to_string()))?;
        let mut pairs = Vec::new();
        for &[a, b] in self.pairs.as_deref().unwrap_or_default() {
            let (u, v) = (self.indexing.vertex(a)?, self.indexing.vertex(b)?);
            if u != v {
                pairs.push((u, v));
            }
        }
        let result =
            PstResult::from_parts(sigma, &pairs).map_err(|e| CliError::usage(e.to_string()))?;
        if self.kind.is_some_and(|k| k != result.kind().into()) {
            return Err(CliError::usage("kind does not match sigma"));
        }
        Ok(result)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self, dim: Option<u32>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "indexing: {}", self.indexing.name());
        if let Some(values) = &self.eigenvalues {
            let _ = writeln!(out, "eigenvalues: [{}]", join(values.iter()));
        }
        if let Some(sigma) = self.sigma {
            match dim {
                Some(d) => {
                    let _ = writeln!(out, "sigma: {sigma:0width$b} (group element {sigma})", width = d as usize);
                }
                None => {
                    let _ = writeln!(out, "sigma: {sigma}");
                }
            }
        }
        if let Some(kind) = self.kind {
            let text = match kind {
                Kind::Periodic => "periodic, period dividing pi/2",
                Kind::PerfectStateTransfer => "perfect state transfer at time pi/2",
            };
            let _ = writeln!(out, "kind: {text}");
        }
        if let Some(pairs) = &self.pairs {
            let rendered: Vec<String> = pairs.iter().map(|[u, v]| format!("({u}, {v})")).collect();
            let _ = writeln!(out, "pairs: {}", rendered.join(", "));
        }
        if let Some(t) = self.time {
            let _ = writeln!(out, "time: {t}");
        }
        if let Some(fids) = &self.fidelities {
            let _ = writeln!(out, "fidelities |U(t)[v][u]|:");
            for f in fids {
                let _ = writeln!(out, "  ({}, {}): {:.12}", f.u, f.v, f.fidelity);
            }
        }
        if let Some(checks) = &self.checks {
            let _ = writeln!(out, "checks:");
            for c in &checks.pairs {
                let _ = writeln!(
                    out,
                    "  {} ({}, {}): fidelity {:.12}, leakage {:.3e}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.u,
                    c.v,
                    c.fidelity,
                    c.max_leakage
                );
            }
            if let Some(d) = checks.route_discrepancy {
                let _ = writeln!(out, "route discrepancy: {d:.3e}");
            }
            let _ = writeln!(out, "verification: {}", if checks.passed { "PASS" } else { "FAIL" });
        }
        out
    }
}

fn join<T: std::fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}
