//! Command-line frontend for `cubewalk-core`.
//!
//! Exit codes: 0 on success, 1 when classification or verification fails,
//! 2 for usage errors (bad flags, malformed input).

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cubewalk_core::{
    adjacency_from_weights, classify, eigenvalues_from_weights, fidelity, transition_spectral,
    verify_result, CoreError,
};

pub mod dot;
pub mod input;
pub mod report;
pub mod table;

use input::{read_job, JobSpec};
use report::{FidelityEntry, Indexing, Report};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn failure(msg: impl Into<String>) -> Self {
        CliError::Failure(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failure(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Parser)]
#[command(name = "cubewalk", version, about = "Spectra and perfect state transfer of weighted cubelike graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// JSON job file `{"d": .., "z": [..], "time": ..}`; `-` reads stdin
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Comma-separated weights, e.g. `0,1,-7,-10`
    #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
    pub weights: Option<String>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Emit JSON (0-based unless --one-based)
    #[arg(long)]
    pub json: bool,
    /// Label vertices from 1 (default for text output)
    #[arg(long, conflicts_with = "zero_based")]
    pub one_based: bool,
    /// Label vertices from 0 (default for JSON output)
    #[arg(long)]
    pub zero_based: bool,
}

impl OutputArgs {
    pub fn indexing(&self) -> Indexing {
        if self.one_based {
            Indexing::OneBased
        } else if self.zero_based || self.json {
            Indexing::ZeroBased
        } else {
            Indexing::OneBased
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the spectrum
    Eigs {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify as perfect state transfer or periodic at time pi/2
    Pst {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print transfer fidelities |U(t)[v][u]|
    Simulate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Evaluation time (default: the input's time, else pi/2)
        #[arg(long, allow_hyphen_values = true)]
        time: Option<f64>,
        /// Vertex pair `U,V` in the active labelling; repeatable. Defaults to
        /// every pair starting at the first vertex.
        #[arg(long = "pair", value_name = "U,V", value_parser = parse_pair)]
        pairs: Vec<(usize, usize)>,
    },
    /// Classify and check the result against both transition-matrix routes
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Export the weighted graph
    Export {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Write Graphviz DOT to FILE (`-` for stdout)
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Recompute the built-in reference table
    Table {
        #[arg(long)]
        json: bool,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (u, v) = s
        .split_once(',')
        .ok_or_else(|| format!("expected U,V, got {s:?}"))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad vertex {x:?}: {e}"))
    };
    Ok((parse(u)?, parse(v)?))
}

fn core_failure(e: CoreError) -> CliError {
    CliError::failure(e.to_string())
}

fn render(report: &Report, output: &OutputArgs, dim: u32) -> String {
    if output.json {
        let mut s = report.to_json();
        s.push('\n');
        s
    } else {
        report.to_text(Some(dim))
    }
}

fn job(input: &InputArgs) -> Result<JobSpec, CliError> {
    read_job(input.input.as_deref(), input.weights.as_deref())
}

fn cmd_eigs(input: &InputArgs, output: &OutputArgs) -> Result<String, CliError> {
    let job = job(input)?;
    let spectrum = eigenvalues_from_weights(&job.weights).map_err(core_failure)?;
    let report = Report::new(output.indexing()).with_spectrum(&spectrum);
    Ok(render(&report, output, job.dim()))
}

fn classify_job(job: &JobSpec) -> Result<cubewalk_core::PstResult, CliError> {
    classify(&job.weights).map_err(|e| match e {
        CoreError::NonIntegral { .. } => CliError::failure(format!(
            "{e}; classification needs integer weights (use `simulate` for numeric fidelities)"
        )),
        other => core_failure(other),
    })
}

fn cmd_pst(input: &InputArgs, output: &OutputArgs) -> Result<String, CliError> {
    let job = job(input)?;
    let spectrum = eigenvalues_from_weights(&job.weights).map_err(core_failure)?;
    let result = classify_job(&job)?;
    let report = Report::new(output.indexing())
        .with_spectrum(&spectrum)
        .with_result(&result);
    Ok(render(&report, output, job.dim()))
}

fn cmd_simulate(
    input: &InputArgs,
    output: &OutputArgs,
    time: Option<f64>,
    pairs: &[(usize, usize)],
) -> Result<String, CliError> {
    let job = job(input)?;
    let t = time.unwrap_or(job.time);
    if !t.is_finite() {
        return Err(CliError::usage(format!("time must be finite, got {t}")));
    }
    let ix = output.indexing();
    let n = job.weights.len();
    let pairs: Vec<(usize, usize)> = if pairs.is_empty() {
        (0..n).map(|v| (0, v)).collect()
    } else {
        pairs
            .iter()
            .map(|&(u, v)| Ok((ix.vertex(u)?, ix.vertex(v)?)))
            .collect::<Result<_, CliError>>()?
    };
    if let Some(&(u, v)) = pairs.iter().find(|&&(u, v)| u >= n || v >= n) {
        return Err(CliError::usage(format!(
            "pair ({}, {}) out of range for {n} vertices",
            ix.label(u),
            ix.label(v)
        )));
    }
    let u_t = transition_spectral(&job.weights, t).map_err(|e| match e {
        CoreError::TooLarge { .. } => CliError::usage(e.to_string()),
        other => core_failure(other),
    })?;
    let fidelities = pairs
        .iter()
        .map(|&(u, v)| {
            Ok(FidelityEntry {
                u: ix.label(u),
                v: ix.label(v),
                fidelity: fidelity(&u_t, u, v).map_err(core_failure)?,
            })
        })
        .collect::<Result<_, CliError>>()?;
    let mut report = Report::new(ix);
    report.time = Some(t);
    report.fidelities = Some(fidelities);
    Ok(render(&report, output, job.dim()))
}

fn cmd_verify(input: &InputArgs, output: &OutputArgs) -> Result<(String, bool), CliError> {
    let job = job(input)?;
    let spectrum = eigenvalues_from_weights(&job.weights).map_err(core_failure)?;
    let result = classify_job(&job)?;
    let verification = match verify_result(&job.weights, &result) {
        Ok(r) => r,
        Err(CoreError::VerificationFailed { report }) => *report,
        Err(e @ CoreError::TooLarge { .. }) => return Err(CliError::usage(e.to_string())),
        Err(e) => return Err(core_failure(e)),
    };
    let passed = verification.passed;
    let report = Report::new(output.indexing())
        .with_spectrum(&spectrum)
        .with_result(&result)
        .with_verification(&verification);
    Ok((render(&report, output, job.dim()), passed))
}

fn cmd_export(
    input: &InputArgs,
    output: &OutputArgs,
    dot_path: Option<&PathBuf>,
) -> Result<String, CliError> {
    let job = job(input)?;
    let ix = output.indexing();
    if let Some(path) = dot_path {
        let dot = dot::to_dot(&job.weights, ix)?;
        if path.as_os_str() == "-" {
            return Ok(dot);
        }
        fs::write(path, dot)
            .map_err(|e| CliError::failure(format!("cannot write {}: {e}", path.display())))?;
        return Ok(format!("wrote {}\n", path.display()));
    }
    let graph = adjacency_from_weights(&job.weights).map_err(|e| CliError::usage(e.to_string()))?;
    if output.json {
        let doc = serde_json::json!({
            "indexing": ix.name(),
            "d": job.dim(),
            "adjacency": graph.rows(),
        });
        return Ok(format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")));
    }
    let mut out = format!("indexing: {}\n", ix.name());
    for row in graph.rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    Ok(out)
}

fn cmd_table(json: bool) -> Result<(String, bool), CliError> {
    let report = table::run_table().map_err(core_failure)?;
    let passed = report.passed();
    if !json {
        return Ok((report.to_text(), passed));
    }
    let rows: Vec<_> = report
        .rows
        .iter()
        .map(|r| {
            serde_json::json!({
                "row": r.index,
                "d": r.dim,
                "eigenvalues": r.eigenvalues,
                "eigenvalues_match": r.eigenvalues_match,
                "pairs": r.pairs.iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
                "pairs_match": r.pairs_match,
                "oracle_passed": r.oracle_failure.is_none(),
                "best_fidelity_before": r.best_fidelity_before,
                "passed": r.passed(),
            })
        })
        .collect();
    let doc = serde_json::json!({ "indexing": "one-based", "passed": passed, "rows": rows });
    Ok((format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")), passed))
}

/// Runs a parsed command, returning the text to print and whether the
/// command's own checks passed.
pub fn execute(cli: &Cli) -> Result<(String, bool), CliError> {
    match &cli.command {
        Command::Eigs { input, output } => cmd_eigs(input, output).map(|s| (s, true)),
        Command::Pst { input, output } => cmd_pst(input, output).map(|s| (s, true)),
        Command::Simulate {
            input,
            output,
            time,
            pairs,
        } => cmd_simulate(input, output, *time, pairs).map(|s| (s, true)),
        Command::Verify { input, output } => cmd_verify(input, output),
        Command::Export { input, output, dot } => {
            cmd_export(input, output, dot.as_ref()).map(|s| (s, true))
        }
        Command::Table { json } => cmd_table(*json),
    }
}

/// Full entry point: parses `args`, writes results to `out` and diagnostics
/// to `err`, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, passed)) => {
            let _ = write!(out, "{text}");
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "cubewalk: {e}");
            e.exit_code()
        }
    }
}
