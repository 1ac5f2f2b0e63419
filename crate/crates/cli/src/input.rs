use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::io::Read;
use std::path::Path;

use cubewalk_core::WeightVector;
use serde::Deserialize;
use serde_json::Number;

use crate::CliError;

/// One job: the weights, plus the evaluation time for `simulate`.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub weights: WeightVector,
    pub time: f64,
}

impl JobSpec {
    pub fn dim(&self) -> u32 {
        self.weights.dim()
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    d: u32,
    z: Vec<Number>,
    #[serde(default)]
    time: Option<f64>,
}

fn weights_from_numbers(z: &[Number]) -> Result<WeightVector, CliError> {
    let exact: Option<Vec<i64>> = z.iter().map(Number::as_i64).collect();
    let result = match exact {
        Some(ints) => WeightVector::from_integers(ints),
        None => {
            let reals: Option<Vec<f64>> = z.iter().map(Number::as_f64).collect();
            let reals = reals.ok_or_else(|| CliError::usage("weights must be numbers"))?;
            WeightVector::from_reals(reals)
        }
    };
    result.map_err(|e| CliError::usage(format!("invalid weights: {e}")))
}

fn check_time(time: f64) -> Result<f64, CliError> {
    if time.is_finite() {
        Ok(time)
    } else {
        Err(CliError::usage(format!("time must be finite, got {time}")))
    }
}

/// Parses `{"d": .., "z": [..], "time": ..}`.
pub fn parse_json(text: &str) -> Result<JobSpec, CliError> {
    let raw: RawJob =
        serde_json::from_str(text).map_err(|e| CliError::usage(format!("malformed input: {e}")))?;
    let expected = 1usize
        .checked_shl(raw.d)
        .filter(|_| raw.d < usize::BITS)
        .ok_or_else(|| CliError::usage(format!("dimension {} is too large", raw.d)))?;
    if raw.z.len() != expected {
        return Err(CliError::usage(format!(
            "z has {} entries but d = {} needs {expected}",
            raw.z.len(),
            raw.d
        )));
    }
    Ok(JobSpec {
        weights: weights_from_numbers(&raw.z)?,
        time: check_time(raw.time.unwrap_or(FRAC_PI_2))?,
    })
}

/// Parses a comma-separated weight list such as `0,1,-7,-10`.
pub fn parse_csv(text: &str) -> Result<JobSpec, CliError> {
    let numbers: Vec<Number> = text
        .split(',')
        .map(str::trim)
        .map(|field| {
            serde_json::from_str::<Number>(field)
                .map_err(|_| CliError::usage(format!("not a number: {field:?}")))
        })
        .collect::<Result<_, _>>()?;
    Ok(JobSpec {
        weights: weights_from_numbers(&numbers)?,
        time: FRAC_PI_2,
    })
}

pub fn read_job(input: Option<&Path>, csv: Option<&str>) -> Result<JobSpec, CliError> {
    match (input, csv) {
        (Some(_), Some(_)) => Err(CliError::usage("use either --input or --weights, not both")),
        (None, Some(csv)) => parse_csv(csv),
        (Some(path), None) => {
            let text = if path.as_os_str() == "-" {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| CliError::usage(format!("cannot read stdin: {e}")))?;
                buf
            } else {
                fs::read_to_string(path)
                    .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?
            };
            parse_json(&text)
        }
        (None, None) => Err(CliError::usage("no input: pass --input FILE or --weights CSV")),
    }
}
