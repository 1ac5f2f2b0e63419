//! Perfect state transfer and periodicity at time pi/2 for integer-weighted
//! cubelike graphs.
//!
//! With integer weights every eigenvalue difference `lambda[k] - lambda[0]` is
//! even, so `exp(i pi/2 (lambda[k] - lambda[0])) = (-1)^((lambda[k] - lambda[0]) / 2)`.
//! The walk at pi/2 is therefore a global phase times the translation by the
//! unique group element `sigma` with `<sigma|k> = (lambda[k] - lambda[0]) / 2 (mod 2)`.
//! `sigma = 0` means the graph is periodic; otherwise every vertex `u` is
//! perfectly transferred to `u ^ sigma`.

use std::f64::consts::FRAC_PI_2;

use crate::boolean::{inner_parity, GroupElement};
use crate::error::{CoreError, Result};
use crate::spectral::{eigenvalues_from_weights, Spectrum, WeightVector};

/// Time at which the classification applies.
pub const TRANSFER_TIME: f64 = FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PstKind {
    /// Every vertex returns to itself; the period divides pi/2.
    Periodic,
    PerfectStateTransfer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PstResult {
    sigma: GroupElement,
    kind: PstKind,
    pairs: Vec<(usize, usize)>,
}

impl PstResult {
    fn from_sigma(sigma: GroupElement) -> Self {
        if sigma.is_identity() {
            return Self {
                sigma,
                kind: PstKind::Periodic,
                pairs: Vec::new(),
            };
        }
        let s = sigma.bits();
        let n = 1usize << sigma.dim();
        let pairs = (0..n).filter(|&u| u < u ^ s).map(|u| (u, u ^ s)).collect();
        Self {
            sigma,
            kind: PstKind::PerfectStateTransfer,
            pairs,
        }
    }

    /// Rebuilds a result from externally supplied parts, checking that the
    /// pairs are exactly the partition induced by `sigma`.
    pub fn from_parts(sigma: GroupElement, pairs: &[(usize, usize)]) -> Result<Self> {
        let expected = Self::from_sigma(sigma);
        let mut given: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        given.sort_unstable();
        if given != expected.pairs {
            return Err(CoreError::InvalidResult(format!(
                "pairs do not form the partition induced by sigma = {sigma}"
            )));
        }
        Ok(expected)
    }

    pub fn sigma(&self) -> GroupElement {
        self.sigma
    }

    pub fn kind(&self) -> PstKind {
        self.kind
    }

    /// Transfer pairs `(u, u ^ sigma)` with `u < u ^ sigma`, ascending by `u`.
    /// Empty when periodic.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn time(&self) -> f64 {
        TRANSFER_TIME
    }

    pub fn dim(&self) -> u32 {
        self.sigma.dim()
    }

    /// Where the walker starting at `u` sits at time pi/2.
    pub fn partner(&self, u: usize) -> usize {
        u ^ self.sigma.bits()
    }
}

fn integer_spectrum(spectrum: &Spectrum) -> Result<Vec<i64>> {
    match spectrum.integers() {
        Some(v) => Ok(v.to_vec()),
        None => {
            let v = spectrum.to_f64();
            let index = v.iter().position(|x| x.fract() != 0.0).unwrap_or(0);
            Err(CoreError::NonIntegral {
                index,
                value: v[index],
            })
        }
    }
}

/// Half-differences `(lambda[k] - lambda[0]) / 2`, checking they are integers.
fn half_differences(lambda: &[i64]) -> Result<Vec<i64>> {
    lambda
        .iter()
        .enumerate()
        .map(|(index, &l)| {
            let difference = i128::from(l) - i128::from(lambda[0]);
            if difference % 2 != 0 {
                return Err(CoreError::ParityViolation {
                    index,
                    difference: difference as i64,
                });
            }
            Ok((difference / 2) as i64)
        })
        .collect()
}

/// Transfer element read off the spectrum at the indices `2^j`, then checked
/// against every other character.
pub fn sigma_from_spectrum(spectrum: &Spectrum) -> Result<GroupElement> {
    let lambda = integer_spectrum(spectrum)?;
    let halves = half_differences(&lambda)?;
    let dim = spectrum.dim();
    let bits = (0..dim)
        .filter(|&j| halves[1 << j].rem_euclid(2) == 1)
        .fold(0usize, |acc, j| acc | 1 << j);
    for (k, &h) in halves.iter().enumerate() {
        if (h.rem_euclid(2) == 1) != inner_parity(bits, k) {
            return Err(CoreError::Inconsistent { sigma: bits, index: k });
        }
    }
    GroupElement::new(bits, dim)
}

/// True when `s` satisfies the parity pattern of the spectrum at every index.
pub fn matches_parity_pattern(spectrum: &Spectrum, s: GroupElement) -> Result<bool> {
    if s.dim() != spectrum.dim() {
        return Err(CoreError::DimensionMismatch {
            left: s.dim(),
            right: spectrum.dim(),
        });
    }
    let halves = half_differences(&integer_spectrum(spectrum)?)?;
    Ok(halves
        .iter()
        .enumerate()
        .all(|(k, &h)| (h.rem_euclid(2) == 1) == inner_parity(s.bits(), k)))
}

/// Transfer element straight from the weights: bit `j` is the parity of the
/// total weight on the classes whose index has bit `j` set.
pub fn sigma_from_weights(z: &WeightVector) -> Result<GroupElement> {
    let weights = z.require_integers()?;
    let dim = z.dim();
    let mut odd = vec![false; dim as usize];
    for (l, &w) in weights.iter().enumerate() {
        if w & 1 == 0 {
            continue;
        }
        for (j, flag) in odd.iter_mut().enumerate() {
            if l >> j & 1 == 1 {
                *flag = !*flag;
            }
        }
    }
    let bits = odd
        .iter()
        .enumerate()
        .filter(|(_, &o)| o)
        .fold(0usize, |acc, (j, _)| acc | 1 << j);
    GroupElement::new(bits, dim)
}

/// Classifies the graph generated by integer weights `z`, computing the
/// transfer element by both routes and insisting they agree.
pub fn classify(z: &WeightVector) -> Result<PstResult> {
    z.require_integers()?;
    let from_weights = sigma_from_weights(z)?;
    let from_spectrum = sigma_from_spectrum(&eigenvalues_from_weights(z)?)?;
    if from_weights != from_spectrum {
        return Err(CoreError::RouteDisagreement {
            from_spectrum: from_spectrum.bits(),
            from_weights: from_weights.bits(),
        });
    }
    Ok(PstResult::from_sigma(from_spectrum))
}
