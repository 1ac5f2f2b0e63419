//! Arithmetic on the Boolean group of bitstrings of length `d` and the signs of
//! its characters.
//!
//! Indices are 0-based and bit `j` of an index carries weight `2^j`, so the
//! group operation is plain machine XOR and the all-zero string is index 0.

use std::fmt;

use crate::error::{CoreError, Result};

/// Largest supported dimension.
pub const MAX_DIM: u32 = 20;

/// Parity of the bitwise inner product of two raw indices.
#[inline]
pub fn inner_parity(a: usize, b: usize) -> bool {
    (a & b).count_ones() & 1 == 1
}

/// Character sign `(-1)^<a|b>` for raw indices.
#[inline]
pub fn sign(a: usize, b: usize) -> i8 {
    if inner_parity(a, b) {
        -1
    } else {
        1
    }
}

pub(crate) fn check_dim(dim: u32) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(CoreError::InvalidDimension {
            dim,
            min: 1,
            max: MAX_DIM,
        })
    }
}

/// Dimension `d` for a vector of length `2^d`.
pub(crate) fn dim_of_len(len: usize) -> Result<u32> {
    if len == 0 || !len.is_power_of_two() {
        return Err(CoreError::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros())
}

/// A vertex of the Boolean hypercube of dimension `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    bits: usize,
    dim: u32,
}

impl GroupElement {
    pub fn new(bits: usize, dim: u32) -> Result<Self> {
        check_dim(dim)?;
        if bits >> dim != 0 {
            return Err(CoreError::ElementOutOfRange { bits, dim });
        }
        Ok(Self { bits, dim })
    }

    pub fn identity(dim: u32) -> Result<Self> {
        Self::new(0, dim)
    }

    pub fn bits(self) -> usize {
        self.bits
    }

    pub fn dim(self) -> u32 {
        self.dim
    }

    pub fn is_identity(self) -> bool {
        self.bits == 0
    }

    pub fn bit(self, j: u32) -> bool {
        self.bits >> j & 1 == 1
    }

    fn same_dim(self, other: Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(CoreError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    /// Parity of the number of positions where both strings have a one.
    pub fn parity_inner(self, other: Self) -> Result<bool> {
        self.same_dim(other)?;
        Ok(inner_parity(self.bits, other.bits))
    }

    pub fn xor(self, other: Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            bits: self.bits ^ other.bits,
            dim: self.dim,
        })
    }

    pub fn hadamard_sign(self, other: Self) -> Result<i8> {
        self.same_dim(other)?;
        Ok(sign(self.bits, other.bits))
    }

    /// Entry of the normalized Walsh–Hadamard eigenbasis at `(self, other)`.
    pub fn hadamard_entry(self, other: Self) -> Result<HadamardEntry> {
        Ok(HadamardEntry {
            sign: self.hadamard_sign(other)?,
            dim: self.dim,
        })
    }
}

/// Renders the bitstring most-significant bit first, e.g. `011` for 3 in d=3.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.dim as usize)
    }
}

/// A single entry `±1/sqrt(n)` of the Walsh–Hadamard eigenbasis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HadamardEntry {
    pub sign: i8,
    pub dim: u32,
}

impl HadamardEntry {
    pub fn scale(self) -> f64 {
        ((1usize << self.dim) as f64).sqrt().recip()
    }

    pub fn value(self) -> f64 {
        f64::from(self.sign) * self.scale()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(bits: usize, dim: u32) -> GroupElement {
        GroupElement::new(bits, dim).unwrap()
    }

    // independent oracle: walk the bits one at a time
    fn parity_by_loop(a: usize, b: usize, dim: u32) -> bool {
        let mut p = false;
        for j in 0..dim {
            if (a >> j) & 1 == 1 && (b >> j) & 1 == 1 {
                p = !p;
            }
        }
        p
    }

    #[test]
    fn parity_examples() {
        assert!(!el(0b000, 3).parity_inner(el(0b101, 3)).unwrap());
        assert!(!el(0b101, 3).parity_inner(el(0b101, 3)).unwrap());
        assert!(el(0b011, 3).parity_inner(el(0b001, 3)).unwrap());
    }

    #[test]
    fn parity_matches_bit_loop_for_all_pairs_d3() {
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(
                    el(a, 3).parity_inner(el(b, 3)).unwrap(),
                    parity_by_loop(a, b, 3),
                    "({a}, {b})"
                );
            }
        }
    }

    #[test]
    fn xor_examples() {
        let x = el(0b110, 3);
        assert_eq!(x.xor(x).unwrap(), el(0, 3));
        assert_eq!(x.xor(el(0, 3)).unwrap(), x);
        assert_eq!(el(0b011, 3).xor(el(0b110, 3)).unwrap(), el(0b101, 3));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = el(1, 2);
        let b = el(1, 3);
        assert!(matches!(
            a.parity_inner(b),
            Err(CoreError::DimensionMismatch { left: 2, right: 3 })
        ));
        assert!(a.xor(b).is_err());
        assert!(a.hadamard_sign(b).is_err());
    }

    #[test]
    fn construction_bounds() {
        assert!(GroupElement::new(8, 3).is_err());
        assert!(GroupElement::new(0, 0).is_err());
        assert!(GroupElement::new(0, MAX_DIM + 1).is_err());
        assert!(GroupElement::new((1 << MAX_DIM) - 1, MAX_DIM).is_ok());
    }

    #[test]
    fn sign_matrix_d2_matches_c4_eigenbasis() {
        let expected = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]];
        for (i, row) in expected.iter().enumerate() {
            for (j, &s) in row.iter().enumerate() {
                assert_eq!(el(i, 2).hadamard_sign(el(j, 2)).unwrap(), s);
            }
        }
        assert_eq!(el(0b11, 2).hadamard_sign(el(0b11, 2)).unwrap(), 1);
        let e = el(1, 2).hadamard_entry(el(1, 2)).unwrap();
        assert_eq!(e.value(), -0.5);
    }

    #[test]
    fn symmetric_orthogonal_and_multiplicative() {
        for dim in 1..=6u32 {
            let n = 1usize << dim;
            for i in 0..n {
                for k in 0..n {
                    let dot: i64 = (0..n)
                        .map(|j| i64::from(sign(i, j)) * i64::from(sign(k, j)))
                        .sum();
                    assert_eq!(dot, if i == k { n as i64 } else { 0 });
                    assert_eq!(sign(i, k), sign(k, i));
                    for j in 0..n {
                        assert_eq!(sign(i ^ k, j), sign(i, j) * sign(k, j));
                    }
                }
            }
        }
    }

    #[test]
    fn display_is_msb_first() {
        assert_eq!(el(0b011, 3).to_string(), "011");
        assert_eq!(el(1, 4).to_string(), "0001");
    }
}
