//! Shared arithmetic primitives and the two value types used everywhere:
//! exponent sequences of power ideals and plane fat-point linear systems.
//!
//! All arithmetic is exact signed 64-bit (widened to 128 bits internally);
//! overflow is detected, never wrapped.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The positive part `max(0, a)`.
pub fn pos_part(a: i64) -> i64 {
    a.max(0)
}

/// Binomial coefficient `C(a, b)` with the convention that it is zero
/// whenever `a < b` (including negative `a`). Exact; overflow is an error.
pub fn binom_safe(a: i64, b: u32) -> Result<i64, Error> {
    let b = i64::from(b);
    if a < b {
        return Ok(0);
    }
    // Multiplicative form, dividing as we go so intermediates stay integral.
    let mut acc: i128 = 1;
    for i in 0..b {
        acc = acc
            .checked_mul((a - i) as i128)
            .ok_or(Error::Overflow("binom_safe"))?;
        acc /= (i + 1) as i128;
    }
    i64::try_from(acc).map_err(|_| Error::Overflow("binom_safe"))
}

/// `C(a, 2)` as an i128, total on all of i64. The workhorse of every
/// dimension count in the plane.
pub(crate) fn binom2(a: i64) -> i128 {
    if a < 2 {
        0
    } else {
        (a as i128) * ((a - 1) as i128) / 2
    }
}

/// The exponents `(a_1, ..., a_r)` of the powers of general linear forms
/// generating an ideal. Entries are positive and kept sorted nondecreasing;
/// callers never rely on input order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PowerSequence {
    powers: Vec<i64>,
}

impl PowerSequence {
    /// Builds a sequence from arbitrary order; sorts and validates.
    pub fn new(powers: impl Into<Vec<i64>>) -> Result<Self, Error> {
        let mut powers = powers.into();
        if powers.is_empty() {
            return Err(Error::InvalidPowerSequence("empty sequence".into()));
        }
        if let Some(&bad) = powers.iter().find(|&&a| a < 1) {
            return Err(Error::InvalidPowerSequence(format!(
                "entry {bad} is not a positive integer"
            )));
        }
        powers.sort_unstable();
        Ok(Self { powers })
    }

    /// Number of generators `r`.
    pub fn r(&self) -> usize {
        self.powers.len()
    }

    /// The sorted exponents, nondecreasing.
    pub fn powers(&self) -> &[i64] {
        &self.powers
    }

    pub fn max(&self) -> i64 {
        *self.powers.last().expect("nonempty by construction")
    }

    pub fn sum(&self) -> i64 {
        self.powers.iter().sum()
    }

    /// The subsequence of the `len` smallest exponents.
    pub fn prefix(&self, len: usize) -> Result<Self, Error> {
        if len == 0 || len > self.powers.len() {
            return Err(Error::contract(format!(
                "prefix length {len} out of range 1..={}",
                self.powers.len()
            )));
        }
        Ok(Self {
            powers: self.powers[..len].to_vec(),
        })
    }

    /// Keeps only the exponents `a_i <= bound`; may be empty.
    pub(crate) fn retain_at_most(&self, bound: i64) -> Vec<i64> {
        self.powers
            .iter()
            .copied()
            .filter(|&a| a <= bound)
            .collect()
    }
}

/// A plane linear system `L2(j; b_1, ..., b_n)`: curves of degree `j` with
/// multiplicity at least `b_i` at `n` general points. The degree may go
/// negative while reductions run; any such system has dimension 0.
///
/// The raw constructor accepts any multiplicities; [`normalize`] produces the
/// canonical form (sorted nonincreasing, entries >= 1).
///
/// [`normalize`]: crate::reduction::normalize
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearSystem {
    pub degree: i64,
    pub mults: Vec<i64>,
}

impl LinearSystem {
    pub fn new(degree: i64, mults: impl Into<Vec<i64>>) -> Self {
        Self {
            degree,
            mults: mults.into(),
        }
    }

    pub fn n_points(&self) -> usize {
        self.mults.len()
    }

    /// The `i`-th largest multiplicity (1-based), padding with zeros past the
    /// end. Assumes the system is normalized.
    pub(crate) fn mult_or_zero(&self, i: usize) -> i64 {
        debug_assert!(i >= 1);
        self.mults.get(i - 1).copied().unwrap_or(0)
    }
}

impl std::fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "L2({};", self.degree)?;
        if self.mults.is_empty() {
            write!(f, " -)")?;
        } else {
            for (i, b) in self.mults.iter().enumerate() {
                write!(f, "{}{}", if i == 0 { " " } else { "," }, b)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// The virtual dimension `C(j+2, 2) - sum_i C(b_i+1, 2)`, signed, before
/// clamping. `C(j+2, 2) = 0` for `j < 0` by the binomial convention.
pub fn virtual_dimension(sys: &LinearSystem) -> i64 {
    let mut acc = binom2(sys.degree + 2);
    for &b in &sys.mults {
        acc -= binom2(b + 1);
    }
    i64::try_from(acc).expect("virtual dimension exceeds i64")
}

/// The expected dimension `[virtual_dimension]_+`. For a non-special system
/// this is the actual dimension.
pub fn expected_dimension(sys: &LinearSystem) -> i64 {
    pos_part(virtual_dimension(sys))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pos_part_clamps() {
        assert_eq!(pos_part(5), 5);
        assert_eq!(pos_part(-3), 0);
        assert_eq!(pos_part(0), 0);
    }

    #[test]
    fn binom_convention() {
        assert_eq!(binom_safe(7, 2).unwrap(), 21);
        assert_eq!(binom_safe(1, 2).unwrap(), 0);
        assert_eq!(binom_safe(0, 0).unwrap(), 1);
        assert_eq!(binom_safe(-4, 2).unwrap(), 0);
        assert_eq!(binom_safe(1_000_000, 2).unwrap(), 499_999_500_000);
    }

    #[test]
    fn binom_overflow_detected() {
        assert!(matches!(binom_safe(i64::MAX, 3), Err(Error::Overflow(_))));
    }

    #[test]
    fn power_sequence_sorts_and_validates() {
        let ps = PowerSequence::new(vec![6, 5, 6, 6, 6, 6]).unwrap();
        assert_eq!(ps.powers(), &[5, 6, 6, 6, 6, 6]);
        assert_eq!(ps.r(), 6);
        assert_eq!(ps.max(), 6);
        assert_eq!(ps.sum(), 35);
        assert!(PowerSequence::new(Vec::<i64>::new()).is_err());
        assert!(PowerSequence::new(vec![3, 0]).is_err());
        assert!(PowerSequence::new(vec![-1]).is_err());
    }

    #[test]
    fn virtual_dimension_examples() {
        assert_eq!(
            virtual_dimension(&LinearSystem::new(2, vec![1, 1, 1, 1])),
            2
        );
        assert_eq!(virtual_dimension(&LinearSystem::new(3, vec![2, 2, 2])), 1);
        assert_eq!(
            virtual_dimension(&LinearSystem::new(3, vec![2, 2, 2, 2, 2])),
            -5
        );
        // degree < 0 contributes no sections
        assert_eq!(virtual_dimension(&LinearSystem::new(-1, vec![])), 0);
        assert_eq!(virtual_dimension(&LinearSystem::new(-3, vec![2])), -3);
    }

    #[test]
    fn expected_dimension_examples() {
        assert_eq!(
            expected_dimension(&LinearSystem::new(3, vec![2, 2, 2, 2, 2])),
            0
        );
        assert_eq!(
            expected_dimension(&LinearSystem::new(5, vec![4, 1, 1, 1, 1, 1, 1])),
            5
        );
        assert_eq!(
            expected_dimension(&LinearSystem::new(2, vec![1, 1, 1, 1])),
            2
        );
    }

    #[test]
    fn display_is_compact() {
        assert_eq!(
            LinearSystem::new(5, vec![3, 2, 2]).to_string(),
            "L2(5; 3,2,2)"
        );
        assert_eq!(LinearSystem::new(4, vec![]).to_string(), "L2(4; -)");
    }
}
