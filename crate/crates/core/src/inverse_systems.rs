//! Macaulay duality: graded pieces of quotients by powers of general linear
//! forms become plane fat-point linear systems, which the reduction engine
//! can measure. Generators of degree above the working degree impose no
//! conditions and are dropped first, which extends the duality to every
//! degree and yields full Hilbert functions.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{LinearSystem, PowerSequence};
use crate::error::Error;
use crate::reduction::{dim_linear_system, normalize, DimResult, DimValue};

/// A graded-dimension query: `dim_K [R/(I, L^k)]_j` for the ideal generated
/// by `powers` of general linear forms, with an optional extra power `L^k`
/// of one more general form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientQuery {
    pub powers: PowerSequence,
    pub degree: i64,
    pub square_shift: Option<i64>,
}

impl QuotientQuery {
    pub fn new(
        powers: PowerSequence,
        degree: i64,
        square_shift: Option<i64>,
    ) -> Result<Self, Error> {
        if degree < 0 {
            return Err(Error::contract(format!(
                "quotient query degree {degree} must be nonnegative"
            )));
        }
        if let Some(k) = square_shift {
            if k < 1 {
                return Err(Error::contract(format!("shift exponent {k} must be >= 1")));
            }
        }
        Ok(Self {
            powers,
            degree,
            square_shift,
        })
    }

    /// The dual linear system actually measured: one point of multiplicity
    /// `j - a_i + 1` per surviving generator, plus `j - k + 1` for the shift
    /// when it contributes (`k <= j`).
    pub fn dual_system(&self) -> LinearSystem {
        let j = self.degree;
        let mut mults: Vec<i64> = self
            .powers
            .retain_at_most(j)
            .iter()
            .map(|&a| j - a + 1)
            .collect();
        if let Some(k) = self.square_shift {
            if k <= j {
                mults.push(j - k + 1);
            }
        }
        normalize(&LinearSystem::new(j, mults))
    }

    pub fn dim(&self) -> DimResult {
        dim_linear_system(&self.dual_system())
    }
}

/// The duality translation for `j >= max(a_i)`: multiplicities `j - a_i + 1`.
pub fn apply_duality(powers: &PowerSequence, j: i64) -> Result<LinearSystem, Error> {
    if j < powers.max() {
        return Err(Error::contract(format!(
            "duality needs j >= max powers, got j = {j} < {}",
            powers.max()
        )));
    }
    let mults: Vec<i64> = powers.powers().iter().map(|&a| j - a + 1).collect();
    Ok(normalize(&LinearSystem::new(j, mults)))
}

/// `dim_K [R/(I, L^k)]_j` (no shift: `dim_K [R/I]_j`), defined for every
/// `j >= 0` by dropping generators of degree above `j` before dualizing.
pub fn quotient_dim(
    powers: &PowerSequence,
    degree: i64,
    square_shift: Option<i64>,
) -> Result<DimResult, Error> {
    Ok(QuotientQuery::new(powers.clone(), degree, square_shift)?.dim())
}

/// Exact variant for callers that treat `Undetermined` as unreachable.
pub(crate) fn quotient_dim_exact(
    powers: &PowerSequence,
    degree: i64,
    square_shift: Option<i64>,
) -> Result<i64, Error> {
    match quotient_dim(powers, degree, square_shift)?.value {
        DimValue::Exact(d) => Ok(d),
        DimValue::Undetermined => Err(Error::Undetermined { degree }),
    }
}

/// The Hilbert function `(dim A_0, ..., dim A_e)` of the artinian quotient,
/// ending at the last nonzero degree. Requires at least three generators
/// (fewer is not artinian and the sequence would never terminate).
pub fn hilbert_function(powers: &PowerSequence) -> Result<Vec<i64>, Error> {
    if powers.r() < 3 {
        return Err(Error::NonArtinian { r: powers.r() });
    }
    // The socle degree of an artinian quotient by forms of these degrees
    // cannot reach the sum of the exponents; use it as a hard stop.
    let cap = powers.sum();
    let mut hf = Vec::new();
    for j in 0..=cap {
        let dim = quotient_dim_exact(powers, j, None)?;
        if dim == 0 {
            return Ok(hf);
        }
        hf.push(dim);
    }
    Err(Error::Internal(format!(
        "Hilbert function of {:?} did not vanish by degree {cap}",
        powers.powers()
    )))
}

/// Independent cross-check for at most three generators: after a coordinate
/// change the ideal is a monomial complete intersection, so the Hilbert
/// series is the product of `1 + t + ... + t^(a_i - 1)` over the generators
/// times the free series of the remaining variables. For `r < 3` the series
/// is infinite and a truncation length is required.
pub fn ci_hilbert_function(
    powers: &PowerSequence,
    truncate: Option<usize>,
) -> Result<Vec<i64>, Error> {
    let r = powers.r();
    if r > 3 {
        return Err(Error::contract(format!(
            "complete-intersection cross-check needs r <= 3, got r = {r}"
        )));
    }
    // Coefficients of prod_i (1 + t + ... + t^(a_i - 1)).
    let mut coeffs: Vec<i64> = vec![1];
    for &a in powers.powers() {
        let mut next = vec![0i64; coeffs.len() + a as usize - 1];
        for (i, &c) in coeffs.iter().enumerate() {
            for d in 0..a as usize {
                next[i + d] += c;
            }
        }
        coeffs = next;
    }
    // Each free variable multiplies the series by 1/(1 - t): prefix sums.
    let free_vars = 3 - r;
    if free_vars > 0 {
        let Some(len) = truncate else {
            return Err(Error::contract(
                "r < 3 yields an infinite series; a truncation length is required",
            ));
        };
        coeffs.resize(coeffs.len().max(len), 0);
        for _ in 0..free_vars {
            for i in 1..coeffs.len() {
                coeffs[i] += coeffs[i - 1];
            }
        }
        coeffs.truncate(len);
    } else if let Some(len) = truncate {
        coeffs.truncate(len);
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(v: &[i64]) -> PowerSequence {
        PowerSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn duality_formula() {
        assert_eq!(
            apply_duality(&ps(&[2, 2, 2, 2]), 2).unwrap(),
            LinearSystem::new(2, vec![1, 1, 1, 1])
        );
        assert_eq!(
            apply_duality(&ps(&[5, 6, 6, 6, 6, 6]), 6).unwrap(),
            LinearSystem::new(6, vec![2, 1, 1, 1, 1, 1])
        );
        assert_eq!(
            apply_duality(&ps(&[3]), 3).unwrap(),
            LinearSystem::new(3, vec![1])
        );
        assert!(apply_duality(&ps(&[3, 5]), 4).is_err());
    }

    #[test]
    fn quotient_dim_fixtures() {
        let mixed = ps(&[5, 6, 6, 6, 6, 6]);
        assert_eq!(
            quotient_dim(&mixed, 4, None).unwrap().value,
            DimValue::Exact(15)
        );
        assert_eq!(
            quotient_dim(&mixed, 6, None).unwrap().value,
            DimValue::Exact(20)
        );
        assert_eq!(
            quotient_dim(&mixed, 6, Some(2)).unwrap().value,
            DimValue::Exact(5)
        );
        assert_eq!(
            quotient_dim(&ps(&[2, 2, 2, 2]), 2, None).unwrap().value,
            DimValue::Exact(2)
        );
        // A shift above the degree imposes no condition.
        assert_eq!(
            quotient_dim(&ps(&[2, 2, 2]), 1, Some(5)).unwrap().value,
            DimValue::Exact(3)
        );
        assert!(quotient_dim(&mixed, -1, None).is_err());
        assert!(quotient_dim(&mixed, 3, Some(0)).is_err());
    }

    #[test]
    fn dual_systems_have_the_right_points() {
        // The shift contributes one point of multiplicity j - k + 1 next to
        // the j - a_i + 1 of the surviving generators.
        let mixed = ps(&[5, 6, 6, 6, 6, 6]);
        let query = QuotientQuery::new(mixed.clone(), 6, Some(2)).unwrap();
        assert_eq!(
            query.dual_system(),
            LinearSystem::new(6, vec![5, 2, 1, 1, 1, 1, 1])
        );
        // Dropped generators leave no point; a dropped shift leaves none.
        let query = QuotientQuery::new(mixed.clone(), 5, Some(7)).unwrap();
        assert_eq!(query.dual_system(), LinearSystem::new(5, vec![1]));
        let query = QuotientQuery::new(mixed, 3, None).unwrap();
        assert_eq!(query.dual_system(), LinearSystem::new(3, vec![]));
    }

    #[test]
    fn hilbert_function_fixtures() {
        assert_eq!(
            hilbert_function(&ps(&[3, 3, 3])).unwrap(),
            vec![1, 3, 6, 7, 6, 3, 1]
        );
        assert_eq!(
            hilbert_function(&ps(&[5, 6, 6, 6, 6, 6])).unwrap(),
            vec![1, 3, 6, 10, 15, 20, 20, 15, 5]
        );
        assert_eq!(hilbert_function(&ps(&[1, 1, 1])).unwrap(), vec![1]);
        assert!(matches!(
            hilbert_function(&ps(&[4, 4])),
            Err(Error::NonArtinian { r: 2 })
        ));
    }

    #[test]
    fn ci_cross_check_fixtures() {
        assert_eq!(
            ci_hilbert_function(&ps(&[3, 3, 3]), None).unwrap(),
            vec![1, 3, 6, 7, 6, 3, 1]
        );
        assert_eq!(
            ci_hilbert_function(&ps(&[2, 2, 2]), None).unwrap(),
            vec![1, 3, 3, 1]
        );
        assert_eq!(
            ci_hilbert_function(&ps(&[1, 2, 3]), None).unwrap(),
            vec![1, 2, 2, 1]
        );
        // r < 3: non-artinian, truncated series of K[x,y,z]/(l^2).
        assert_eq!(
            ci_hilbert_function(&ps(&[2]), Some(5)).unwrap(),
            vec![1, 3, 5, 7, 9]
        );
        assert!(ci_hilbert_function(&ps(&[2]), None).is_err());
        assert!(ci_hilbert_function(&ps(&[2, 2, 2, 2]), None).is_err());
    }

    #[test]
    fn generator_drop_identity() {
        let powers = ps(&[2, 5, 7, 9]);
        for j in 0..=9 {
            let full = quotient_dim(&powers, j, None).unwrap().value;
            let kept = powers.retain_at_most(j);
            let restricted = if kept.is_empty() {
                DimValue::Exact(crate::combinatorics::binom_safe(j + 2, 2).unwrap())
            } else {
                quotient_dim(&PowerSequence::new(kept).unwrap(), j, None)
                    .unwrap()
                    .value
            };
            assert_eq!(full, restricted, "degree {j}");
        }
    }
}
