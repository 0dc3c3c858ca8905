//! Exact dimensions of plane fat-point linear systems with general base
//! points, by iterated Cremona and Bezout reductions.
//!
//! Every applied step preserves the dimension of the system; the loop
//! terminates because each step strictly decreases `j + sum(b_i)`. Terminal
//! states (negative degree, no points, standard position) have known
//! dimensions, and the full step sequence is returned as a certificate.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom2, expected_dimension, LinearSystem};
use crate::error::Error;

/// What a single reduction step did. `Cremona` records the degree shift
/// `m = j - (b_1 + b_2 + b_3)`; the stop kinds explain why the loop halted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Normalize,
    Cremona { shift: i64 },
    BezoutFive,
    BezoutTwo,
    StandardStop,
    EmptyStop,
    NegativeDegreeStop,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub kind: StepKind,
    pub before: LinearSystem,
    pub after: LinearSystem,
}

/// The ordered certificate of a reduction run. Adjacent steps chain:
/// each `after` equals the next `before`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub terminal: LinearSystem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimValue {
    Exact(i64),
    Undetermined,
}

impl DimValue {
    pub fn exact(&self) -> Option<i64> {
        match *self {
            DimValue::Exact(d) => Some(d),
            DimValue::Undetermined => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DimValue::Exact(_))
    }
}

/// An exact dimension with its certificate, or an honest `Undetermined`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimResult {
    pub value: DimValue,
    pub trace: ReductionTrace,
}

/// Canonical form: multiplicities sorted nonincreasing, entries <= 0 dropped
/// (they impose no conditions), degree unchanged.
pub fn normalize(sys: &LinearSystem) -> LinearSystem {
    let mut mults: Vec<i64> = sys.mults.iter().copied().filter(|&b| b > 0).collect();
    mults.sort_unstable_by(|a, b| b.cmp(a));
    LinearSystem::new(sys.degree, mults)
}

fn is_normalized(sys: &LinearSystem) -> bool {
    sys.mults.windows(2).all(|w| w[0] >= w[1]) && sys.mults.iter().all(|&b| b >= 1)
}

/// Standard position: `j >= b_1 + b_2 + b_3`, missing multiplicities padded
/// with zeros. Standard systems are non-special, so their dimension is the
/// expected one. Assumes `sys` normalized.
pub fn is_standard(sys: &LinearSystem) -> bool {
    debug_assert!(is_normalized(sys));
    sys.degree >= sys.mult_or_zero(1) + sys.mult_or_zero(2) + sys.mult_or_zero(3)
}

/// The quadratic Cremona transformation on the three largest multiplicities:
/// `(j; b_1, b_2, b_3, ...) -> (j+m; b_1+m, b_2+m, b_3+m, ...)` with
/// `m = j - (b_1 + b_2 + b_3)`. Dimension-preserving whenever `b_3 + m >= 0`.
pub fn cremona_step(sys: &LinearSystem) -> Result<LinearSystem, Error> {
    if !is_normalized(sys) {
        return Err(Error::contract(format!(
            "cremona_step: {sys} is not normalized"
        )));
    }
    if sys.n_points() < 3 {
        return Err(Error::contract(format!(
            "cremona_step: {sys} has fewer than 3 points"
        )));
    }
    let m = cremona_shift(sys);
    if sys.mult_or_zero(3) + m < 0 {
        return Err(Error::contract(format!(
            "cremona_step: shift {m} drives a multiplicity of {sys} below zero"
        )));
    }
    let mut mults = sys.mults.clone();
    for b in mults.iter_mut().take(3) {
        *b += m;
    }
    Ok(normalize(&LinearSystem::new(sys.degree + m, mults)))
}

pub fn cremona_shift(sys: &LinearSystem) -> i64 {
    sys.degree - (sys.mult_or_zero(1) + sys.mult_or_zero(2) + sys.mult_or_zero(3))
}

/// Bezout against the conic through the five biggest points: applicable when
/// `2j < b_1 + ... + b_5` (zero padding), subtracting the conic once.
pub fn bezout_five_step(sys: &LinearSystem) -> Result<LinearSystem, Error> {
    if !is_normalized(sys) {
        return Err(Error::contract(format!(
            "bezout_five_step: {sys} is not normalized"
        )));
    }
    let top5: i64 = (1..=5).map(|i| sys.mult_or_zero(i)).sum();
    if 2 * sys.degree >= top5 {
        return Err(Error::contract(format!(
            "bezout_five_step: 2*{} >= {top5} for {sys}",
            sys.degree
        )));
    }
    let mut mults = sys.mults.clone();
    mults.resize(mults.len().max(5), 0);
    for b in mults.iter_mut().take(5) {
        *b -= 1;
    }
    Ok(normalize(&LinearSystem::new(sys.degree - 2, mults)))
}

/// Bezout against the line through the two biggest points: applicable when
/// `j < b_1 + b_2` (zero padding, which also covers the single fat point
/// with j < b_1).
pub fn bezout_two_step(sys: &LinearSystem) -> Result<LinearSystem, Error> {
    if !is_normalized(sys) {
        return Err(Error::contract(format!(
            "bezout_two_step: {sys} is not normalized"
        )));
    }
    if sys.degree >= sys.mult_or_zero(1) + sys.mult_or_zero(2) {
        return Err(Error::contract(format!(
            "bezout_two_step: {} >= {} + {} for {sys}",
            sys.degree,
            sys.mult_or_zero(1),
            sys.mult_or_zero(2)
        )));
    }
    let mut mults = sys.mults.clone();
    mults.resize(mults.len().max(2), 0);
    for b in mults.iter_mut().take(2) {
        *b -= 1;
    }
    Ok(normalize(&LinearSystem::new(sys.degree - 1, mults)))
}

/// Runs the reduction loop to a terminal state and returns the exact
/// dimension with its certificate.
///
/// Step order is deterministic: normalize, then stop on negative degree /
/// empty multiset / standard position; otherwise prefer the line Bezout,
/// then Cremona (only with strictly negative shift), then the conic Bezout.
/// `Undetermined` is a value, not an error: it is returned if no rule
/// applies, so callers can fall back to the modular oracle.
pub fn dim_linear_system(sys: &LinearSystem) -> DimResult {
    let mut steps = Vec::new();
    let mut cur = normalize(sys);
    if cur != *sys {
        steps.push(ReductionStep {
            kind: StepKind::Normalize,
            before: sys.clone(),
            after: cur.clone(),
        });
    }

    // Strictly decreasing on every applied step; bail out if that breaks.
    let mut measure = measure_of(&cur);

    loop {
        if cur.degree < 0 {
            return finish(steps, cur, StepKind::NegativeDegreeStop, 0);
        }
        if cur.mults.is_empty() {
            let dim = binom2(cur.degree + 2) as i64;
            return finish(steps, cur, StepKind::EmptyStop, dim);
        }
        if is_standard(&cur) {
            let dim = expected_dimension(&cur);
            return finish(steps, cur, StepKind::StandardStop, dim);
        }

        let (kind, next) = if cur.degree < cur.mult_or_zero(1) + cur.mult_or_zero(2) {
            (
                StepKind::BezoutTwo,
                bezout_two_step(&cur).expect("guard checked"),
            )
        } else if cremona_shift(&cur) < 0 && cur.mult_or_zero(3) + cremona_shift(&cur) >= 0 {
            (
                StepKind::Cremona {
                    shift: cremona_shift(&cur),
                },
                cremona_step(&cur).expect("guard checked"),
            )
        } else if 2 * cur.degree < (1..=5).map(|i| cur.mult_or_zero(i)).sum::<i64>() {
            (
                StepKind::BezoutFive,
                bezout_five_step(&cur).expect("guard checked"),
            )
        } else {
            return DimResult {
                value: DimValue::Undetermined,
                trace: ReductionTrace {
                    steps,
                    terminal: cur,
                },
            };
        };

        let next_measure = measure_of(&next);
        assert!(
            next_measure < measure,
            "reduction step failed to decrease {measure} (from {cur} to {next})"
        );
        measure = next_measure;
        steps.push(ReductionStep {
            kind,
            before: cur,
            after: next.clone(),
        });
        cur = next;
    }
}

fn measure_of(sys: &LinearSystem) -> i64 {
    sys.degree + sys.mults.iter().sum::<i64>()
}

fn finish(
    mut steps: Vec<ReductionStep>,
    terminal: LinearSystem,
    kind: StepKind,
    dim: i64,
) -> DimResult {
    steps.push(ReductionStep {
        kind,
        before: terminal.clone(),
        after: terminal.clone(),
    });
    DimResult {
        value: DimValue::Exact(dim),
        trace: ReductionTrace { steps, terminal },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(degree: i64, mults: &[i64]) -> LinearSystem {
        LinearSystem::new(degree, mults.to_vec())
    }

    #[test]
    fn normalize_sorts_and_drops() {
        assert_eq!(normalize(&sys(3, &[0, 2, -1, 1])), sys(3, &[2, 1]));
        assert_eq!(normalize(&sys(4, &[])), sys(4, &[]));
        assert_eq!(
            normalize(&sys(6, &[2, 1, 1, 3, 3, 3])),
            sys(6, &[3, 3, 3, 2, 1, 1])
        );
    }

    #[test]
    fn standard_position() {
        assert!(is_standard(&sys(7, &[3, 2, 2])));
        assert!(!is_standard(&sys(8, &[4, 3, 3, 3, 3, 3])));
        assert!(is_standard(&sys(2, &[1])));
        assert!(is_standard(&sys(0, &[])));
    }

    #[test]
    fn cremona_examples() {
        assert_eq!(cremona_step(&sys(5, &[3, 2, 2])).unwrap(), sys(3, &[1]));
        assert_eq!(
            cremona_step(&sys(8, &[4, 3, 3, 3, 3, 3])).unwrap(),
            sys(6, &[3, 3, 3, 2, 1, 1])
        );
        // Zero shift applies mechanically and changes nothing.
        assert_eq!(
            cremona_step(&sys(6, &[2, 2, 2])).unwrap(),
            sys(6, &[2, 2, 2])
        );
        assert!(cremona_step(&sys(3, &[3, 3])).is_err());
        // b_3 + m < 0 is a contract error.
        assert!(cremona_step(&sys(1, &[1, 1, 1])).is_err());
    }

    #[test]
    fn bezout_five_examples() {
        assert_eq!(
            bezout_five_step(&sys(3, &[2, 2, 2, 2, 2])).unwrap(),
            sys(1, &[1, 1, 1, 1, 1])
        );
        assert_eq!(
            bezout_five_step(&sys(9, &[5, 4, 4, 4, 4, 4])).unwrap(),
            sys(7, &[4, 4, 3, 3, 3, 3])
        );
        assert_eq!(
            bezout_five_step(&sys(1, &[1, 1, 1, 1, 1])).unwrap(),
            sys(-1, &[])
        );
        assert!(bezout_five_step(&sys(5, &[2, 2, 2, 2, 2])).is_err());
    }

    #[test]
    fn bezout_two_examples() {
        assert_eq!(bezout_two_step(&sys(2, &[2, 2])).unwrap(), sys(1, &[1, 1]));
        assert_eq!(
            bezout_two_step(&sys(7, &[6, 3, 2, 2, 2, 2, 2])).unwrap(),
            sys(6, &[5, 2, 2, 2, 2, 2, 2])
        );
        // Single fat point through the zero pad.
        assert_eq!(bezout_two_step(&sys(3, &[4])).unwrap(), sys(2, &[3]));
        assert!(bezout_two_step(&sys(2, &[1, 1])).is_err());
    }

    #[test]
    fn dimension_fixtures() {
        let d = dim_linear_system(&sys(5, &[3, 2, 2]));
        assert_eq!(d.value, DimValue::Exact(9));
        assert_eq!(d.trace.terminal, sys(3, &[1]));

        assert_eq!(
            dim_linear_system(&sys(3, &[2, 2, 2, 2, 2])).value,
            DimValue::Exact(0)
        );

        let d = dim_linear_system(&sys(8, &[4, 3, 3, 3, 3, 3]));
        assert_eq!(d.value, DimValue::Exact(5));
        let cremonas = d
            .trace
            .steps
            .iter()
            .filter(|s| matches!(s.kind, StepKind::Cremona { .. }))
            .count();
        assert_eq!(cremonas, 3);
        assert_eq!(d.trace.terminal, sys(2, &[1]));

        assert_eq!(
            dim_linear_system(&sys(6, &[2, 1, 1, 1, 1, 1])).value,
            DimValue::Exact(20)
        );

        // The special quartic through five double points: the loop finds the
        // true dimension 1, one above the expected dimension 0.
        assert_eq!(
            dim_linear_system(&sys(4, &[2, 2, 2, 2, 2])).value,
            DimValue::Exact(1)
        );
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(
            dim_linear_system(&sys(-2, &[3, 1])).value,
            DimValue::Exact(0)
        );
        assert_eq!(dim_linear_system(&sys(4, &[])).value, DimValue::Exact(15));
        assert_eq!(dim_linear_system(&sys(0, &[])).value, DimValue::Exact(1));
        assert_eq!(dim_linear_system(&sys(0, &[1])).value, DimValue::Exact(0));
        assert_eq!(dim_linear_system(&sys(3, &[7])).value, DimValue::Exact(0));
    }

    #[test]
    fn traces_chain() {
        let d = dim_linear_system(&sys(9, &[5, 4, 4, 4, 4, 4, 2, 1]));
        assert!(d.value.is_exact());
        for w in d.trace.steps.windows(2) {
            assert_eq!(w[0].after, w[1].before);
        }
        assert_eq!(d.trace.steps.last().unwrap().after, d.trace.terminal);
    }
}
