//! Maximal-rank analysis for multiplication by powers of a general linear
//! form on artinian quotients of `K[x,y,z]` by powers of general linear
//! forms.
//!
//! The exponent sequence is split into two regimes by an integer test on
//! prefix averages. In the balanced regime the critical degree sits just
//! past the Hilbert-function peak and the quotient dimension there has the
//! closed form `[2b + 1 - r]_+`; otherwise the sequence is analyzed through
//! a truncation whose own peak controls every degree. [`rank_profile`]
//! measures the actual per-degree ranks with either the combinatorial engine
//! (duality + reduction) or the modular oracle, and [`verify_theorem`]
//! renders the maximal-rank verdict for the square of a general form.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{pos_part, PowerSequence};
use crate::error::Error;
use crate::inverse_systems::{hilbert_function, quotient_dim, quotient_dim_exact};
use crate::oracle::{oracle_quotient_dim, PrimeFieldConfig};

/// Which regime the exponent sequence falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    /// Every prefix bound holds: for all m in [2, r-1],
    /// `(m-1) * a_{m+1} <= a_1 + ... + a_m - m`.
    CaseI,
    /// Some prefix bound fails; `split_index` is the least such m and
    /// `truncated_peak` the Hilbert peak of the quotient by the first m
    /// generators.
    CaseII {
        split_index: usize,
        truncated_peak: i64,
    },
}

/// The derived quantities of the case analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseData {
    /// First peak of the Hilbert function (socle degree of `A/LA` in the
    /// balanced case): `floor((sum a_i - r) / (r - 1))`.
    pub peak: i64,
    /// The excess `b` in `sum a_i = (r-1)(peak+1) + b`, between 1 and r-1.
    pub excess: i64,
    /// Number of exponents equal to the peak.
    pub count_at_peak: usize,
    /// Number of exponents equal to peak + 1.
    pub count_above_peak: usize,
    pub case: CaseKind,
}

/// Computes peak, excess, the two counts and the case tag. Pure integer
/// arithmetic; the prefix bounds are tested cross-multiplied.
pub fn compute_case_data(powers: &PowerSequence) -> Result<CaseData, Error> {
    let r = powers.r();
    if r < 2 {
        return Err(Error::contract(format!(
            "case analysis needs at least 2 generators, got {r}"
        )));
    }
    let a = powers.powers();
    let sum: i64 = powers.sum();
    let r_i = r as i64;
    let peak = (sum - r_i).div_euclid(r_i - 1);
    let excess = sum - (r_i - 1) * (peak + 1);
    debug_assert!((1..=r_i - 1).contains(&excess));
    let count_at_peak = a.iter().filter(|&&x| x == peak).count();
    let count_above_peak = a.iter().filter(|&&x| x == peak + 1).count();

    let mut case = CaseKind::CaseI;
    let mut prefix_sum = a[0] + a[1];
    for (m, &next) in a.iter().enumerate().skip(2) {
        // Prefix of length m, next exponent a[m] (the (m+1)-th smallest).
        let m_i = m as i64;
        if (m_i - 1) * next > prefix_sum - m_i {
            case = CaseKind::CaseII {
                split_index: m,
                truncated_peak: (prefix_sum - m_i).div_euclid(m_i - 1),
            };
            break;
        }
        prefix_sum += next;
    }

    Ok(CaseData {
        peak,
        excess,
        count_at_peak,
        count_above_peak,
        case,
    })
}

/// The closed form `[2b + 1 - r]_+` for the quotient dimension by the square
/// at the critical degree `peak + 1`. Proven only in the balanced case.
pub fn predicted_critical_dim(cd: &CaseData, r: usize) -> Result<i64, Error> {
    if !matches!(cd.case, CaseKind::CaseI) {
        return Err(Error::contract(
            "critical-dimension formula applies to the balanced case only",
        ));
    }
    Ok(pos_part(2 * cd.excess + 1 - r as i64))
}

/// Multiplicities `[peak - a_i + 1]_+` with which the lines through the
/// shift point and each base point sit in the base locus of the critical
/// system.
pub fn line_base_multiplicities(powers: &PowerSequence, peak: i64) -> Vec<i64> {
    powers
        .powers()
        .iter()
        .map(|&a| pos_part(peak - a + 1))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Combinatorial,
    Oracle,
}

/// One degree of a rank profile. The exact sequence gives
/// `rank = dim_target - dim_quotient`, and the map has maximal rank iff
/// `dim_quotient == [dim_target - dim_source]_+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRow {
    pub degree: i64,
    pub dim_source: i64,
    pub dim_target: i64,
    pub dim_quotient: i64,
    pub rank: i64,
    pub maximal: bool,
    pub engine: Engine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    AllMaximal,
    FailuresAt(Vec<i64>),
    Inconclusive { undetermined: Vec<i64> },
}

/// Per-degree dimensions and maximal-rank flags for `x L^k` on `A = R/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub powers: PowerSequence,
    pub shift: i64,
    pub rows: Vec<RankRow>,
    pub verdict: Verdict,
}

impl RankReport {
    pub fn is_all_maximal(&self) -> bool {
        matches!(self.verdict, Verdict::AllMaximal)
    }
}

fn engine_dim(
    engine: Engine,
    powers: &PowerSequence,
    degree: i64,
    shift: Option<i64>,
    cfg: Option<&PrimeFieldConfig>,
) -> Result<Option<i64>, Error> {
    match engine {
        Engine::Combinatorial => Ok(quotient_dim(powers, degree, shift)?.value.exact()),
        Engine::Oracle => {
            let cfg = cfg.expect("oracle engine requires a configuration");
            oracle_quotient_dim(powers, degree, shift, cfg).map(Some)
        }
    }
}

fn build_row(degree: i64, source: i64, target: i64, quotient: i64, engine: Engine) -> RankRow {
    let rank = target - quotient;
    RankRow {
        degree,
        dim_source: source,
        dim_target: target,
        dim_quotient: quotient,
        rank,
        maximal: rank == source.min(target),
        engine,
    }
}

/// Scans every degree from `k` through one past the socle of `A`, filling
/// dimensions, ranks and maximal flags with the requested engine. Any
/// degree the combinatorial engine cannot settle makes the verdict
/// `Inconclusive` (the rows that were settled are kept).
pub fn rank_profile(
    powers: &PowerSequence,
    k: i64,
    engine: Engine,
    cfg: Option<&PrimeFieldConfig>,
) -> Result<RankReport, Error> {
    if k < 1 {
        return Err(Error::contract(format!("shift exponent {k} must be >= 1")));
    }
    if powers.r() < 3 {
        return Err(Error::contract(format!(
            "rank profile needs an artinian quotient (r >= 3), got r = {}",
            powers.r()
        )));
    }
    if matches!(engine, Engine::Oracle) && cfg.is_none() {
        return Err(Error::contract(
            "oracle engine requires a prime field config",
        ));
    }

    // Dimensions of A by degree, scanned until two consecutive zeros.
    let cap = powers.sum() + 2;
    let mut dims: Vec<Option<i64>> = Vec::new();
    let mut undetermined: Vec<i64> = Vec::new();
    for j in 0..=cap {
        let d = engine_dim(engine, powers, j, None, cfg)?;
        dims.push(d);
        if dims.len() >= 2 && dims[dims.len() - 1] == Some(0) && dims[dims.len() - 2] == Some(0) {
            break;
        }
        if j == cap {
            return Err(Error::Internal(format!(
                "dimensions of {:?} did not vanish by degree {cap}",
                powers.powers()
            )));
        }
    }
    let relevant_top = dims.iter().rposition(|d| *d != Some(0)).unwrap_or(0) as i64;

    let mut rows = Vec::new();
    for j in k..=(relevant_top + 1).max(k) {
        let target = dims.get(j as usize).copied().unwrap_or(Some(0));
        let source = dims.get((j - k) as usize).copied().unwrap_or(Some(0));
        let quotient = engine_dim(engine, powers, j, Some(k), cfg)?;
        match (source, target, quotient) {
            (Some(s), Some(t), Some(q)) => rows.push(build_row(j, s, t, q, engine)),
            _ => undetermined.push(j),
        }
    }

    let verdict = verdict_from(&rows, &undetermined);
    Ok(RankReport {
        powers: powers.clone(),
        shift: k,
        rows,
        verdict,
    })
}

fn verdict_from(rows: &[RankRow], undetermined: &[i64]) -> Verdict {
    if !undetermined.is_empty() {
        return Verdict::Inconclusive {
            undetermined: undetermined.to_vec(),
        };
    }
    let failures: Vec<i64> = rows
        .iter()
        .filter(|row| !row.maximal)
        .map(|row| row.degree)
        .collect();
    if failures.is_empty() {
        Verdict::AllMaximal
    } else {
        Verdict::FailuresAt(failures)
    }
}

/// Verifies that multiplication by the square of a general linear form has
/// maximal rank in every degree: the combinatorial engine first, with the
/// modular oracle re-running any undetermined degree when a configuration is
/// supplied. Rows keep the engine that settled them.
pub fn verify_theorem(
    powers: &PowerSequence,
    cfg: Option<&PrimeFieldConfig>,
) -> Result<RankReport, Error> {
    let mut report = rank_profile(powers, 2, Engine::Combinatorial, None)?;
    if let Verdict::Inconclusive { undetermined } = report.verdict.clone() {
        if let Some(cfg) = cfg {
            for j in undetermined {
                let source = oracle_quotient_dim(powers, j - 2, None, cfg)?;
                let target = oracle_quotient_dim(powers, j, None, cfg)?;
                let quotient = oracle_quotient_dim(powers, j, Some(2), cfg)?;
                report
                    .rows
                    .push(build_row(j, source, target, quotient, Engine::Oracle));
            }
            report.rows.sort_by_key(|row| row.degree);
            report.verdict = verdict_from(&report.rows, &[]);
        }
    }
    Ok(report)
}

/// Which endgame of the balanced case applies, by the gap
/// `a_1 + a_2 + a_3 - (2 peak + 5)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndgameKind {
    /// Gap >= 0: both dual systems are standard.
    StandardForm,
    /// Gap == -1: forces excess 1 or 2; value 0 once r >= 5.
    NearStandardByOne,
    /// Gap == -2: forces excess 1; value 0 once r >= 5.
    NearStandardByTwo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndgameCheck {
    pub kind: EndgameKind,
    pub gap: i64,
    pub expected: i64,
    pub holds: bool,
}

/// Instance evaluation of every step of the balanced-case argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseILedger {
    pub case: CaseData,
    pub r: usize,
    pub sum_of_squares: i64,
    /// `(r-1)(peak+1)^2 + excess (2 peak + 1)`; must dominate the square sum.
    pub square_sum_bound: i64,
    pub square_sum_within_bound: bool,
    /// `(r-1)(peak+1)^2 + excess^2`, the square sum of the extremal sequence.
    pub extremal_bound: i64,
    pub extremal_within_bound: bool,
    /// `dim [A/L^2 A]_{peak+1}` via the shifted quotient.
    pub critical_lhs: i64,
    /// `[dim A_{peak+1} - dim A_{peak-1}]_+` via plain quotients.
    pub critical_rhs: i64,
    pub main_equality: bool,
    /// `[2 excess + 1 - r]_+`, asserted for peak >= 1 only.
    pub predicted: Option<i64>,
    pub predicted_matches: Option<bool>,
    pub endgame: EndgameCheck,
}

impl CaseILedger {
    pub fn all_pass(&self) -> bool {
        self.square_sum_within_bound
            && self.extremal_within_bound
            && self.main_equality
            && self.predicted_matches.unwrap_or(true)
            && self.endgame.holds
    }
}

/// Evaluates the balanced-case proof obligations on one instance: the two
/// square-sum inequalities, the critical-degree equality computed by two
/// independent quotient routes, and the endgame identity selected by the
/// gap. Rejects split-case input.
pub fn case_i_proof_ledger(powers: &PowerSequence) -> Result<CaseILedger, Error> {
    let cd = compute_case_data(powers)?;
    if !matches!(cd.case, CaseKind::CaseI) {
        return Err(Error::contract(
            "proof ledger applies to the balanced case only",
        ));
    }
    let r = powers.r();
    let r_i = r as i64;
    let peak = cd.peak;
    let excess = cd.excess;

    let sum_of_squares: i64 = powers.powers().iter().map(|&a| a * a).sum();
    let square_sum_bound = (r_i - 1) * (peak + 1) * (peak + 1) + excess * (2 * peak + 1);
    let extremal_bound = (r_i - 1) * (peak + 1) * (peak + 1) + excess * excess;

    let critical_lhs = quotient_dim_exact(powers, peak + 1, Some(2))?;
    let dim_above = quotient_dim_exact(powers, peak + 1, None)?;
    let dim_below = if peak >= 1 {
        quotient_dim_exact(powers, peak - 1, None)?
    } else {
        0
    };
    let critical_rhs = pos_part(dim_above - dim_below);
    let main_equality = critical_lhs == critical_rhs;

    let (predicted, predicted_matches) = if peak >= 1 {
        let value = pos_part(2 * excess + 1 - r_i);
        (
            Some(value),
            Some(critical_lhs == value && critical_rhs == value),
        )
    } else {
        (None, None)
    };

    let a = powers.powers();
    let gap = a[0] + a[1] + a[2] - (2 * peak + 5);
    let expected = pos_part(2 * excess + 1 - r_i);
    let (kind, pattern_ok) = if gap >= 0 {
        (EndgameKind::StandardForm, true)
    } else if gap == -1 {
        (EndgameKind::NearStandardByOne, excess == 1 || excess == 2)
    } else {
        (EndgameKind::NearStandardByTwo, gap == -2 && excess == 1)
    };
    // Once r >= 5 the near-standard endgames collapse to zero.
    let zero_when_due = gap >= 0 || r < 5 || expected == 0;
    let endgame = EndgameCheck {
        kind,
        gap,
        expected,
        holds: pattern_ok && zero_when_due && critical_lhs == expected && critical_rhs == expected,
    };

    Ok(CaseILedger {
        case: cd,
        r,
        sum_of_squares,
        square_sum_bound,
        square_sum_within_bound: sum_of_squares <= square_sum_bound,
        extremal_bound,
        extremal_within_bound: sum_of_squares <= extremal_bound,
        critical_lhs,
        critical_rhs,
        main_equality,
        predicted,
        predicted_matches,
        endgame,
    })
}

/// Exhaustive check of the extremal-sequence claim for small `r`: every
/// nondecreasing sequence with entries in `[1, peak+1]`, total
/// `(r-1)(peak+1) + excess` and not all equal has square sum at most
/// `(r-1)(peak+1)^2 + excess^2`.
pub fn verify_extremal_claim(r: usize, peak: i64, excess: i64) -> bool {
    let total = (r as i64 - 1) * (peak + 1) + excess;
    let bound = (r as i64 - 1) * (peak + 1) * (peak + 1) + excess * excess;
    let mut seq = Vec::with_capacity(r);
    fn search(seq: &mut Vec<i64>, r: usize, lo: i64, hi: i64, left: i64, bound: i64) -> bool {
        if seq.len() == r {
            if left != 0 || seq.iter().all(|&x| x == seq[0]) {
                return true;
            }
            return seq.iter().map(|&x| x * x).sum::<i64>() <= bound;
        }
        let remaining = (r - seq.len()) as i64;
        for next in lo..=hi.min(left) {
            // Entries are nondecreasing, so what is left must still fit.
            if left - next > (remaining - 1) * hi || left - next < (remaining - 1) * next {
                continue;
            }
            seq.push(next);
            let ok = search(seq, r, next, hi, left - next, bound);
            seq.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    search(&mut seq, r, 1, peak + 1, total, bound)
}

/// Degree labels of the split-case analysis of the truncated sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseIiLabel {
    /// Below the new exponent the truncation changes nothing.
    Isomorphic,
    /// Above it the smaller quotient already surjects.
    SurjectiveFromB,
    /// At the new exponent, with room above the truncated peak: surjective.
    CriticalSurjective,
    /// At the new exponent, exactly one past the truncated peak: injective
    /// or surjective, either way maximal.
    CriticalInjectivityBranch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseIiRow {
    pub degree: i64,
    pub label: CaseIiLabel,
    pub holds: bool,
}

/// Split-case verification: per-degree labels for the quotient by the first
/// `split_index + 1` generators, checked against rank profiles of the
/// truncated and full sequences, plus the tail condition that every longer
/// prefix keeps its Hilbert peak at or below the truncated peak.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseIiReport {
    pub split_index: usize,
    pub truncated_peak: i64,
    /// The first exponent violating the prefix bound, `a_{m+1}`.
    pub threshold: i64,
    pub rows: Vec<CaseIiRow>,
    pub truncated_report: RankReport,
    pub full_report: RankReport,
    /// Hilbert peaks of the quotients by each prefix past the split.
    pub tail_peaks: Vec<(usize, i64)>,
    pub tail_ok: bool,
}

impl CaseIiReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|row| row.holds)
            && self.truncated_report.is_all_maximal()
            && self.full_report.is_all_maximal()
            && self.tail_ok
    }
}

fn peak_index(hf: &[i64]) -> i64 {
    let max = hf.iter().copied().max().unwrap_or(0);
    hf.iter().position(|&d| d == max).unwrap_or(0) as i64
}

/// Runs the split-case analysis. Rejects balanced input.
pub fn case_ii_analysis(powers: &PowerSequence) -> Result<CaseIiReport, Error> {
    let cd = compute_case_data(powers)?;
    let CaseKind::CaseII {
        split_index,
        truncated_peak,
    } = cd.case
    else {
        return Err(Error::contract(
            "split-case analysis applies to the split case only",
        ));
    };
    let a = powers.powers();
    let threshold = a[split_index];
    debug_assert!(threshold > truncated_peak);

    let truncated = powers.prefix(split_index + 1)?;
    let shorter = powers.prefix(split_index)?;
    let truncated_report = rank_profile(&truncated, 2, Engine::Combinatorial, None)?;
    let full_report = rank_profile(powers, 2, Engine::Combinatorial, None)?;

    let mut rows = Vec::new();
    for row in &truncated_report.rows {
        let j = row.degree;
        let (label, holds) = if j < threshold {
            let b_source = quotient_dim_exact(&shorter, j - 2, None)?;
            let b_target = quotient_dim_exact(&shorter, j, None)?;
            (
                CaseIiLabel::Isomorphic,
                b_source == row.dim_source && b_target == row.dim_target && row.maximal,
            )
        } else if j > threshold {
            (
                CaseIiLabel::SurjectiveFromB,
                row.dim_quotient == 0 && row.maximal,
            )
        } else if threshold >= truncated_peak + 2 {
            (
                CaseIiLabel::CriticalSurjective,
                row.dim_quotient == 0 && row.maximal,
            )
        } else {
            (CaseIiLabel::CriticalInjectivityBranch, row.maximal)
        };
        rows.push(CaseIiRow {
            degree: j,
            label,
            holds,
        });
    }

    let mut tail_peaks = Vec::new();
    for t in (split_index + 1)..=powers.r() {
        let hf = hilbert_function(&powers.prefix(t)?)?;
        tail_peaks.push((t, peak_index(&hf)));
    }
    let tail_ok = tail_peaks.iter().all(|&(_, peak)| peak <= truncated_peak);

    Ok(CaseIiReport {
        split_index,
        truncated_peak,
        threshold,
        rows,
        truncated_report,
        full_report,
        tail_peaks,
        tail_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(v: &[i64]) -> PowerSequence {
        PowerSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn case_data_mixed_sequence() {
        let cd = compute_case_data(&ps(&[5, 6, 6, 6, 6, 6])).unwrap();
        assert_eq!(cd.peak, 5);
        assert_eq!(cd.excess, 5);
        assert_eq!(cd.count_at_peak, 1);
        assert_eq!(cd.count_above_peak, 5);
        assert_eq!(cd.case, CaseKind::CaseI);
    }

    #[test]
    fn case_data_split_sequences() {
        let cd = compute_case_data(&ps(&[2, 2, 2, 2, 3])).unwrap();
        assert_eq!(
            cd.case,
            CaseKind::CaseII {
                split_index: 3,
                truncated_peak: 1
            }
        );
        let cd = compute_case_data(&ps(&[4, 4, 4, 4, 5])).unwrap();
        assert_eq!(
            cd.case,
            CaseKind::CaseII {
                split_index: 4,
                truncated_peak: 4
            }
        );
        // All powers one: the m = 2 bound already fails (1 > 0), so the
        // sequence is split, with excess 1 by the defining identity.
        let cd = compute_case_data(&ps(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(cd.peak, 0);
        assert_eq!(cd.excess, 1);
        assert_eq!(cd.count_at_peak, 0);
        assert_eq!(cd.count_above_peak, 5);
        assert_eq!(
            cd.case,
            CaseKind::CaseII {
                split_index: 2,
                truncated_peak: 0
            }
        );
        assert!(compute_case_data(&ps(&[7])).is_err());
    }

    #[test]
    fn predicted_dim_formula() {
        let cd = compute_case_data(&ps(&[5, 6, 6, 6, 6, 6])).unwrap();
        assert_eq!(predicted_critical_dim(&cd, 6).unwrap(), 5);
        let mk = |excess| CaseData {
            peak: 3,
            excess,
            count_at_peak: 0,
            count_above_peak: 0,
            case: CaseKind::CaseI,
        };
        assert_eq!(predicted_critical_dim(&mk(1), 5).unwrap(), 0);
        assert_eq!(predicted_critical_dim(&mk(2), 5).unwrap(), 0);
        let split = CaseData {
            case: CaseKind::CaseII {
                split_index: 2,
                truncated_peak: 1,
            },
            ..mk(1)
        };
        assert!(predicted_critical_dim(&split, 5).is_err());
    }

    #[test]
    fn line_multiplicities() {
        assert_eq!(
            line_base_multiplicities(&ps(&[5, 6, 6, 6, 6, 6]), 5),
            vec![1, 0, 0, 0, 0, 0]
        );
        assert_eq!(line_base_multiplicities(&ps(&[2, 2]), 3), vec![2, 2]);
        assert_eq!(line_base_multiplicities(&ps(&[9]), 5), vec![0]);
    }

    #[test]
    fn rank_profile_rows() {
        let report =
            rank_profile(&ps(&[5, 6, 6, 6, 6, 6]), 2, Engine::Combinatorial, None).unwrap();
        assert!(report.is_all_maximal());
        let row = report.rows.iter().find(|r| r.degree == 6).unwrap();
        assert_eq!(
            (row.dim_source, row.dim_target, row.dim_quotient, row.rank),
            (15, 20, 5, 15)
        );
        assert!(row.maximal);

        let report = rank_profile(&ps(&[3, 3, 3]), 2, Engine::Combinatorial, None).unwrap();
        assert!(report.is_all_maximal());
        let row = report.rows.iter().find(|r| r.degree == 3).unwrap();
        assert_eq!(
            (row.dim_source, row.dim_target, row.dim_quotient, row.rank),
            (3, 7, 4, 3)
        );

        let report = rank_profile(&ps(&[2, 2, 2, 2, 2]), 1, Engine::Combinatorial, None).unwrap();
        assert!(report.is_all_maximal());

        assert!(rank_profile(&ps(&[3, 3]), 2, Engine::Combinatorial, None).is_err());
        assert!(rank_profile(&ps(&[3, 3, 3]), 0, Engine::Combinatorial, None).is_err());
        assert!(rank_profile(&ps(&[3, 3, 3]), 2, Engine::Oracle, None).is_err());
    }

    #[test]
    fn cube_multiplication_can_fail_and_is_reported() {
        // Maximal rank is a square phenomenon: for the cube this instance
        // genuinely fails in degree 6 (rank 9 between two 10-dimensional
        // pieces) and the profile must say so.
        let report =
            rank_profile(&ps(&[5, 5, 5, 5, 5, 5]), 3, Engine::Combinatorial, None).unwrap();
        assert_eq!(report.verdict, Verdict::FailuresAt(vec![6]));
        let row = report.rows.iter().find(|r| r.degree == 6).unwrap();
        assert_eq!(
            (row.dim_source, row.dim_target, row.dim_quotient, row.rank),
            (10, 10, 1, 9)
        );
        let oracle_report = rank_profile(
            &ps(&[5, 5, 5, 5, 5, 5]),
            3,
            Engine::Oracle,
            Some(&PrimeFieldConfig::with_seed(5)),
        )
        .unwrap();
        assert_eq!(oracle_report.verdict, Verdict::FailuresAt(vec![6]));
    }

    #[test]
    fn rank_rows_satisfy_exact_sequence_identity() {
        for powers in [ps(&[2, 3, 4]), ps(&[2, 2, 3, 5]), ps(&[5, 6, 6, 6, 6, 6])] {
            for k in 1..=3 {
                let report = rank_profile(&powers, k, Engine::Combinatorial, None).unwrap();
                for row in &report.rows {
                    assert_eq!(row.rank, row.dim_target - row.dim_quotient);
                    assert_eq!(
                        row.maximal,
                        row.dim_quotient == pos_part(row.dim_target - row.dim_source)
                    );
                }
            }
        }
    }

    #[test]
    fn theorem_fixtures() {
        for v in [
            vec![5, 6, 6, 6, 6, 6],
            vec![2, 2, 2, 2, 3],
            vec![3, 3, 3, 3],
            vec![1, 1, 1, 1, 1],
        ] {
            let report = verify_theorem(&ps(&v), None).unwrap();
            assert!(report.is_all_maximal(), "{v:?}: {:?}", report.verdict);
        }
    }

    #[test]
    fn ledger_mixed_sequence() {
        let ledger = case_i_proof_ledger(&ps(&[5, 6, 6, 6, 6, 6])).unwrap();
        assert_eq!(ledger.sum_of_squares, 205);
        assert_eq!(ledger.square_sum_bound, 235);
        assert_eq!(ledger.extremal_bound, 205);
        assert_eq!((ledger.critical_lhs, ledger.critical_rhs), (5, 5));
        assert_eq!(ledger.predicted, Some(5));
        assert_eq!(ledger.endgame.kind, EndgameKind::StandardForm);
        assert_eq!(ledger.endgame.gap, 2);
        assert!(ledger.all_pass());
    }

    #[test]
    fn ledger_rejects_split_case() {
        assert!(case_i_proof_ledger(&ps(&[4, 4, 4, 4, 5])).is_err());
        assert!(case_i_proof_ledger(&ps(&[1, 1, 1, 1, 1])).is_err());
    }

    #[test]
    fn ledger_near_standard_endgames() {
        // Uniform fives: gap 0, excess 1, standard form with value 0.
        let ledger = case_i_proof_ledger(&ps(&[5, 5, 5, 5, 5])).unwrap();
        assert_eq!(ledger.endgame.kind, EndgameKind::StandardForm);
        assert_eq!(ledger.endgame.expected, 0);
        assert!(ledger.all_pass());

        // A three-generator instance with gap -1 and excess 2: the general
        // formula gives 2, not the r >= 5 collapse to zero.
        let ledger = case_i_proof_ledger(&ps(&[2, 4, 4])).unwrap();
        assert_eq!(ledger.endgame.kind, EndgameKind::NearStandardByOne);
        assert_eq!(ledger.endgame.expected, 2);
        assert_eq!(ledger.critical_lhs, 2);
        assert!(ledger.all_pass());
    }

    #[test]
    fn extremal_claim_small_instances() {
        for r in 3..=6 {
            for peak in 1..=4i64 {
                for excess in 1..=(r as i64 - 1) {
                    assert!(
                        verify_extremal_claim(r, peak, excess),
                        "extremal claim fails for r = {r}, peak = {peak}, excess = {excess}"
                    );
                }
            }
        }
    }

    #[test]
    fn split_analysis_fixtures() {
        let report = case_ii_analysis(&ps(&[2, 2, 2, 2, 3])).unwrap();
        assert_eq!(report.split_index, 3);
        assert_eq!(report.truncated_peak, 1);
        assert_eq!(report.threshold, 2);
        let critical = report.rows.iter().find(|r| r.degree == 2).unwrap();
        assert_eq!(critical.label, CaseIiLabel::CriticalInjectivityBranch);
        assert!(report.all_hold(), "{report:?}");

        let report = case_ii_analysis(&ps(&[4, 4, 4, 4, 5])).unwrap();
        assert_eq!(report.split_index, 4);
        assert_eq!(report.truncated_peak, 4);
        assert_eq!(report.threshold, 5);
        let critical = report.rows.iter().find(|r| r.degree == 5).unwrap();
        assert_eq!(critical.label, CaseIiLabel::CriticalInjectivityBranch);
        assert!(report.all_hold(), "{report:?}");

        // A threshold two past the truncated peak takes the surjective route,
        // and the degrees below it are isomorphic to the shorter quotient.
        let report = case_ii_analysis(&ps(&[1, 2, 4, 4, 4])).unwrap();
        assert_eq!(
            (report.split_index, report.truncated_peak, report.threshold),
            (2, 1, 4)
        );
        let critical = report.rows.iter().find(|r| r.degree == 4).unwrap();
        assert_eq!(critical.label, CaseIiLabel::CriticalSurjective);
        assert!(report
            .rows
            .iter()
            .filter(|r| r.degree < 4)
            .all(|r| r.label == CaseIiLabel::Isomorphic));
        assert!(report.all_hold(), "{report:?}");

        assert!(case_ii_analysis(&ps(&[5, 6, 6, 6, 6, 6])).is_err());
    }
}
