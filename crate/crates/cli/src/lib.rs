//! Library half of the `lefschetz` command-line tool: engine comparison,
//! oracle fallbacks and the sweep campaign machinery, shared between the
//! binary and the test suites.

pub mod sweep;

use serde_json::json;

use lefschetz_core::lefschetz::Engine;
use lefschetz_core::{
    oracle_quotient_dim, quotient_dim, rank_profile, Error, PowerSequence, PrimeFieldConfig,
    RankReport, RankRow, Verdict,
};

/// Parses an inclusive integer range written `lo..hi`.
pub fn parse_range(s: &str) -> Option<(i64, i64)> {
    let (lo, hi) = s.split_once("..")?;
    let lo = lo.trim().parse().ok()?;
    let hi = hi.trim().parse().ok()?;
    (lo <= hi).then_some((lo, hi))
}

/// Hilbert function computed degree by degree, falling back to the oracle
/// for any degree the reduction engine leaves undetermined.
pub fn hilbert_function_with_oracle(
    powers: &PowerSequence,
    cfg: &PrimeFieldConfig,
) -> Result<Vec<i64>, Error> {
    if powers.r() < 3 {
        return Err(Error::NonArtinian { r: powers.r() });
    }
    let cap = powers.sum();
    let mut hf = Vec::new();
    for j in 0..=cap {
        let dim = match quotient_dim(powers, j, None)?.value.exact() {
            Some(d) => d,
            None => oracle_quotient_dim(powers, j, None, cfg)?,
        };
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

/// Both engines on the same profile, with a row-by-row agreement flag.
pub struct EngineComparison {
    pub combinatorial: RankReport,
    pub oracle: Option<RankReport>,
    pub agree: Option<bool>,
}

pub fn rows_match(a: &RankRow, b: &RankRow) -> bool {
    (a.degree, a.dim_source, a.dim_target, a.dim_quotient)
        == (b.degree, b.dim_source, b.dim_target, b.dim_quotient)
}

pub fn reports_agree(a: &RankReport, b: &RankReport) -> bool {
    a.verdict == b.verdict
        && a.rows.len() == b.rows.len()
        && a.rows.iter().zip(&b.rows).all(|(x, y)| rows_match(x, y))
}

/// Runs the combinatorial profile for `x L^shift` and, when requested, the
/// oracle profile alongside it.
pub fn compare_engines(
    powers: &PowerSequence,
    shift: i64,
    oracle_cfg: Option<&PrimeFieldConfig>,
) -> Result<EngineComparison, Error> {
    let combinatorial = rank_profile(powers, shift, Engine::Combinatorial, None)?;
    let oracle = match oracle_cfg {
        Some(cfg) => Some(rank_profile(powers, shift, Engine::Oracle, Some(cfg))?),
        None => None,
    };
    let agree = oracle.as_ref().map(|o| reports_agree(&combinatorial, o));
    Ok(EngineComparison {
        combinatorial,
        oracle,
        agree,
    })
}

/// The schema-stable JSON envelope of a verification run:
/// `{powers, shift, rows, verdict, engine, prime, seed}`.
pub fn report_json(report: &RankReport, engine: &str, prime: u64, seed: u64) -> serde_json::Value {
    json!({
        "powers": report.powers,
        "shift": report.shift,
        "rows": report.rows,
        "verdict": report.verdict,
        "engine": engine,
        "prime": prime,
        "seed": seed,
    })
}

/// Exit code for a verdict: 0 verified, 1 counterexample, 3 inconclusive.
pub fn verdict_exit_code(verdict: &Verdict) -> u8 {
    match verdict {
        Verdict::AllMaximal => 0,
        Verdict::FailuresAt(_) => 1,
        Verdict::Inconclusive { .. } => 3,
    }
}
