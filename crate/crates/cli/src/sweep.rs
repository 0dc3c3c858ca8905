//! Seeded sweep campaigns: sample exponent sequences, verify each with both
//! engines, and persist one JSON record per line. Sampling happens up front
//! from a single stream, so the sampled sequences depend only on
//! (seed, ranges, count) and never on worker parallelism.

use std::io::Write;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use lefschetz_core::lefschetz::{CaseKind, Engine};
use lefschetz_core::{
    compute_case_data, rank_profile, verify_theorem, Error, PowerSequence, PrimeFieldConfig,
    Verdict,
};

use crate::reports_agree;

#[derive(Clone, Copy, Debug)]
pub struct SweepPlan {
    pub r_range: (i64, i64),
    pub a_range: (i64, i64),
    pub count: usize,
    pub seed: u64,
    pub prime: u64,
    pub trials: u32,
}

impl SweepPlan {
    pub fn validate(&self) -> Result<(), String> {
        if self.count < 1 {
            return Err("count must be at least 1".into());
        }
        let (r_lo, r_hi) = self.r_range;
        if r_lo < 3 || r_hi < r_lo {
            return Err(format!(
                "invalid r range {r_lo}..{r_hi} (need 3 <= lo <= hi)"
            ));
        }
        let (a_lo, a_hi) = self.a_range;
        if a_lo < 1 || a_hi < a_lo {
            return Err(format!(
                "invalid a range {a_lo}..{a_hi} (need 1 <= lo <= hi)"
            ));
        }
        Ok(())
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// The sampled sequences with their per-record oracle seeds. Uniform over
/// the ranges, drawn sequentially from one seeded stream.
pub fn sample_sequences(plan: &SweepPlan) -> Vec<(PowerSequence, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    (0..plan.count)
        .map(|index| {
            let r = rng.random_range(plan.r_range.0..=plan.r_range.1);
            let powers: Vec<i64> = (0..r)
                .map(|_| rng.random_range(plan.a_range.0..=plan.a_range.1))
                .collect();
            let record_seed = splitmix64(plan.seed.wrapping_add(index as u64));
            (
                PowerSequence::new(powers).expect("sampled entries are positive"),
                record_seed,
            )
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "case_i")]
    CaseI,
    #[serde(rename = "case_ii")]
    CaseII,
}

/// One line of a campaign file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepRecord {
    pub powers: Vec<i64>,
    pub case: CaseTag,
    pub peak: i64,
    pub excess: i64,
    pub verdict: Verdict,
    pub engines_agree: bool,
    pub millis: u64,
    pub seed: u64,
    pub prime: u64,
}

/// Verifies one sequence with both engines and reports what happened.
pub fn run_record(
    powers: &PowerSequence,
    record_seed: u64,
    prime: u64,
    trials: u32,
) -> Result<SweepRecord, Error> {
    let start = Instant::now();
    let cfg = PrimeFieldConfig {
        prime,
        trials,
        seed: record_seed,
    };
    let case_data = compute_case_data(powers)?;
    let combinatorial = verify_theorem(powers, Some(&cfg))?;
    let oracle = rank_profile(powers, 2, Engine::Oracle, Some(&cfg))?;
    let engines_agree = reports_agree(&combinatorial, &oracle);
    let verdict = match (&combinatorial.verdict, &oracle.verdict) {
        // Surface a failure seen by either engine.
        (Verdict::AllMaximal, Verdict::FailuresAt(d)) => Verdict::FailuresAt(d.clone()),
        (v, _) => v.clone(),
    };
    Ok(SweepRecord {
        powers: powers.powers().to_vec(),
        case: match case_data.case {
            CaseKind::CaseI => CaseTag::CaseI,
            CaseKind::CaseII { .. } => CaseTag::CaseII,
        },
        peak: case_data.peak,
        excess: case_data.excess,
        verdict,
        engines_agree,
        millis: start.elapsed().as_millis() as u64,
        seed: record_seed,
        prime,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub total: usize,
    pub case_i: usize,
    pub case_ii: usize,
    pub failures: usize,
    pub disagreements: usize,
}

impl SweepSummary {
    pub fn absorb(&mut self, record: &SweepRecord) {
        self.total += 1;
        match record.case {
            CaseTag::CaseI => self.case_i += 1,
            CaseTag::CaseII => self.case_ii += 1,
        }
        if !matches!(record.verdict, Verdict::AllMaximal) {
            self.failures += 1;
        }
        if !record.engines_agree {
            self.disagreements += 1;
        }
    }

    pub fn clean(&self) -> bool {
        self.failures == 0 && self.disagreements == 0
    }
}

/// Runs the whole campaign, streaming one JSON line per record to `out` in
/// sample order (whole chunks at a time, so an interrupted file is a valid
/// JSONL prefix). `jobs` bounds the worker threads; `None` uses all cores.
pub fn run_sweep(
    plan: &SweepPlan,
    jobs: Option<usize>,
    out: &mut dyn Write,
) -> Result<SweepSummary, Error> {
    let samples = sample_sequences(plan);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let mut summary = SweepSummary::default();
    for chunk in samples.chunks(16) {
        let records: Vec<SweepRecord> = pool.install(|| {
            chunk
                .par_iter()
                .map(|(powers, record_seed)| {
                    run_record(powers, *record_seed, plan.prime, plan.trials)
                })
                .collect::<Result<_, _>>()
        })?;
        for record in &records {
            summary.absorb(record);
            let line = serde_json::to_string(record)
                .map_err(|e| Error::Internal(format!("serialize record: {e}")))?;
            writeln!(out, "{line}").map_err(|e| Error::Internal(format!("write: {e}")))?;
        }
        out.flush()
            .map_err(|e| Error::Internal(format!("flush: {e}")))?;
    }
    Ok(summary)
}
