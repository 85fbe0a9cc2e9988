//! Randomized verification harness: seeded generators, property suites,
//! the contractive counterexample search and JSON reports.

pub mod config;
pub mod eval;
pub mod exec;
pub mod generate;
pub mod report;
pub mod rng;
pub mod search;
pub mod suites;

use std::time::Instant;

pub use config::{GeneratorSpec, Shape, Structure, TrialConfig};
pub use exec::Execution;
pub use report::{Finding, SuiteReport, TrialRecord};
pub use suites::{default_tolerance, run_trial, suite_names, TrialOutcome};

use crate::error::{Error, Result};
use rng::trial_seed;

/// Attempts per trial before a generation failure becomes fatal.
pub const MAX_ATTEMPTS: u32 = 32;

/// Errors that mean the generated instance missed a hypothesis, so the trial
/// is redrawn. Non-convergence, bad configuration and shape bugs are not.
fn is_regenerable(e: &Error) -> bool {
    !matches!(e, Error::NonConvergence { .. } | Error::Config(_) | Error::Dimension(_))
}

/// Runs `trial` for `index` with fresh attempt seeds until one succeeds.
pub(crate) fn with_retries<T>(
    cfg: &TrialConfig,
    index: u64,
    trial: impl Fn(u64) -> Result<T>,
) -> Result<(u64, u32, T)> {
    let mut last = None;
    for attempt in 0..MAX_ATTEMPTS {
        let seed = trial_seed(cfg.seed, index, attempt);
        match trial(seed) {
            Ok(v) => return Ok((seed, attempt, v)),
            Err(e) if is_regenerable(&e) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Precondition(format!(
        "trial {index} of `{}`: no valid instance in {MAX_ATTEMPTS} attempts (last: {})",
        cfg.suite,
        last.map(|e| e.to_string()).unwrap_or_default()
    )))
}

/// First error by trial index, otherwise all records in index order.
pub(crate) fn collect_records(results: Vec<Result<TrialRecord>>) -> Result<Vec<TrialRecord>> {
    results.into_iter().collect()
}

/// Executes `cfg.trials` trials of a registered suite.
pub fn run_suite(cfg: &TrialConfig, execution: Execution) -> Result<SuiteReport> {
    cfg.validate()?;
    default_tolerance(&cfg.suite)?;
    let start = Instant::now();
    let results = exec::map_indexed(cfg.trials, execution, |index| {
        let (seed, failed, out) = with_retries(cfg, index, |s| run_trial(cfg, s))?;
        Ok(TrialRecord {
            index,
            trial_seed: seed,
            failed_attempts: failed,
            gap: out.gap,
            scale: out.scale,
            holds: out.holds,
            dim: out.dim,
            family_size: out.family_size,
            diagnostics: out.diagnostics,
            counters: Vec::new(),
            second_opinion: None,
            function: None,
        })
    });
    let records = collect_records(results)?;
    Ok(report::fold(cfg, "check", &records, start.elapsed().as_secs_f64()))
}

/// Re-runs the single trial behind `trial_seed` (e.g. a report's
/// `worst_case_seed`) under the same config.
pub fn replay(cfg: &TrialConfig, trial_seed: u64) -> Result<TrialOutcome> {
    cfg.validate()?;
    run_trial(cfg, trial_seed)
}
