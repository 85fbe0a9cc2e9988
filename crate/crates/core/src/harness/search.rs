//! Counterexample search for the perspective sum inequality on contractive
//! families, where the expansivity hypothesis fails.
//!
//! A trial is a candidate when the residual `P_f(Σ A_i, Σ B_i) - Σ P_f(A_i, B_i)`
//! has minimum eigenvalue below `-tolerance * scale`. It becomes a finding
//! only if both eigensolvers put that eigenvalue below
//! [`CONFIRM_THRESHOLD`]. The search makes no claim either way.

use std::time::Instant;

use rand::Rng;

use super::config::{Shape, Structure, TrialConfig};
use super::exec::{map_indexed, Execution};
use super::generate::random_contractive_families;
use super::report::{fold, SuiteReport, TrialRecord};
use super::rng::rng_from_seed;
use super::suites::draw_dims;
use super::{collect_records, with_retries};
use crate::error::{Error, Result};
use crate::loewner_ineq::{theorem6_sides, OperatorFunctionSpec};
use crate::matfun::{second_opinion_min_eigenvalue, LoewnerVerdict};

/// Absolute bound both eigensolvers must beat before a candidate is reported.
pub const CONFIRM_THRESHOLD: f64 = -1e-6;

pub const SEARCH_MODES: &[&str] = &["contractive"];

#[derive(Debug, Clone, PartialEq)]
pub struct SearchTrial {
    pub function: String,
    pub dim: usize,
    pub family_size: usize,
    /// Displayed form `Σ P_f(A_i, B_i) <= P_f(A, B)`.
    pub verdict: LoewnerVerdict,
    pub second_opinion: f64,
    pub candidate: bool,
    pub confirmed: bool,
    /// `Σ f(B_i) <= P_f(A, B)`, for `f(0) >= 0`.
    pub image_sum_verdict: Option<LoewnerVerdict>,
    pub identity_discrepancy: f64,
}

fn search_function(index: u32) -> Result<OperatorFunctionSpec> {
    Ok(match index {
        0 => OperatorFunctionSpec::power(0.5)?,
        1 => OperatorFunctionSpec::shifted_log(1.0)?,
        _ => OperatorFunctionSpec::log(),
    })
}

pub fn search_trial(cfg: &TrialConfig, trial_seed: u64) -> Result<SearchTrial> {
    let mut rng = rng_from_seed(trial_seed);
    let rng = &mut rng;
    let (n, m) = draw_dims(rng, cfg);
    let f = search_function(rng.random_range(0..3))?;
    let commuting = cfg.generator.structure == Structure::Commuting;
    let (a, b) = random_contractive_families(rng, n, m, &cfg.generator, commuting);
    let sides = theorem6_sides(&f, &a, &b)?;
    let outcome = sides.outcome(cfg.tolerance)?;
    let residual = sides.rhs.sub(&sides.perspective_sum)?;
    let second = second_opinion_min_eigenvalue(&residual);
    let verdict = outcome.verdict;
    let candidate = !verdict.holds;
    Ok(SearchTrial {
        function: f.name(),
        dim: n,
        family_size: m,
        verdict,
        second_opinion: second,
        candidate,
        confirmed: candidate
            && verdict.residual_min_eigenvalue < CONFIRM_THRESHOLD
            && second < CONFIRM_THRESHOLD,
        image_sum_verdict: outcome.image_sum_verdict,
        identity_discrepancy: outcome.identity_discrepancy,
    })
}

/// Runs the search. `violations` counts confirmed findings only; unconfirmed
/// candidates and failures of the image-sum form appear under `counters`.
pub fn counterexample_search(mode: &str, cfg: &TrialConfig, execution: Execution) -> Result<SuiteReport> {
    if !SEARCH_MODES.contains(&mode) {
        return Err(Error::Config(format!("unknown search mode `{mode}`")));
    }
    cfg.validate()?;
    if cfg.generator.shape != Shape::Contractive {
        return Err(Error::Config("contractive search needs the contractive generator".into()));
    }
    let start = Instant::now();
    let results = map_indexed(cfg.trials, execution, |index| {
        let (seed, failed, t) = with_retries(cfg, index, |s| search_trial(cfg, s))?;
        let image_fail = t.image_sum_verdict.is_some_and(|v| !v.holds);
        Ok(TrialRecord {
            index,
            trial_seed: seed,
            failed_attempts: failed,
            gap: t.verdict.residual_min_eigenvalue,
            scale: t.verdict.scale,
            holds: !t.confirmed,
            dim: t.dim,
            family_size: t.family_size,
            diagnostics: vec![("identity_discrepancy", t.identity_discrepancy)],
            counters: vec![
                ("candidates", t.candidate as u64),
                ("unconfirmed_candidates", (t.candidate && !t.confirmed) as u64),
                ("image_sum_form_failures", image_fail as u64),
            ],
            second_opinion: Some(t.second_opinion),
            function: Some(t.function),
        })
    });
    let records = collect_records(results)?;
    Ok(fold(cfg, mode, &records, start.elapsed().as_secs_f64()))
}

/// Config for the contractive search with the harness defaults.
pub fn contractive_config(trials: u64, seed: u64) -> TrialConfig {
    let mut cfg = TrialConfig::new("theorem6_contractive", trials, seed);
    cfg.generator.shape = Shape::Contractive;
    cfg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_member_residual_is_zero() {
        let cfg = contractive_config(1, 0).family_size(1).exact_dims(true);
        for s in 0..20 {
            let t = search_trial(&cfg, s).unwrap();
            assert!(t.verdict.residual_min_eigenvalue.abs() <= 1e-10 * t.verdict.scale);
            assert!(!t.candidate);
        }
    }

    #[test]
    fn commuting_families_never_confirm() {
        let mut cfg = contractive_config(300, 4).dim(3);
        cfg.generator.structure = Structure::Commuting;
        let r = counterexample_search("contractive", &cfg, Execution::Parallel).unwrap();
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn needs_contractive_generator() {
        let cfg = TrialConfig::new("theorem6_contractive", 1, 0);
        assert!(matches!(
            counterexample_search("contractive", &cfg, Execution::Sequential),
            Err(Error::Config(_))
        ));
        assert!(counterexample_search("expansive", &contractive_config(1, 0), Execution::Sequential).is_err());
    }
}
