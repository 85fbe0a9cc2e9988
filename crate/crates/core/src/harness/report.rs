//! Report schema and the sequential fold that builds it.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::TrialConfig;
use crate::error::{Error, Result};

/// At most this many findings are listed; `findings_total` has the full count.
pub const MAX_FINDINGS: usize = 100;

/// One failing trial (check mode) or confirmed candidate (search mode).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub trial: u64,
    pub trial_seed: u64,
    pub dim: usize,
    pub family_size: usize,
    pub gap: f64,
    pub margin: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_opinion_min_eigenvalue: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub mode: String,
    pub config: TrialConfig,
    pub trials: u64,
    pub violations: u64,
    /// Instances rejected by a precondition check and regenerated.
    pub generation_failures: u64,
    /// Gap of the trial with the smallest `gap / scale`.
    pub worst_gap: f64,
    pub worst_margin: f64,
    pub worst_case_trial: u64,
    /// Seed that reproduces the worst trial through `replay`.
    pub worst_case_seed: u64,
    /// Per-key maximum over all trials.
    pub diagnostics: BTreeMap<String, f64>,
    /// Per-key totals over all trials.
    pub counters: BTreeMap<String, u64>,
    pub findings_total: u64,
    pub findings: Vec<Finding>,
    pub wall_time_s: f64,
}

/// Everything the fold needs from one accepted trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub index: u64,
    pub trial_seed: u64,
    pub failed_attempts: u32,
    pub gap: f64,
    pub scale: f64,
    pub holds: bool,
    pub dim: usize,
    pub family_size: usize,
    pub diagnostics: Vec<(&'static str, f64)>,
    pub counters: Vec<(&'static str, u64)>,
    pub second_opinion: Option<f64>,
    pub function: Option<String>,
}

impl TrialRecord {
    pub fn margin(&self) -> f64 {
        self.gap / self.scale
    }

    fn finding(&self) -> Finding {
        Finding {
            trial: self.index,
            trial_seed: self.trial_seed,
            dim: self.dim,
            family_size: self.family_size,
            gap: self.gap,
            margin: self.margin(),
            second_opinion_min_eigenvalue: self.second_opinion,
            function: self.function.clone(),
        }
    }
}

/// Folds records in index order. Ties on the worst margin go to the lower
/// index, so the result is independent of scheduling.
pub fn fold(cfg: &TrialConfig, mode: &str, records: &[TrialRecord], wall_time_s: f64) -> SuiteReport {
    let mut report = SuiteReport {
        suite: cfg.suite.clone(),
        mode: mode.to_string(),
        config: cfg.clone(),
        trials: records.len() as u64,
        violations: 0,
        generation_failures: 0,
        worst_gap: f64::INFINITY,
        worst_margin: f64::INFINITY,
        worst_case_trial: 0,
        worst_case_seed: 0,
        diagnostics: BTreeMap::new(),
        counters: BTreeMap::new(),
        findings_total: 0,
        findings: Vec::new(),
        wall_time_s,
    };
    for r in records {
        report.generation_failures += r.failed_attempts as u64;
        if r.margin() < report.worst_margin {
            report.worst_margin = r.margin();
            report.worst_gap = r.gap;
            report.worst_case_trial = r.index;
            report.worst_case_seed = r.trial_seed;
        }
        for (k, v) in &r.diagnostics {
            let e = report.diagnostics.entry(k.to_string()).or_insert(*v);
            *e = e.max(*v);
        }
        for (k, v) in &r.counters {
            *report.counters.entry(k.to_string()).or_insert(0) += v;
        }
        if !r.holds {
            report.violations += 1;
            report.findings_total += 1;
            if report.findings.len() < MAX_FINDINGS {
                report.findings.push(r.finding());
            }
        }
    }
    report
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("bad report: {e}")))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        format!(
            "{} [{}]: {} trials, {} violations, {} regenerated, worst gap {:e} (margin {:e}) at trial {} seed {}",
            self.suite,
            self.mode,
            self.trials,
            self.violations,
            self.generation_failures,
            self.worst_gap,
            self.worst_margin,
            self.worst_case_trial,
            self.worst_case_seed
        )
    }
}
