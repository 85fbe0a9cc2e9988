//! Registered property suites. Each trial draws its own instance from a
//! generator that satisfies the check's hypotheses by construction.

use std::collections::BTreeMap;

use rand::Rng;

use super::config::{GeneratorSpec, TrialConfig};
use super::generate::{
    complex_gaussian, random_commuting_pair, random_contraction, random_expansive, random_pd,
    random_positive_sequence, random_probabilities, random_sequence_pair, random_shannon_families,
    random_unitary, family_of,
};
use super::rng::{rng_from_seed, TrialRng};
use crate::deformed_log::{
    q_log, q_log_product, q_log_product_alt, q_log_quotient, q_log_reciprocal, q_power_identity, QLogParams,
};
use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::loewner_ineq::{
    hansen_jensen_residual, intermediate_57_residual, lemma9_residual, operator_shannon_residual,
    theorem10_residual_1, theorem10_residual_2, theorem6_residual, OperatorFunctionSpec,
};
use crate::matfun::{HermitianMatrix, LoewnerVerdict, SpectralDecomposition};
use crate::scalar_ineq::{
    convexity_check, generalized_log_sum_gap, q_log_sum_gap, rational_entry_threshold,
    rational_example_gap, rational_ratio_threshold, ratio_bounds, reverse_log_sum_gap, CurvatureKind,
    InequalityVerdict, SequencePair, CONVEXITY_GRID,
};
use crate::trace_ineq::{
    entropy_bound_gap, exp_log_trace_gap, q_trace_gap, quantum_relative_entropy, reverse_trace_gap,
    trace_log_sum_gap, von_neumann_entropy, DensityMatrix, TraceVerdict, ORACLE_TOLERANCE,
};

/// Upper end of random sequence entries, `(0, SEQUENCE_MAX]`.
pub const SEQUENCE_MAX: f64 = 10.0;
/// `q` values of the forward and reversed q-log sum forms.
pub const Q_VALUES: [f64; 5] = [0.0, 0.5, 1.5, 2.5, 3.0];
/// `|D(σ‖σ)|` bound.
pub const SELF_ENTROPY_TOLERANCE: f64 = 1e-10;

/// Name, default tolerance and one-line description of every suite.
pub const SUITES: &[(&str, f64, &str)] = &[
    ("q_log_identities", 1e-12, "q-log product, quotient, reciprocal, pseudo-additivity and power identities"),
    ("ratio_bounds", 1e-12, "g(a)/g(b) bounds bracket the ratio of sums"),
    ("convexity_check", 0.5, "curvature check agrees with the known shape of x f(x) and x f(1/x)"),
    ("scalar_log_sum", 1e-9, "generalized log-sum with f = log, g = identity"),
    ("scalar_log_sum_equality", 1e-9, "log-sum gap vanishes for proportional sequences"),
    ("reverse_log_sum", 1e-9, "reverse form for x f(1/x) concave"),
    ("rational_example", 1e-9, "f(x) = x/(x^2+2) on its admissible region"),
    ("q_log_sum", 1e-9, "q-log sum at q in {0, 0.5, 1.5} and reversed at {2.5, 3}"),
    ("trace_log_sum", 1e-9, "commuting trace form against the scalar oracle"),
    ("exp_log_trace", 1e-9, "trace[A log A] - trace[A log B] form against the scalar oracle"),
    ("quantum_relative_entropy", 1e-9, "D(rho||sigma) >= 0 and D(sigma||sigma) = 0"),
    ("von_neumann_entropy", 1e-9, "0 <= S(rho) <= ln n"),
    ("entropy_bound", 1e-9, "trace[A log A] >= trace(A)[log trace A - log n]"),
    ("q_trace", 1e-9, "commuting q-log trace form at all q values"),
    ("reverse_trace", 1e-9, "commuting reverse trace form"),
    ("hansen_jensen", 1e-8, "C* f(X) C <= f(C* X C) for f = t^(1/2)"),
    ("theorem6", 1e-9, "perspective sum under expansivity"),
    ("operator_shannon", 1e-9, "sum of perspectives is negative semidefinite"),
    ("lemma9", 1e-9, "sum X_i* A_i^-1 X_i >= (sum X_i)* A^-1 (sum X_i)"),
    ("theorem10_1", 1e-9, "first harmonic-mean-type inequality"),
    ("theorem10_2", 1e-9, "second harmonic-mean-type inequality"),
    ("intermediate_57", 1e-9, "monotonicity of B^(1/2) f(B^(1/2) A^-1 B^(1/2))^-1 B^(1/2)"),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|s| s.0)
}

pub fn default_tolerance(suite: &str) -> Result<f64> {
    SUITES
        .iter()
        .find(|s| s.0 == suite)
        .map(|s| s.1)
        .ok_or_else(|| Error::Config(format!("unknown suite `{suite}`")))
}

impl TrialConfig {
    /// Config with the suite's default tolerance.
    pub fn for_suite(suite: &str, trials: u64, seed: u64) -> Result<Self> {
        let tol = default_tolerance(suite)?;
        Ok(TrialConfig::new(suite, trials, seed).tolerance(tol))
    }
}

/// Result of one trial. The claim holds iff `gap >= -tolerance * scale`
/// and every auxiliary check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub gap: f64,
    pub scale: f64,
    pub holds: bool,
    pub dim: usize,
    pub family_size: usize,
    pub diagnostics: Vec<(&'static str, f64)>,
}

impl TrialOutcome {
    fn new(gap: f64, scale: f64, tol: f64) -> Self {
        Self {
            gap,
            scale,
            holds: gap >= -tol * scale,
            dim: 1,
            family_size: 1,
            diagnostics: Vec::new(),
        }
    }

    fn scalar(v: &InequalityVerdict, tol: f64) -> Self {
        Self::new(v.gap, v.scale(), tol)
    }

    fn loewner(v: &LoewnerVerdict, tol: f64) -> Self {
        Self::new(v.residual_min_eigenvalue, v.scale, tol)
    }

    fn trace(v: &TraceVerdict, tol: f64) -> Self {
        Self::scalar(&v.verdict, tol)
            .require(v.paths_agree())
            .diag("path_discrepancy", v.discrepancy)
    }

    fn require(mut self, ok: bool) -> Self {
        self.holds &= ok;
        self
    }

    fn diag(mut self, key: &'static str, value: f64) -> Self {
        self.diagnostics.push((key, value));
        self
    }

    fn dims(mut self, n: usize, m: usize) -> Self {
        self.dim = n;
        self.family_size = m;
        self
    }

    pub fn margin(&self) -> f64 {
        self.gap / self.scale
    }

    /// Keeps whichever of `self` and `other` has the smaller margin and
    /// merges diagnostics by maximum.
    fn worst(self, other: Self) -> Self {
        let holds = self.holds && other.holds;
        let mut diags: BTreeMap<&'static str, f64> = BTreeMap::new();
        for (k, v) in self.diagnostics.iter().chain(&other.diagnostics) {
            let e = diags.entry(k).or_insert(*v);
            *e = e.max(*v);
        }
        let mut w = if other.margin() < self.margin() { other } else { self };
        w.holds = holds;
        w.diagnostics = diags.into_iter().collect();
        w
    }
}

/// Per-trial dimension and family size: uniform on `1..=bound` unless exact.
pub fn draw_dims(rng: &mut TrialRng, cfg: &TrialConfig) -> (usize, usize) {
    if cfg.exact_dims {
        (cfg.dim, cfg.family_size)
    } else {
        (rng.random_range(1..=cfg.dim), rng.random_range(1..=cfg.family_size))
    }
}

/// Runs one trial of `cfg.suite` from a fully determined seed.
pub fn run_trial(cfg: &TrialConfig, trial_seed: u64) -> Result<TrialOutcome> {
    let mut rng = rng_from_seed(trial_seed);
    let rng = &mut rng;
    let (n, m) = draw_dims(rng, cfg);
    let tol = cfg.tolerance;
    let spec = &cfg.generator;
    let out = match cfg.suite.as_str() {
        "q_log_identities" => q_log_identities(rng, tol)?,
        "ratio_bounds" => ratio_bounds_trial(rng, n, tol)?,
        "convexity_check" => convexity_trial(rng, tol)?,
        "scalar_log_sum" => {
            let pair = random_sequence_pair(rng, n, SEQUENCE_MAX);
            let v = generalized_log_sum_gap(&FunctionSpec::log(), &FunctionSpec::identity(), &pair)?;
            TrialOutcome::scalar(&v, tol).diag("oracle_discrepancy", log_sum_oracle_discrepancy(&pair, &v))
        }
        "scalar_log_sum_equality" => {
            let b = random_positive_sequence(rng, n, SEQUENCE_MAX);
            let c = rng.random_range(0.1..=10.0);
            let a = b.iter().map(|x| c * x).collect();
            let v = generalized_log_sum_gap(&FunctionSpec::log(), &FunctionSpec::identity(), &SequencePair::new(a, b)?)?;
            TrialOutcome::new(-v.gap.abs(), v.scale(), tol)
        }
        "reverse_log_sum" => {
            let pair = random_sequence_pair(rng, n, SEQUENCE_MAX);
            let f = reverse_function(rng);
            TrialOutcome::scalar(&reverse_log_sum_gap(&f, &FunctionSpec::identity(), &pair)?, tol)
        }
        "rational_example" => {
            let pair = rational_pair(rng, n);
            TrialOutcome::scalar(&rational_example_gap(&pair)?, tol)
        }
        "q_log_sum" => {
            let pair = random_sequence_pair(rng, n, SEQUENCE_MAX);
            worst_of(Q_VALUES.iter().map(|&q| Ok(TrialOutcome::scalar(&q_log_sum_gap(&pair, q, 1.0)?, tol))))?
        }
        "trace_log_sum" => {
            let (a, b) = random_commuting_pair(rng, n, spec);
            TrialOutcome::trace(&trace_log_sum_gap(&FunctionSpec::log(), &FunctionSpec::identity(), &a, &b)?, tol)
        }
        "exp_log_trace" => {
            let (a, b) = random_commuting_pair(rng, n, spec);
            let r = exp_log_trace_gap(&a, &b)?;
            TrialOutcome::trace(&r.trace, tol)
        }
        "quantum_relative_entropy" => relative_entropy_trial(rng, n, tol)?,
        "von_neumann_entropy" => entropy_trial(rng, n, tol)?,
        "entropy_bound" => {
            let a = random_diagonal_in_basis(rng, n, spec);
            TrialOutcome::trace(&entropy_bound_gap(&a)?, tol)
        }
        "q_trace" => {
            let (a, b) = random_commuting_pair(rng, n, spec);
            worst_of(Q_VALUES.iter().map(|&q| Ok(TrialOutcome::trace(&q_trace_gap(&a, &b, q, 1.0)?, tol))))?
        }
        "reverse_trace" => {
            let (a, b) = random_commuting_pair(rng, n, spec);
            let f = reverse_function(rng);
            TrialOutcome::trace(&reverse_trace_gap(&f, &FunctionSpec::identity(), &a, &b)?, tol)
        }
        "hansen_jensen" => {
            let c = random_contraction(rng, n);
            let x = random_pd(rng, n, spec);
            let f = OperatorFunctionSpec::power(0.5)?;
            TrialOutcome::loewner(&hansen_jensen_residual(&f, &c, &x)?, tol)
        }
        "theorem6" => {
            let a = family_of(rng, m, |r| random_expansive(r, n));
            let b = family_of(rng, m, |r| random_pd(r, n, spec));
            let f = theorem6_function(rng)?;
            let o = theorem6_residual(&f, &a, &b)?;
            let mut t = TrialOutcome::loewner(&o.verdict, tol).diag("identity_discrepancy", o.identity_discrepancy);
            if let Some(img) = o.image_sum_verdict {
                t = t.worst(TrialOutcome::loewner(&img, tol));
            }
            t
        }
        "operator_shannon" => {
            let (a, b) = random_shannon_families(rng, n, m, spec)?;
            let f = if rng.random_bool(0.5) {
                OperatorFunctionSpec::log()
            } else {
                OperatorFunctionSpec::power(0.5)?.with_offset(-1.0)?
            };
            TrialOutcome::loewner(&operator_shannon_residual(&a, &b, &f)?, tol)
        }
        "lemma9" => {
            let a = family_of(rng, m, |r| random_pd(r, n, spec));
            let x: Vec<_> = (0..m).map(|_| complex_gaussian(rng, n, 1.0)).collect();
            TrialOutcome::loewner(&lemma9_residual(&x, &a)?, tol)
        }
        "theorem10_1" | "theorem10_2" => {
            let a = family_of(rng, m, |r| random_pd(r, n, spec));
            let b = family_of(rng, m, |r| random_pd(r, n, spec));
            let f = OperatorFunctionSpec::power(0.5)?;
            let v = if cfg.suite == "theorem10_1" {
                theorem10_residual_1(&f, &a, &b)?
            } else {
                theorem10_residual_2(&f, &a, &b)?
            };
            TrialOutcome::loewner(&v, tol)
        }
        "intermediate_57" => {
            // Σ over at least two members so that B - B_0 is positive definite.
            let k = m.max(2);
            let a = family_of(rng, k, |r| random_pd(r, n, spec));
            let b = family_of(rng, k, |r| random_pd(r, n, spec));
            let f = OperatorFunctionSpec::power(0.5)?;
            let v = intermediate_57_residual(&f, &a.members()[0], &b.members()[0], &a.sum(), &b.sum())?;
            TrialOutcome::loewner(&v, tol)
        }
        other => return Err(Error::Config(format!("unknown suite `{other}`"))),
    };
    Ok(out.dims(n, m))
}

fn worst_of(outcomes: impl Iterator<Item = Result<TrialOutcome>>) -> Result<TrialOutcome> {
    let mut acc: Option<TrialOutcome> = None;
    for o in outcomes {
        let o = o?;
        acc = Some(match acc {
            Some(a) => a.worst(o),
            None => o,
        });
    }
    acc.ok_or_else(|| Error::Config("empty trial".into()))
}

fn log_uniform(rng: &mut TrialRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..=hi.ln()).exp()
}

/// Relative error of each appendix identity, scaled by the largest term it
/// combines so cancellation between large terms is not mistaken for error.
fn q_log_identities(rng: &mut TrialRng, tol: f64) -> Result<TrialOutcome> {
    let x = log_uniform(rng, 1e-3, 1e3);
    let y = log_uniform(rng, 1e-3, 1e3);
    let q = loop {
        let q: f64 = rng.random_range(-2.0..=4.0);
        if (q - 1.0).abs() > 1e-6 {
            break q;
        }
    };
    let p = QLogParams::new(q)?;
    let k = p.deformation();
    let (lx, ly) = (q_log(x, &p)?, q_log(y, &p)?);
    let (px, py) = (p.deformed_power(x)?, p.deformed_power(y)?);

    let checks: [(&'static str, f64, f64, f64); 5] = [
        {
            let lhs = q_log(x * y, &p)?;
            ("pseudo_additivity_error", lhs, q_log_product(x, y, &p)?, max_abs(&[lhs, lx, ly, k * lx * ly]))
        },
        {
            let lhs = q_log(x * y, &p)?;
            ("product_error", lhs, q_log_product_alt(x, y, &p)?, max_abs(&[lhs, px * ly, lx]))
        },
        {
            let lhs = q_log(x / y, &p)?;
            ("quotient_error", lhs, q_log_quotient(x, y, &p)?, max_abs(&[lhs, lx / py, ly / py]))
        },
        {
            let lhs = q_log(1.0 / y, &p)?;
            ("reciprocal_error", lhs, q_log_reciprocal(y, &p)?, max_abs(&[lhs, ly / py]))
        },
        ("power_error", px, q_power_identity(x, &p)?, max_abs(&[1.0, px, k * lx])),
    ];
    worst_of(checks.into_iter().map(|(key, lhs, rhs, scale)| {
        let rel = (lhs - rhs).abs() / scale;
        Ok(TrialOutcome::new(-rel * scale, scale, tol).diag(key, rel))
    }))
}

fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(f64::MIN_POSITIVE, |m, v| m.max(v.abs()))
}

/// The ratio of sums lies between the smallest and largest termwise ratio.
fn ratio_bounds_trial(rng: &mut TrialRng, n: usize, tol: f64) -> Result<TrialOutcome> {
    let pair = random_sequence_pair(rng, n, SEQUENCE_MAX);
    let r = rng.random_range(0.25..=2.0);
    let g = FunctionSpec::power(r);
    let bounds = ratio_bounds(&g, &pair)?;
    let ga: Vec<f64> = pair.a().iter().map(|v| v.powf(r)).collect();
    let gb: Vec<f64> = pair.b().iter().map(|v| v.powf(r)).collect();
    let ratio = ga.iter().sum::<f64>() / gb.iter().sum::<f64>();
    let gap = (ratio - bounds.min).min(bounds.max - ratio);
    let attained = |t: f64| ga.iter().zip(&gb).any(|(x, y)| x / y == t);
    Ok(TrialOutcome::new(gap, bounds.max.abs().max(1.0), tol).require(attained(bounds.min) && attained(bounds.max)))
}

/// Functions with a known curvature verdict on `(0, ∞)`.
fn convexity_trial(rng: &mut TrialRng, tol: f64) -> Result<TrialOutcome> {
    let lo = rng.random_range(0.05..5.0);
    let hi = lo + rng.random_range(0.1..5.0);
    let (kind, f, expected) = match rng.random_range(0..6) {
        0 => (CurvatureKind::Xfx, FunctionSpec::log(), true),
        1 => {
            let q = rng.random_range(-1.0..1.9);
            (CurvatureKind::Xfx, FunctionSpec::q_log(q), true)
        }
        2 => {
            let q = rng.random_range(2.1..4.0);
            (CurvatureKind::Xfx, FunctionSpec::q_log(q), false)
        }
        3 => {
            // x^(1+r) is convex for r > 0 and concave for -1 < r < 0.
            let r = rng.random_range(0.1..2.0);
            (CurvatureKind::Xfx, FunctionSpec::power(r), true)
        }
        4 => {
            let r = rng.random_range(-0.9..-0.1);
            (CurvatureKind::Xfx, FunctionSpec::power(r), false)
        }
        _ => (CurvatureKind::Xf1overx, FunctionSpec::log(), true),
    };
    let got = convexity_check(kind, &f, (lo, hi), CONVEXITY_GRID)?;
    let gap = if got == expected { 0.0 } else { -1.0 };
    Ok(TrialOutcome::new(gap, 1.0, tol))
}

fn log_sum_oracle_discrepancy(pair: &SequencePair, v: &InequalityVerdict) -> f64 {
    let (sa, sb) = (pair.a().iter().sum::<f64>(), pair.b().iter().sum::<f64>());
    let lhs: f64 = pair.a().iter().zip(pair.b()).map(|(&a, &b)| a * (a / b).ln()).sum();
    (lhs - v.lhs).abs().max((sa * (sa / sb).ln() - v.rhs).abs()) / v.scale()
}

/// `log` or `t^r` with `0 < r < 1`; both make `x f(1/x)` concave.
fn reverse_function(rng: &mut TrialRng) -> FunctionSpec {
    if rng.random_bool(0.5) {
        FunctionSpec::log()
    } else {
        FunctionSpec::power(rng.random_range(0.05..0.95))
    }
}

fn rational_pair(rng: &mut TrialRng, n: usize) -> SequencePair {
    let entry = rational_entry_threshold() * (1.0 + 1e-9);
    let ratio = rational_ratio_threshold() * (1.0 + 1e-9);
    let b: Vec<f64> = (0..n).map(|_| rng.random_range(entry..=SEQUENCE_MAX)).collect();
    let a = b
        .iter()
        .map(|&bi| rng.random_range(entry.max(ratio * bi)..=SEQUENCE_MAX))
        .collect();
    SequencePair::new(a, b).expect("positive entries")
}

fn theorem6_function(rng: &mut TrialRng) -> Result<OperatorFunctionSpec> {
    Ok(match rng.random_range(0..3) {
        0 => OperatorFunctionSpec::power(0.5)?,
        1 => OperatorFunctionSpec::shifted_log(1.0)?,
        _ => OperatorFunctionSpec::log(),
    })
}

fn compose(u: &crate::matfun::CMatrix, values: &[f64]) -> HermitianMatrix {
    SpectralDecomposition {
        unitary: u.clone(),
        eigenvalues: Vec::new(),
    }
    .compose(values)
}

fn random_diagonal_in_basis(rng: &mut TrialRng, n: usize, spec: &GeneratorSpec) -> HermitianMatrix {
    let v: Vec<f64> = (0..n).map(|_| rng.random_range(spec.spectrum_min..=spec.spectrum_max)).collect();
    let u = random_unitary(rng, n);
    compose(&u, &v)
}

/// `D(ρ‖σ) >= 0` against `Σ p_i ln(p_i / s_i)` from the generating
/// spectra, plus `D(σ‖σ) = 0`.
fn relative_entropy_trial(rng: &mut TrialRng, n: usize, tol: f64) -> Result<TrialOutcome> {
    let p = random_probabilities(rng, n, true);
    let s = random_probabilities(rng, n, false);
    let u = random_unitary(rng, n);
    let rho = DensityMatrix::new(compose(&u, &p))?;
    let sigma = DensityMatrix::new(compose(&u, &s))?;
    let d = quantum_relative_entropy(&rho, &sigma)?;
    let oracle: f64 = p
        .iter()
        .zip(&s)
        .filter(|(&pi, _)| pi > 0.0)
        .map(|(&pi, &si)| pi * (pi / si).ln())
        .sum();
    let self_d = quantum_relative_entropy(&sigma, &sigma)?;
    let discrepancy = (d - oracle).abs() / d.abs().max(1.0);
    Ok(TrialOutcome::new(d, 1.0, tol)
        .require(discrepancy <= ORACLE_TOLERANCE && self_d.abs() <= SELF_ENTROPY_TOLERANCE)
        .diag("oracle_discrepancy", discrepancy)
        .diag("self_entropy", self_d.abs()))
}

fn entropy_trial(rng: &mut TrialRng, n: usize, tol: f64) -> Result<TrialOutcome> {
    let p = random_probabilities(rng, n, true);
    let u = random_unitary(rng, n);
    let rho = DensityMatrix::new(compose(&u, &p))?;
    let s = von_neumann_entropy(&rho)?;
    let oracle: f64 = -p.iter().filter(|&&v| v > 0.0).map(|&v| v * v.ln()).sum::<f64>();
    let discrepancy = (s - oracle).abs() / s.abs().max(1.0);
    let ln_n = (n as f64).ln();
    Ok(TrialOutcome::new(s.min(ln_n - s), 1.0, tol)
        .require(discrepancy <= ORACLE_TOLERANCE)
        .diag("oracle_discrepancy", discrepancy))
}
