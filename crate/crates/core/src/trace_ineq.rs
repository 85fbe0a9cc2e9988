//! Trace forms of the generalized log-sum inequality for commuting
//! self-adjoint matrices, and the quantum-information quantities they bound.
//!
//! For commuting `A`, `B` with joint eigenvalues `(a_i, b_i)` every trace in
//! this module reduces to a scalar sum over those pairs. Each check therefore
//! returns two evaluations: the scalar-module verdict on the joint eigenvalue
//! lists, and the direct matrix-product path through [`crate::matfun`]. They
//! must agree to [`ORACLE_TOLERANCE`].

use serde::{Deserialize, Serialize};

use crate::deformed_log::{q_log, QLogParams};
use crate::error::{Error, Result};
use crate::function::{FunctionFamily, FunctionSpec};
use crate::matfun::{
    apply_function, check_commuting, default_inverse_floor, hermitize, joint_eigenbasis, map_spectrum,
    psd_inverse, HermitianMatrix, JointSpectrum,
};
use crate::scalar_ineq::{
    generalized_log_sum_gap, q_log_sum_gap, reverse_log_sum_gap, InequalityVerdict, SequencePair,
    DEFAULT_TOLERANCE,
};

/// Relative agreement required between the matrix path and the scalar oracle.
pub const ORACLE_TOLERANCE: f64 = 1e-9;
/// Eigenvalues of a state below this are exact zeros for `0 log 0 = 0`.
pub const SUPPORT_THRESHOLD: f64 = 1e-14;
pub const DENSITY_TRACE_TOLERANCE: f64 = 1e-10;
pub const DENSITY_PSD_TOLERANCE: f64 = 1e-12;

/// Positive semidefinite Hermitian matrix of unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    base: HermitianMatrix,
}

impl DensityMatrix {
    pub fn new(base: HermitianMatrix) -> Result<Self> {
        let trace = base.trace();
        if (trace - 1.0).abs() > DENSITY_TRACE_TOLERANCE {
            return Err(Error::Precondition(format!("density matrix trace is {trace}, not 1")));
        }
        let min = base.min_eigenvalue()?;
        if min < -DENSITY_PSD_TOLERANCE * base.max_norm().max(1.0) {
            return Err(Error::NegativeSpectrum { min_eigenvalue: min });
        }
        Ok(Self { base })
    }

    pub fn diagonal(probabilities: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::diagonal(probabilities))
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }
}

/// A trace-form verdict together with its matrix-path cross-check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceVerdict {
    /// Scalar-module verdict on the joint eigenvalues.
    pub verdict: InequalityVerdict,
    pub matrix_lhs: f64,
    pub matrix_rhs: f64,
    /// `max(|Δlhs|, |Δrhs|) / max(1, |lhs|, |rhs|)` between the two paths.
    pub discrepancy: f64,
}

impl TraceVerdict {
    fn new(verdict: InequalityVerdict, matrix_lhs: f64, matrix_rhs: f64) -> Self {
        let discrepancy =
            (matrix_lhs - verdict.lhs).abs().max((matrix_rhs - verdict.rhs).abs()) / verdict.scale();
        Self {
            verdict,
            matrix_lhs,
            matrix_rhs,
            discrepancy,
        }
    }

    pub fn paths_agree(&self) -> bool {
        self.discrepancy <= ORACLE_TOLERANCE
    }

    /// The inequality holds and both evaluation paths agree.
    pub fn passes(&self) -> bool {
        self.verdict.holds && self.paths_agree()
    }
}

fn joint_pair(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<(JointSpectrum, SequencePair)> {
    let js = joint_eigenbasis(a, b)?;
    let pair = SequencePair::new(js.a.clone(), js.b.clone())?;
    Ok((js, pair))
}

fn product(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<HermitianMatrix> {
    hermitize(&(x.matrix() * y.matrix()))
}

fn trace_of_product(x: &HermitianMatrix, y: &HermitianMatrix) -> f64 {
    let (xm, ym) = (x.matrix(), y.matrix());
    let n = x.dim();
    (0..n)
        .map(|i| (0..n).map(|k| (xm[(i, k)] * ym[(k, i)]).re).sum::<f64>())
        .sum()
}

/// `x⁻¹` for a matrix whose spectrum must be positive.
fn positive_inverse(x: &HermitianMatrix, what: &str) -> Result<HermitianMatrix> {
    psd_inverse(x, default_inverse_floor(x)).map_err(|e| match e {
        Error::Singular { min_eigenvalue, .. } => Error::Precondition(format!(
            "{what} must be positive definite (min eigenvalue {min_eigenvalue:e})"
        )),
        other => other,
    })
}

/// `f` applied to a ratio matrix, honouring `0 f(0) = 0` where the weight
/// in front of a zero ratio is itself zero.
fn apply_to_ratio(f: &FunctionSpec, ratio: &HermitianMatrix) -> Result<HermitianMatrix> {
    let floor = SUPPORT_THRESHOLD * ratio.max_norm().max(1.0);
    if f.zero_weight_vanishes() {
        map_spectrum(ratio, |x| if x.abs() <= floor { Ok(0.0) } else { f.eval(x) })
    } else {
        apply_function(f, ratio)
    }
}

/// `trace[g(A) f(g(A) g(B)⁻¹)] >= trace[g(A)] f(trace g(A) / trace g(B))`.
pub fn trace_log_sum_gap(
    f: &FunctionSpec,
    g: &FunctionSpec,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<TraceVerdict> {
    let (_, pair) = joint_pair(a, b)?;
    let verdict = generalized_log_sum_gap(f, g, &pair)?;

    let ga = apply_function(g, a)?;
    let gb = apply_function(g, b)?;
    let ratio = product(&ga, &positive_inverse(&gb, "g(B)")?)?;
    let lhs = trace_of_product(&ga, &apply_to_ratio(f, &ratio)?);
    let (ta, tb) = (ga.trace(), gb.trace());
    let rhs = if ta == 0.0 && f.zero_weight_vanishes() { 0.0 } else { ta * f.eval(ta / tb)? };
    Ok(TraceVerdict::new(verdict, lhs, rhs))
}

/// The exp/log trace corollary for positive definite commuting `A`, `B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpLogTrace {
    /// `Σ a_i ln a_i - Σ a_i ln b_i` against `trace(A) ln(trace A / trace B)`,
    /// with the matrix path `trace[A log A] - trace[A log B]`.
    pub trace: TraceVerdict,
    /// `trace(exp(A log A)) - trace(exp(A log B))` taken literally. This is
    /// `Σ a_i^{a_i} - Σ b_i^{a_i}`, which is not the log-sum left side.
    pub literal_exp_trace_difference: f64,
}

pub fn exp_log_trace_gap(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<ExpLogTrace> {
    let (_, pair) = joint_pair(a, b)?;
    if pair.a().iter().chain(pair.b()).any(|&v| v <= 0.0) {
        return Err(Error::Precondition("A and B must be positive definite".into()));
    }
    let lhs: f64 = pair.a().iter().zip(pair.b()).map(|(&x, &y)| x * x.ln() - x * y.ln()).sum();
    let (ta, tb) = (pair.a().iter().sum::<f64>(), pair.b().iter().sum::<f64>());
    let verdict = InequalityVerdict::greater_eq(lhs, ta * (ta / tb).ln(), DEFAULT_TOLERANCE);

    let log = FunctionSpec::log();
    let log_a = apply_function(&log, a)?;
    let log_b = apply_function(&log, b)?;
    let matrix_lhs = trace_of_product(a, &log_a) - trace_of_product(a, &log_b);
    let matrix_rhs = a.trace() * (a.trace() / b.trace()).ln();

    let exp = FunctionSpec::exp();
    let literal = apply_function(&exp, &product(a, &log_a)?)?.trace()
        - apply_function(&exp, &product(a, &log_b)?)?.trace();
    Ok(ExpLogTrace {
        trace: TraceVerdict::new(verdict, matrix_lhs, matrix_rhs),
        literal_exp_trace_difference: literal,
    })
}

/// `D(ρ‖σ) = trace[ρ(log ρ - log σ)]` for commuting states.
pub fn quantum_relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let js = joint_eigenbasis(rho.matrix(), sigma.matrix())?;
    js.a.iter()
        .zip(&js.b)
        .map(|(&p, &s)| {
            if p < SUPPORT_THRESHOLD {
                Ok(0.0)
            } else if s < SUPPORT_THRESHOLD {
                Err(Error::Support)
            } else {
                Ok(p * (p.ln() - s.ln()))
            }
        })
        .sum()
}

/// `-Σ λ_i ln λ_i`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let ev = rho.matrix().eigenvalues()?;
    Ok(-ev
        .iter()
        .filter(|&&l| l >= SUPPORT_THRESHOLD)
        .map(|&l| l * l.ln())
        .sum::<f64>())
}

/// `(trace B^r)^{1-q} trace[A^r ln_q(A^r B^{-r})]` against
/// `trace(A^r)[ln_q trace(A^r) - ln_q trace(B^r)]`; `>=` for `q < 2`, `<=` for `q > 2`.
pub fn q_trace_gap(a: &HermitianMatrix, b: &HermitianMatrix, q: f64, r: f64) -> Result<TraceVerdict> {
    let (_, pair) = joint_pair(a, b)?;
    let verdict = q_log_sum_gap(&pair, q, r)?;

    let params = QLogParams::new(q)?;
    let power = FunctionSpec::power(r);
    let ar = apply_function(&power, a)?;
    let br = apply_function(&power, b)?;
    let ratio = product(&ar, &positive_inverse(&br, "B^r")?)?;
    let ln_ratio = apply_function(&FunctionFamily::QLog { q }.into(), &ratio)?;
    let (ta, tb) = (ar.trace(), br.trace());
    let lhs = params.deformed_power(tb)? * trace_of_product(&ar, &ln_ratio);
    let rhs = ta * (q_log(ta, &params)? - q_log(tb, &params)?);
    Ok(TraceVerdict::new(verdict, lhs, rhs))
}

/// Reverse trace form `trace[g(A) f(g(B) g(A)⁻¹)] <= trace[g(A)] f(trace g(B) / trace g(A))`
/// for `x f(1/x)` concave; the matrix counterpart of the scalar reverse inequality.
pub fn reverse_trace_gap(
    f: &FunctionSpec,
    g: &FunctionSpec,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<TraceVerdict> {
    let (_, pair) = joint_pair(a, b)?;
    let verdict = reverse_log_sum_gap(f, g, &pair)?;

    let ga = apply_function(g, a)?;
    let gb = apply_function(g, b)?;
    let ratio = product(&gb, &positive_inverse(&ga, "g(A)")?)?;
    let lhs = trace_of_product(&ga, &apply_function(f, &ratio)?);
    let (ta, tb) = (ga.trace(), gb.trace());
    let rhs = ta * f.eval(tb / ta)?;
    Ok(TraceVerdict::new(verdict, lhs, rhs))
}

/// `trace[A log A] >= trace(A)[log trace(A) - log n]`, the `B = I` case of the
/// `r = 1` trace form.
pub fn entropy_bound_gap(a: &HermitianMatrix) -> Result<TraceVerdict> {
    let id = HermitianMatrix::identity(a.dim());
    check_commuting(a, &id)?;
    trace_log_sum_gap(&FunctionSpec::log(), &FunctionSpec::identity(), a, &id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matfun::{make_commuting_pair, CMatrix};
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

    fn rot45() -> CMatrix {
        let s = FRAC_1_SQRT_2;
        CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(s, 0.0),
                Complex64::new(0.0, -s),
                Complex64::new(0.0, -s),
                Complex64::new(s, 0.0),
            ],
        )
    }

    fn pair(a: &[f64], b: &[f64]) -> (HermitianMatrix, HermitianMatrix) {
        make_commuting_pair(&rot45(), a, b).unwrap()
    }

    #[test]
    fn trace_log_sum_examples() {
        let (log, id) = (FunctionSpec::log(), FunctionSpec::identity());
        let eye = HermitianMatrix::identity(3);
        let v = trace_log_sum_gap(&log, &id, &eye, &eye).unwrap();
        assert_eq!(v.verdict.gap, 0.0);
        assert!(v.passes());

        let (a, b) = pair(&[1.0, 2.0], &[2.0, 1.0]);
        let v = trace_log_sum_gap(&log, &id, &a, &b).unwrap();
        assert_relative_eq!(v.verdict.gap, LN_2, max_relative = 1e-12);
        assert_relative_eq!(v.matrix_lhs, LN_2, max_relative = 1e-12);
        assert!(v.passes());

        let a = HermitianMatrix::diagonal(&[1.0, 2.0]);
        let b = HermitianMatrix::diagonal(&[2.0, 4.0]);
        let v = trace_log_sum_gap(&log, &id, &a, &b).unwrap();
        assert!(v.verdict.gap.abs() < 1e-15);
    }

    #[test]
    fn non_commuting_input_is_rejected() {
        let a = HermitianMatrix::diagonal(&[1.0, 2.0]);
        let b = HermitianMatrix::from_real(2, &[1.0, 1.0, 1.0, 2.0]).unwrap();
        assert!(matches!(
            trace_log_sum_gap(&FunctionSpec::log(), &FunctionSpec::identity(), &a, &b),
            Err(Error::NonCommuting { .. })
        ));
    }

    #[test]
    fn exp_log_examples() {
        let eye = HermitianMatrix::identity(2);
        let v = exp_log_trace_gap(&eye, &eye).unwrap();
        assert_eq!(v.trace.verdict.gap, 0.0);

        let v = exp_log_trace_gap(&eye, &eye.scaled(2.0)).unwrap();
        assert_relative_eq!(v.trace.verdict.lhs, -2.0 * LN_2, max_relative = 1e-15);
        assert_relative_eq!(v.trace.verdict.rhs, -2.0 * LN_2, max_relative = 1e-15);
        assert!(v.trace.verdict.gap.abs() < 1e-15);
        // literally exp(A log A) = I and exp(A log B) = 2I here
        assert_relative_eq!(v.literal_exp_trace_difference, -2.0, max_relative = 1e-14);

        let (a, b) = pair(&[2.0, 1.0], &[1.0, 2.0]);
        let v = exp_log_trace_gap(&a, &b).unwrap();
        assert_relative_eq!(v.trace.verdict.lhs, LN_2, max_relative = 1e-12);
        assert!(v.trace.verdict.rhs.abs() < 1e-15);
        assert!(v.trace.passes());

        assert!(exp_log_trace_gap(&HermitianMatrix::diagonal(&[1.0, 0.0]), &eye).is_err());
    }

    #[test]
    fn relative_entropy_examples() {
        let rho = DensityMatrix::diagonal(&[0.25, 0.75]).unwrap();
        assert_eq!(quantum_relative_entropy(&rho, &rho).unwrap(), 0.0);

        let rho = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        let sigma = DensityMatrix::diagonal(&[0.5, 0.5]).unwrap();
        assert_relative_eq!(quantum_relative_entropy(&rho, &sigma).unwrap(), LN_2, max_relative = 1e-15);
        assert!(matches!(quantum_relative_entropy(&sigma, &rho), Err(Error::Support)));

        let (half, _) = pair(&[0.5, 0.5], &[0.5, 0.5]);
        let mixed = DensityMatrix::new(half).unwrap();
        let plain = DensityMatrix::diagonal(&[0.5, 0.5]).unwrap();
        assert!(quantum_relative_entropy(&mixed, &plain).unwrap().abs() < 1e-15);
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::diagonal(&[0.5, 0.6]).is_err());
        assert!(DensityMatrix::diagonal(&[1.5, -0.5]).is_err());
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(von_neumann_entropy(&DensityMatrix::diagonal(&[1.0, 0.0]).unwrap()).unwrap(), 0.0);
        let n = 5;
        let uniform = DensityMatrix::diagonal(&vec![1.0 / n as f64; n]).unwrap();
        assert_relative_eq!(von_neumann_entropy(&uniform).unwrap(), (n as f64).ln(), max_relative = 1e-14);
        let s = von_neumann_entropy(&DensityMatrix::diagonal(&[0.25, 0.75]).unwrap()).unwrap();
        let expected = -0.25 * 0.25f64.ln() - 0.75 * 0.75f64.ln();
        assert_relative_eq!(s, expected, max_relative = 1e-15);
        assert_relative_eq!(s, 0.5623351446188083, max_relative = 1e-15);
    }

    #[test]
    fn q_trace_examples() {
        let eye = HermitianMatrix::identity(2);
        let v = q_trace_gap(&eye, &eye, 0.5, 1.5).unwrap();
        assert!(v.verdict.gap.abs() < 1e-15);

        let (a, b) = pair(&[1.0, 2.0], &[2.0, 1.0]);
        let scalar = q_log_sum_gap(&SequencePair::new(vec![1.0, 2.0], vec![2.0, 1.0]).unwrap(), 0.5, 1.0).unwrap();
        let v = q_trace_gap(&a, &b, 0.5, 1.0).unwrap();
        assert_relative_eq!(v.verdict.gap, scalar.gap, max_relative = 1e-12);
        assert_relative_eq!(v.matrix_lhs, scalar.lhs, max_relative = 1e-12);
        assert!(v.passes());

        let v = q_trace_gap(&a, &b, 3.0, 1.0).unwrap();
        assert!(v.verdict.gap >= 0.0 && v.passes());
    }

    #[test]
    fn reverse_trace_examples() {
        let (log, id) = (FunctionSpec::log(), FunctionSpec::identity());
        let (a, _) = pair(&[1.5, 4.0], &[1.0, 1.0]);
        assert!(reverse_trace_gap(&log, &id, &a, &a).unwrap().verdict.gap.abs() < 1e-15);

        let (a, b) = pair(&[2.0, 1.0], &[1.0, 2.0]);
        let v = reverse_trace_gap(&log, &id, &a, &b).unwrap();
        assert_relative_eq!(v.verdict.gap, LN_2, max_relative = 1e-12);
        assert!(v.passes());

        let (a, b) = pair(&[1.0, 1.0], &[3.0, 3.0]);
        let v = reverse_trace_gap(&log, &id, &a, &b).unwrap();
        assert!(v.verdict.gap.abs() < 1e-14);
    }

    #[test]
    fn entropy_bound_specialization() {
        let rho = HermitianMatrix::diagonal(&[0.1, 0.2, 0.7]);
        let v = entropy_bound_gap(&rho).unwrap();
        // trace[A log A] >= -log n when trace A = 1
        assert_relative_eq!(v.verdict.rhs, -(3f64).ln(), max_relative = 1e-14);
        assert!(v.passes());
    }
}
