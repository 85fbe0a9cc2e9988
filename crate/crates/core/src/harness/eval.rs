//! One-shot evaluation of a single operation from a JSON input file.
//!
//! The input is an object whose fields are the operation's arguments;
//! matrices use the exchange format. Unused fields are ignored.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::deformed_log::{q_log, q_log_product, q_log_quotient, q_log_reciprocal, QLogParams};
use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::loewner_ineq::{
    hansen_jensen_residual, intermediate_57_residual, lemma9_residual, operator_shannon_residual, perspective,
    theorem10_residual_1, theorem10_residual_2, theorem6_form, theorem6_residual, MatrixFamily,
    OperatorFunctionSpec,
};
use crate::matfun::{
    apply_function, default_inverse_floor, hermitize, loewner_leq, make_commuting_pair, psd_inverse, psd_sqrt,
    spectral_decompose, CMatrix, ExchangeMatrix, HermitianMatrix,
};
use crate::scalar_ineq::{
    convexity_check, generalized_log_sum_gap, q_log_sum_gap, rational_example_gap, ratio_bounds,
    reverse_log_sum_gap, CurvatureKind, SequencePair, CONVEXITY_GRID, DEFAULT_TOLERANCE,
};
use crate::trace_ineq::{
    entropy_bound_gap, exp_log_trace_gap, q_trace_gap, quantum_relative_entropy, reverse_trace_gap,
    trace_log_sum_gap, von_neumann_entropy, DensityMatrix,
};

pub const OPS: &[&str] = &[
    "q_log",
    "q_log_product",
    "q_log_quotient",
    "q_log_reciprocal",
    "ratio_bounds",
    "convexity_check",
    "generalized_log_sum",
    "reverse_log_sum",
    "rational_example",
    "q_log_sum",
    "hermitize",
    "spectral_decompose",
    "apply_function",
    "loewner_leq",
    "make_commuting_pair",
    "psd_inverse",
    "psd_sqrt",
    "trace_log_sum",
    "exp_log_trace",
    "quantum_relative_entropy",
    "von_neumann_entropy",
    "entropy_bound",
    "q_trace",
    "reverse_trace",
    "perspective",
    "hansen_jensen",
    "theorem6",
    "theorem6_form",
    "operator_shannon",
    "lemma9",
    "theorem10_1",
    "theorem10_2",
    "intermediate_57",
];

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct EvalInput {
    pub x_value: Option<f64>,
    pub y_value: Option<f64>,
    pub q: Option<f64>,
    pub r: Option<f64>,
    pub seq_a: Option<Vec<f64>>,
    pub seq_b: Option<Vec<f64>>,
    pub f: Option<FunctionSpec>,
    pub g: Option<FunctionSpec>,
    pub kind: Option<CurvatureKind>,
    pub interval: Option<(f64, f64)>,
    pub grid_points: Option<usize>,
    pub operator_function: Option<OperatorFunctionSpec>,
    pub a: Option<ExchangeMatrix>,
    pub b: Option<ExchangeMatrix>,
    pub a_i: Option<ExchangeMatrix>,
    pub b_i: Option<ExchangeMatrix>,
    pub u: Option<ExchangeMatrix>,
    pub x: Option<ExchangeMatrix>,
    pub contraction: Option<ExchangeMatrix>,
    pub a_family: Option<Vec<ExchangeMatrix>>,
    pub b_family: Option<Vec<ExchangeMatrix>>,
    pub x_family: Option<Vec<ExchangeMatrix>>,
    pub tol: Option<f64>,
    pub floor: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalOutput {
    pub op: String,
    /// Verdict of an inequality-valued operation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    pub result: Value,
}

fn need<'a, T>(v: &'a Option<T>, name: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::Config(format!("input field `{name}` is required")))
}

impl EvalInput {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("bad eval input: {e}")))
    }

    fn herm(&self, v: &Option<ExchangeMatrix>, name: &str) -> Result<HermitianMatrix> {
        need(v, name)?.to_hermitian()
    }

    fn raw(&self, v: &Option<ExchangeMatrix>, name: &str) -> Result<CMatrix> {
        need(v, name)?.to_matrix()
    }

    fn family(&self, v: &Option<Vec<ExchangeMatrix>>, name: &str) -> Result<MatrixFamily> {
        let members = need(v, name)?.iter().map(|m| m.to_hermitian()).collect::<Result<Vec<_>>>()?;
        MatrixFamily::new(members)
    }

    fn pair(&self) -> Result<SequencePair> {
        SequencePair::new(need(&self.seq_a, "seq_a")?.clone(), need(&self.seq_b, "seq_b")?.clone())
    }

    fn params(&self) -> Result<QLogParams> {
        QLogParams::new(*need(&self.q, "q")?)
    }

    fn tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TOLERANCE)
    }

    fn op_fn(&self) -> Result<&OperatorFunctionSpec> {
        need(&self.operator_function, "operator_function")
    }
}

fn exchange(h: &HermitianMatrix) -> Value {
    json!(ExchangeMatrix::from_matrix(h.matrix()))
}

fn value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Evaluates `op` on `input`.
pub fn evaluate(op: &str, input: &EvalInput) -> Result<EvalOutput> {
    let i = input;
    let (holds, result): (Option<bool>, Value) = match op {
        "q_log" => (None, json!(q_log(*need(&i.x_value, "x_value")?, &i.params()?)?)),
        "q_log_product" => (
            None,
            json!(q_log_product(*need(&i.x_value, "x_value")?, *need(&i.y_value, "y_value")?, &i.params()?)?),
        ),
        "q_log_quotient" => (
            None,
            json!(q_log_quotient(*need(&i.x_value, "x_value")?, *need(&i.y_value, "y_value")?, &i.params()?)?),
        ),
        "q_log_reciprocal" => (None, json!(q_log_reciprocal(*need(&i.y_value, "y_value")?, &i.params()?)?)),
        "ratio_bounds" => (None, value(&ratio_bounds(need(&i.g, "g")?, &i.pair()?)?)),
        "convexity_check" => {
            let ok = convexity_check(
                *need(&i.kind, "kind")?,
                need(&i.f, "f")?,
                *need(&i.interval, "interval")?,
                i.grid_points.unwrap_or(CONVEXITY_GRID),
            )?;
            (Some(ok), json!(ok))
        }
        "generalized_log_sum" => {
            let v = generalized_log_sum_gap(need(&i.f, "f")?, need(&i.g, "g")?, &i.pair()?)?.with_tolerance(i.tol());
            (Some(v.holds), value(&v))
        }
        "reverse_log_sum" => {
            let v = reverse_log_sum_gap(need(&i.f, "f")?, need(&i.g, "g")?, &i.pair()?)?.with_tolerance(i.tol());
            (Some(v.holds), value(&v))
        }
        "rational_example" => {
            let v = rational_example_gap(&i.pair()?)?.with_tolerance(i.tol());
            (Some(v.holds), value(&v))
        }
        "q_log_sum" => {
            let v = q_log_sum_gap(&i.pair()?, *need(&i.q, "q")?, i.r.unwrap_or(1.0))?.with_tolerance(i.tol());
            (Some(v.holds), value(&v))
        }
        "hermitize" => (None, exchange(&hermitize(&i.raw(&i.a, "a")?)?)),
        "spectral_decompose" => {
            let sd = spectral_decompose(&i.herm(&i.a, "a")?)?;
            (
                None,
                json!({ "eigenvalues": sd.eigenvalues, "unitary": ExchangeMatrix::from_matrix(&sd.unitary) }),
            )
        }
        "apply_function" => (None, exchange(&apply_function(need(&i.f, "f")?, &i.herm(&i.a, "a")?)?)),
        "loewner_leq" => {
            let v = loewner_leq(&i.herm(&i.a, "a")?, &i.herm(&i.b, "b")?, i.tol())?;
            (Some(v.holds), value(&v))
        }
        "make_commuting_pair" => {
            let (a, b) = make_commuting_pair(&i.raw(&i.u, "u")?, need(&i.seq_a, "seq_a")?, need(&i.seq_b, "seq_b")?)?;
            (None, json!({ "a": exchange(&a), "b": exchange(&b) }))
        }
        "psd_inverse" => {
            let a = i.herm(&i.a, "a")?;
            let floor = i.floor.unwrap_or_else(|| default_inverse_floor(&a));
            (None, exchange(&psd_inverse(&a, floor)?))
        }
        "psd_sqrt" => (None, exchange(&psd_sqrt(&i.herm(&i.a, "a")?)?)),
        "trace_log_sum" => {
            let v = trace_log_sum_gap(need(&i.f, "f")?, need(&i.g, "g")?, &i.herm(&i.a, "a")?, &i.herm(&i.b, "b")?)?;
            (Some(v.passes()), value(&v))
        }
        "exp_log_trace" => {
            let v = exp_log_trace_gap(&i.herm(&i.a, "a")?, &i.herm(&i.b, "b")?)?;
            (Some(v.trace.passes()), value(&v))
        }
        "quantum_relative_entropy" => {
            let rho = DensityMatrix::new(i.herm(&i.a, "a")?)?;
            let sigma = DensityMatrix::new(i.herm(&i.b, "b")?)?;
            let d = quantum_relative_entropy(&rho, &sigma)?;
            (Some(d >= -i.tol()), json!(d))
        }
        "von_neumann_entropy" => {
            let rho = DensityMatrix::new(i.herm(&i.a, "a")?)?;
            let s = von_neumann_entropy(&rho)?;
            let ln_n = (rho.dim() as f64).ln();
            (Some(s >= -i.tol() && s <= ln_n + i.tol()), json!(s))
        }
        "entropy_bound" => {
            let v = entropy_bound_gap(&i.herm(&i.a, "a")?)?;
            (Some(v.passes()), value(&v))
        }
        "q_trace" => {
            let v = q_trace_gap(&i.herm(&i.a, "a")?, &i.herm(&i.b, "b")?, *need(&i.q, "q")?, i.r.unwrap_or(1.0))?;
            (Some(v.passes()), value(&v))
        }
        "reverse_trace" => {
            let v = reverse_trace_gap(need(&i.f, "f")?, need(&i.g, "g")?, &i.herm(&i.a, "a")?, &i.herm(&i.b, "b")?)?;
            (Some(v.passes()), value(&v))
        }
        "perspective" => (None, exchange(&perspective(i.op_fn()?, &i.herm(&i.a, "a")?, &i.herm(&i.b, "b")?)?)),
        "hansen_jensen" => {
            let v = hansen_jensen_residual(i.op_fn()?, &i.raw(&i.contraction, "contraction")?, &i.herm(&i.x, "x")?)?
                .with_tolerance(i.tol());
            (Some(v.holds), value(&v))
        }
        "theorem6" | "theorem6_form" => {
            let (a, b) = (i.family(&i.a_family, "a_family")?, i.family(&i.b_family, "b_family")?);
            let o = if op == "theorem6" {
                theorem6_residual(i.op_fn()?, &a, &b)?
            } else {
                theorem6_form(i.op_fn()?, &a, &b)?
            };
            let holds = o.verdict.with_tolerance(i.tol()).holds
                && o.image_sum_verdict.is_none_or(|v| v.with_tolerance(i.tol()).holds);
            (Some(holds), value(&o))
        }
        "operator_shannon" => {
            let v = operator_shannon_residual(
                &i.family(&i.a_family, "a_family")?,
                &i.family(&i.b_family, "b_family")?,
                i.op_fn()?,
            )?
            .with_tolerance(i.tol());
            (Some(v.holds), value(&v))
        }
        "lemma9" => {
            let x = need(&i.x_family, "x_family")?
                .iter()
                .map(|m| m.to_matrix())
                .collect::<Result<Vec<_>>>()?;
            let v = lemma9_residual(&x, &i.family(&i.a_family, "a_family")?)?.with_tolerance(i.tol());
            (Some(v.holds), value(&v))
        }
        "theorem10_1" | "theorem10_2" => {
            let (a, b) = (i.family(&i.a_family, "a_family")?, i.family(&i.b_family, "b_family")?);
            let v = if op == "theorem10_1" {
                theorem10_residual_1(i.op_fn()?, &a, &b)?
            } else {
                theorem10_residual_2(i.op_fn()?, &a, &b)?
            }
            .with_tolerance(i.tol());
            (Some(v.holds), value(&v))
        }
        "intermediate_57" => {
            let v = intermediate_57_residual(
                i.op_fn()?,
                &i.herm(&i.a_i, "a_i")?,
                &i.herm(&i.b_i, "b_i")?,
                &i.herm(&i.a, "a")?,
                &i.herm(&i.b, "b")?,
            )?
            .with_tolerance(i.tol());
            (Some(v.holds), value(&v))
        }
        other => return Err(Error::Config(format!("unknown op `{other}`"))),
    };
    Ok(EvalOutput {
        op: op.to_string(),
        holds,
        result,
    })
}
