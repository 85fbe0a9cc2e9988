//! Loewner-order inequalities for non-commuting positive definite families.
//!
//! Every check builds the residual `RHS - LHS` of a claimed `LHS <= RHS`
//! and judges it with [`LoewnerVerdict`]. The central object is the operator
//! perspective
//!
//! ```text
//! P_f(A, B) = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}
//! ```
//!
//! Operator classes (monotone, concave, convex) are taken from a fixed
//! catalog rather than tested numerically.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matfun::{
    default_inverse_floor, loewner_leq, max_norm, operator_norm, psd_inverse, psd_inverse_sqrt,
    psd_sqrt, require_positive_definite, spectral_decompose, CMatrix, HermitianMatrix, LoewnerVerdict, PSD_CLAMP,
};
use crate::scalar_ineq::{InequalityVerdict, DEFAULT_TOLERANCE};

/// Default relative tolerance for Loewner verdicts.
pub const DEFAULT_LOEWNER_TOLERANCE: f64 = 1e-9;
/// Slack on `‖contraction‖ <= 1`.
pub const CONTRACTION_SLACK: f64 = 1e-12;
/// `|f(1)|` allowed by the operator Shannon form.
pub const SHANNON_F1_TOLERANCE: f64 = 1e-12;
/// Relative mismatch tolerated between `Σ A_i` and `Σ B_i`.
pub const SUM_MATCH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum OperatorFamily {
    /// `t^r`
    Power { r: f64 },
    Log,
    /// `log(c + t)`, `c > 0`
    ShiftedLog { c: f64 },
    /// Piecewise-linear through `(t, f(t))` nodes; carries no operator class.
    Tabulated { grid: Vec<(f64, f64)> },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFlags {
    pub operator_monotone: bool,
    pub operator_concave: bool,
    pub operator_convex: bool,
}

impl ClassFlags {
    fn covers(&self, other: &ClassFlags) -> bool {
        (!other.operator_monotone || self.operator_monotone)
            && (!other.operator_concave || self.operator_concave)
            && (!other.operator_convex || self.operator_convex)
    }
}

/// `t ↦ family(t) + offset` with its catalog operator class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorFunctionSpec {
    #[serde(flatten)]
    pub family: OperatorFamily,
    #[serde(default)]
    pub offset: f64,
    /// Claimed classes; must be covered by the catalog.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared: Option<ClassFlags>,
}

impl OperatorFunctionSpec {
    pub fn new(family: OperatorFamily) -> Result<Self> {
        let spec = Self {
            family,
            offset: 0.0,
            declared: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn power(r: f64) -> Result<Self> {
        Self::new(OperatorFamily::Power { r })
    }

    pub fn log() -> Self {
        Self::new(OperatorFamily::Log).expect("log is always valid")
    }

    pub fn shifted_log(c: f64) -> Result<Self> {
        Self::new(OperatorFamily::ShiftedLog { c })
    }

    pub fn tabulated(grid: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(OperatorFamily::Tabulated { grid })
    }

    pub fn with_offset(mut self, offset: f64) -> Result<Self> {
        if !offset.is_finite() {
            return Err(Error::Domain(format!("offset must be finite, got {offset}")));
        }
        self.offset = offset;
        Ok(self)
    }

    /// Claims operator classes; rejected unless the catalog confirms them.
    pub fn declare(mut self, flags: ClassFlags) -> Result<Self> {
        self.declared = Some(flags);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        match &self.family {
            OperatorFamily::Power { r } if !r.is_finite() || *r == 0.0 => {
                return Err(Error::Domain(format!("power exponent must be finite and nonzero, got {r}")));
            }
            OperatorFamily::ShiftedLog { c } if !(c.is_finite() && *c > 0.0) => {
                return Err(Error::Domain(format!("shifted log needs c > 0, got {c}")));
            }
            OperatorFamily::Tabulated { grid } => {
                crate::function::FunctionSpec::tabulated(grid.clone())?;
            }
            _ => {}
        }
        if !self.offset.is_finite() {
            return Err(Error::Domain("offset must be finite".into()));
        }
        if let Some(claimed) = self.declared {
            if !self.catalog().covers(&claimed) {
                return Err(Error::Precondition(format!(
                    "{} does not have the declared operator class {claimed:?}",
                    self.name()
                )));
            }
        }
        Ok(())
    }

    /// Known operator classes of the family (offsets do not change them).
    pub fn catalog(&self) -> ClassFlags {
        match &self.family {
            OperatorFamily::Power { r } => {
                let r = *r;
                ClassFlags {
                    operator_monotone: r > 0.0 && r <= 1.0,
                    operator_concave: r > 0.0 && r <= 1.0,
                    operator_convex: (-1.0..0.0).contains(&r) || (1.0..=2.0).contains(&r),
                }
            }
            OperatorFamily::Log | OperatorFamily::ShiftedLog { .. } => ClassFlags {
                operator_monotone: true,
                operator_concave: true,
                operator_convex: false,
            },
            OperatorFamily::Tabulated { .. } => ClassFlags::default(),
        }
    }

    /// Lower end of the domain and whether it is included.
    pub fn domain_lower(&self) -> (f64, bool) {
        match &self.family {
            OperatorFamily::Power { r } if *r > 0.0 => (0.0, true),
            OperatorFamily::Power { .. } | OperatorFamily::Log => (0.0, false),
            OperatorFamily::ShiftedLog { c } => (-c, false),
            OperatorFamily::Tabulated { grid } => (grid[0].0, true),
        }
    }

    pub fn defined_at_zero(&self) -> bool {
        let (lo, closed) = self.domain_lower();
        lo < 0.0 || (lo == 0.0 && closed)
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        let v = match &self.family {
            OperatorFamily::Power { r } => crate::function::FunctionSpec::power(*r).eval(t)?,
            OperatorFamily::Log => crate::function::FunctionSpec::log().eval(t)?,
            OperatorFamily::ShiftedLog { c } => crate::function::FunctionSpec::log().eval(c + t)?,
            OperatorFamily::Tabulated { grid } => {
                crate::function::FunctionSpec::tabulated(grid.clone())?.eval(t)?
            }
        };
        Ok(v + self.offset)
    }

    /// `f(0)` if 0 is in the domain.
    pub fn value_at_zero(&self) -> Option<f64> {
        if self.defined_at_zero() {
            self.eval(0.0).ok()
        } else {
            None
        }
    }

    /// `f(X)`; eigenvalues within round-off below a closed zero endpoint are clamped to it.
    pub fn apply(&self, x: &HermitianMatrix) -> Result<HermitianMatrix> {
        let sd = spectral_decompose(x)?;
        let radius = sd.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let (lo, closed) = self.domain_lower();
        let clamp = lo == 0.0 && closed;
        sd.map(|t| {
            if clamp && t < 0.0 && t >= -PSD_CLAMP * radius.max(1.0) {
                self.eval(0.0)
            } else {
                self.eval(t)
            }
        })
    }

    pub fn name(&self) -> String {
        let base = match &self.family {
            OperatorFamily::Power { r } => format!("t^{r}"),
            OperatorFamily::Log => "log t".into(),
            OperatorFamily::ShiftedLog { c } => format!("log({c} + t)"),
            OperatorFamily::Tabulated { grid } => format!("tabulated({} nodes)", grid.len()),
        };
        if self.offset == 0.0 {
            base
        } else {
            format!("{base} {:+}", self.offset)
        }
    }

    fn require(&self, flag: fn(&ClassFlags) -> bool, what: &str) -> Result<()> {
        if flag(&self.catalog()) {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{} is not {what}", self.name())))
        }
    }
}

/// `m >= 1` square matrices of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFamily {
    members: Vec<HermitianMatrix>,
}

impl MatrixFamily {
    pub fn new(members: Vec<HermitianMatrix>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::Dimension("a family needs at least one member".into()))?;
        let n = first.dim();
        if let Some(bad) = members.iter().find(|x| x.dim() != n) {
            return Err(Error::Dimension(format!("family mixes {n}x{n} and {0}x{0}", bad.dim())));
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[HermitianMatrix] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.members[0].dim()
    }

    pub fn sum(&self) -> HermitianMatrix {
        HermitianMatrix::sum(&self.members).expect("uniform dimension")
    }

    pub fn require_positive_definite(&self, what: &str) -> Result<()> {
        for (i, x) in self.members.iter().enumerate() {
            require_positive_definite(x, &format!("{what}_{}", i + 1))?;
        }
        Ok(())
    }
}

fn check_pairing(a: &MatrixFamily, b: &MatrixFamily) -> Result<()> {
    if a.len() != b.len() || a.dim() != b.dim() {
        return Err(Error::Dimension(format!(
            "families of {} {}x{1} and {} {}x{3} matrices",
            a.len(),
            a.dim(),
            b.len(),
            b.dim()
        )));
    }
    Ok(())
}

fn inverse(x: &HermitianMatrix, what: &str) -> Result<HermitianMatrix> {
    psd_inverse(x, default_inverse_floor(x)).map_err(|e| match e {
        Error::Singular { min_eigenvalue, floor } => Error::Precondition(format!(
            "{what} is not invertible (min eigenvalue {min_eigenvalue:e} < {floor:e})"
        )),
        other => other,
    })
}

/// `P_f(A, B) = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}` for positive definite `A`.
pub fn perspective(f: &OperatorFunctionSpec, a: &HermitianMatrix, b: &HermitianMatrix) -> Result<HermitianMatrix> {
    let root = psd_sqrt(a)?;
    let inv_root = psd_inverse_sqrt(a, default_inverse_floor(a))?;
    f.apply(&b.sandwich(&inv_root)?)?.sandwich(&root)
}

/// Which side of the Hansen inequality is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HansenDirection {
    /// `f(C†XC) <= C†f(X)C` for operator convex `f` with `f(0) <= 0`.
    Convex,
    /// `C†f(X)C <= f(C†XC)` for operator monotone `f` on `[0, ∞)` with `f(0) >= 0`.
    Monotone,
}

/// Picks the applicable Hansen direction for `f`.
pub fn hansen_direction(f: &OperatorFunctionSpec) -> Result<HansenDirection> {
    let flags = f.catalog();
    match f.value_at_zero() {
        Some(f0) if flags.operator_convex && f0 <= 0.0 => Ok(HansenDirection::Convex),
        Some(f0) if flags.operator_monotone && f0 >= 0.0 => Ok(HansenDirection::Monotone),
        _ => Err(Error::Precondition(format!(
            "{} is neither operator convex with f(0) <= 0 nor operator monotone on [0, ∞) with f(0) >= 0",
            f.name()
        ))),
    }
}

/// Hansen's inequality for a contraction `C` and PSD `X`.
pub fn hansen_jensen_residual(
    f: &OperatorFunctionSpec,
    contraction: &CMatrix,
    x: &HermitianMatrix,
) -> Result<LoewnerVerdict> {
    let direction = hansen_direction(f)?;
    if contraction.nrows() != x.dim() || contraction.ncols() != x.dim() {
        return Err(Error::Dimension("contraction and X differ in size".into()));
    }
    let norm = operator_norm(contraction)?;
    if norm > 1.0 + CONTRACTION_SLACK {
        return Err(Error::Precondition(format!("‖C‖ = {norm} exceeds 1")));
    }
    let inner = f.apply(&x.congruence(contraction)?)?;
    let outer = f.apply(x)?.congruence(contraction)?;
    match direction {
        HansenDirection::Convex => loewner_leq(&inner, &outer, DEFAULT_LOEWNER_TOLERANCE),
        HansenDirection::Monotone => loewner_leq(&outer, &inner, DEFAULT_LOEWNER_TOLERANCE),
    }
}

/// The perspective sum inequality evaluated two ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Theorem6Outcome {
    /// `Σ P_f(A_i, B_i) <= P_f(A, B)`.
    pub verdict: LoewnerVerdict,
    /// `Σ f(B_i) <= P_f(A, B)`; evaluated only when `f(0) >= 0`.
    pub image_sum_verdict: Option<LoewnerVerdict>,
    /// `max_i ‖P_f(A_i, B_i) - f(B_i)‖ / max(1, ‖f(B_i)‖)`; large for
    /// non-commuting pairs, where the two do not coincide.
    pub identity_discrepancy: f64,
}

/// Both candidate left sides and the common right side.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem6Sides {
    /// `Σ P_f(A_i, B_i)`
    pub perspective_sum: HermitianMatrix,
    /// `Σ f(B_i)`, present when `f(0) >= 0`.
    pub image_sum: Option<HermitianMatrix>,
    /// `P_f(Σ A_i, Σ B_i)`
    pub rhs: HermitianMatrix,
    pub identity_discrepancy: f64,
}

impl Theorem6Sides {
    pub fn outcome(&self, tolerance: f64) -> Result<Theorem6Outcome> {
        Ok(Theorem6Outcome {
            verdict: loewner_leq(&self.perspective_sum, &self.rhs, tolerance)?,
            image_sum_verdict: match &self.image_sum {
                Some(lhs) => Some(loewner_leq(lhs, &self.rhs, tolerance)?),
                None => None,
            },
            identity_discrepancy: self.identity_discrepancy,
        })
    }
}

pub fn theorem6_sides(
    f: &OperatorFunctionSpec,
    a_family: &MatrixFamily,
    b_family: &MatrixFamily,
) -> Result<Theorem6Sides> {
    check_pairing(a_family, b_family)?;
    a_family.require_positive_definite("A")?;
    b_family.require_positive_definite("B")?;
    let terms = a_family
        .members()
        .iter()
        .zip(b_family.members())
        .map(|(a, b)| perspective(f, a, b))
        .collect::<Result<Vec<_>>>()?;
    let images = b_family.members().iter().map(|b| f.apply(b)).collect::<Result<Vec<_>>>()?;
    let identity_discrepancy = terms.iter().zip(&images).fold(0.0f64, |acc, (t, img)| {
        acc.max(max_norm(&(t.matrix() - img.matrix())) / img.max_norm().max(1.0))
    });
    let image_sum = match f.value_at_zero() {
        Some(f0) if f0 >= 0.0 => Some(HermitianMatrix::sum(&images)?),
        _ => None,
    };
    Ok(Theorem6Sides {
        perspective_sum: HermitianMatrix::sum(&terms)?,
        image_sum,
        rhs: perspective(f, &a_family.sum(), &b_family.sum())?,
        identity_discrepancy,
    })
}

/// Evaluates both forms without the expansivity hypothesis.
pub fn theorem6_form(
    f: &OperatorFunctionSpec,
    a_family: &MatrixFamily,
    b_family: &MatrixFamily,
) -> Result<Theorem6Outcome> {
    theorem6_sides(f, a_family, b_family)?.outcome(DEFAULT_LOEWNER_TOLERANCE)
}

fn require_expansive(a: &HermitianMatrix, m: usize) -> Result<()> {
    let floor = HermitianMatrix::identity(a.dim()).scaled(m as f64);
    let v = loewner_leq(&floor, a, DEFAULT_LOEWNER_TOLERANCE)?;
    if !v.holds {
        return Err(Error::Precondition(format!(
            "Σ A_i is not >= {m} I (min eigenvalue of Σ A_i - mI is {:e})",
            v.residual_min_eigenvalue
        )));
    }
    Ok(())
}

/// The perspective sum inequality under its hypotheses: `f` operator
/// concave, all members positive definite and `Σ A_i >= m I`.
pub fn theorem6_residual(
    f: &OperatorFunctionSpec,
    a_family: &MatrixFamily,
    b_family: &MatrixFamily,
) -> Result<Theorem6Outcome> {
    f.require(|c| c.operator_concave, "operator concave")?;
    check_pairing(a_family, b_family)?;
    a_family.require_positive_definite("A")?;
    require_expansive(&a_family.sum(), a_family.len())?;
    theorem6_form(f, a_family, b_family)
}

/// `Σ P_f(A_i, B_i) <= 0` when `Σ A_i = Σ B_i >= m I` and `f(1) = 0`.
pub fn operator_shannon_residual(
    a_family: &MatrixFamily,
    b_family: &MatrixFamily,
    f: &OperatorFunctionSpec,
) -> Result<LoewnerVerdict> {
    f.require(|c| c.operator_concave, "operator concave")?;
    let f1 = f.eval(1.0)?;
    if f1.abs() > SHANNON_F1_TOLERANCE {
        return Err(Error::Precondition(format!("f(1) = {f1:e}, not 0")));
    }
    check_pairing(a_family, b_family)?;
    a_family.require_positive_definite("A")?;
    b_family.require_positive_definite("B")?;
    let (sa, sb) = (a_family.sum(), b_family.sum());
    let mismatch = max_norm(&(sa.matrix() - sb.matrix()));
    if mismatch > SUM_MATCH_TOLERANCE * sa.max_norm().max(1.0) {
        return Err(Error::Precondition(format!("Σ A_i and Σ B_i differ by {mismatch:e}")));
    }
    require_expansive(&sa, a_family.len())?;
    let terms = a_family
        .members()
        .iter()
        .zip(b_family.members())
        .map(|(a, b)| perspective(f, a, b))
        .collect::<Result<Vec<_>>>()?;
    let operand_scale = terms.iter().fold(0.0f64, |m, t| m.max(t.max_norm()));
    let residual = HermitianMatrix::sum(&terms)?.scaled(-1.0);
    LoewnerVerdict::from_residual(&residual, operand_scale, DEFAULT_LOEWNER_TOLERANCE)
}

/// `Σ X_i† A_i⁻¹ X_i >= (Σ X_i)† (Σ A_i)⁻¹ (Σ X_i)`.
pub fn lemma9_residual(x_family: &[CMatrix], a_family: &MatrixFamily) -> Result<LoewnerVerdict> {
    let n = a_family.dim();
    if x_family.len() != a_family.len() || x_family.iter().any(|x| x.nrows() != n || x.ncols() != n) {
        return Err(Error::Dimension("X family does not match the A family".into()));
    }
    a_family.require_positive_definite("A")?;
    let lhs = x_family
        .iter()
        .zip(a_family.members())
        .map(|(x, a)| inverse(a, "A_i")?.congruence(x))
        .collect::<Result<Vec<_>>>()?;
    let lhs = HermitianMatrix::sum(&lhs)?;
    let x_sum = x_family.iter().fold(CMatrix::zeros(n, n), |acc, x| acc + x);
    let rhs = inverse(&a_family.sum(), "Σ A_i")?.congruence(&x_sum)?;
    loewner_leq(&rhs, &lhs, DEFAULT_LOEWNER_TOLERANCE)
}

fn require_theorem10_function(f: &OperatorFunctionSpec) -> Result<()> {
    f.require(|c| c.operator_monotone, "operator monotone")?;
    match f.value_at_zero() {
        Some(f0) if f0 >= 0.0 => Ok(()),
        _ => Err(Error::Precondition(format!(
            "{} must be defined on [0, ∞) with f(0) >= 0",
            f.name()
        ))),
    }
}

/// `f(Y^{1/2} X⁻¹ Y^{1/2})` and `Y^{1/2} [f(Y^{1/2} X⁻¹ Y^{1/2})]⁻¹ Y^{1/2}`.
struct MeanParts {
    image: HermitianMatrix,
    sandwiched_inverse: HermitianMatrix,
}

fn mean_parts(f: &OperatorFunctionSpec, x: &HermitianMatrix, y: &HermitianMatrix) -> Result<MeanParts> {
    let y_root = psd_sqrt(y)?;
    let image = f.apply(&inverse(x, "A")?.sandwich(&y_root)?)?;
    let sandwiched_inverse = inverse(&image, "f(B^{1/2} A⁻¹ B^{1/2})")?.sandwich(&y_root)?;
    Ok(MeanParts {
        image,
        sandwiched_inverse,
    })
}

fn theorem10_setup(
    f: &OperatorFunctionSpec,
    a_family: &MatrixFamily,
    b_family: &MatrixFamily,
) -> Result<(Vec<MeanParts>, MeanParts)> {
    require_theorem10_function(f)?;
    check_pairing(a_family, b_family)?;
    a_family.require_positive_definite("A")?;
    b_family.require_positive_definite("B")?;
    let parts = a_family
        .members()
        .iter()
        .zip(b_family.members())
        .map(|(a, b)| mean_parts(f, a, b))
        .collect::<Result<Vec<_>>>()?;
    let total = mean_parts(f, &a_family.sum(), &b_family.sum())?;
    Ok((parts, total))
}

fn sum_of_roots(family: &MatrixFamily) -> Result<HermitianMatrix> {
    let roots = family.members().iter().map(psd_sqrt).collect::<Result<Vec<_>>>()?;
    HermitianMatrix::sum(&roots)
}

/// `(1/m)(Σ B_i^{1/2}) [Σ f(B_i^{1/2} A_i⁻¹ B_i^{1/2})]⁻¹ (Σ B_i^{1/2}) <= B^{1/2} [f(B^{1/2} A⁻¹ B^{1/2})]⁻¹ B^{1/2}`.
pub fn theorem10_residual_1(
    f: &OperatorFunctionSpec,
    a_family: &MatrixFamily,
    b_family: &MatrixFamily,
) -> Result<LoewnerVerdict> {
    let (parts, total) = theorem10_setup(f, a_family, b_family)?;
    let images = parts.into_iter().map(|p| p.image).collect::<Vec<_>>();
    let inv = inverse(&HermitianMatrix::sum(&images)?, "Σ f(B_i^{1/2} A_i⁻¹ B_i^{1/2})")?;
    let lhs = inv.sandwich(&sum_of_roots(b_family)?)?.scaled(1.0 / a_family.len() as f64);
    loewner_leq(&lhs, &total.sandwiched_inverse, DEFAULT_LOEWNER_TOLERANCE)
}

/// `Σ A_i^{1/2} B_i^{1/2} [f(B_i^{1/2} A_i⁻¹ B_i^{1/2})]⁻¹ B_i^{1/2} A_i^{1/2}
///  <= (1/m)(Σ A_i^{1/2}) B^{1/2} [f(B^{1/2} A⁻¹ B^{1/2})]⁻¹ B^{1/2} (Σ A_i^{1/2})`.
///
/// This claim is false in general: already for 1×1 families with
/// `a = b = (100, 1)` and `f = √t` the left side is 10001 and the right
/// side 6110.5. It is evaluated exactly as stated.
pub fn theorem10_residual_2(
    f: &OperatorFunctionSpec,
    a_family: &MatrixFamily,
    b_family: &MatrixFamily,
) -> Result<LoewnerVerdict> {
    let (parts, total) = theorem10_setup(f, a_family, b_family)?;
    let terms = parts
        .iter()
        .zip(a_family.members())
        .map(|(p, a)| p.sandwiched_inverse.sandwich(&psd_sqrt(a)?))
        .collect::<Result<Vec<_>>>()?;
    let lhs = HermitianMatrix::sum(&terms)?;
    let rhs = total
        .sandwiched_inverse
        .sandwich(&sum_of_roots(a_family)?)?
        .scaled(1.0 / a_family.len() as f64);
    loewner_leq(&lhs, &rhs, DEFAULT_LOEWNER_TOLERANCE)
}

/// `B_i^{1/2} [f(B_i^{1/2} A_i⁻¹ B_i^{1/2})]⁻¹ B_i^{1/2} <= B^{1/2} [f(B^{1/2} A⁻¹ B^{1/2})]⁻¹ B^{1/2}`
/// for `A >= A_i` and `B > B_i`.
pub fn intermediate_57_residual(
    f: &OperatorFunctionSpec,
    a_i: &HermitianMatrix,
    b_i: &HermitianMatrix,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<LoewnerVerdict> {
    require_theorem10_function(f)?;
    for (x, what) in [(a_i, "A_i"), (b_i, "B_i"), (a, "A"), (b, "B")] {
        require_positive_definite(x, what)?;
    }
    let a_gap = loewner_leq(a_i, a, DEFAULT_LOEWNER_TOLERANCE)?;
    if !a_gap.holds {
        return Err(Error::Precondition("A - A_i is not positive semidefinite".into()));
    }
    let b_gap = b.sub(b_i)?;
    require_positive_definite(&b_gap, "B - B_i")?;
    let lhs = mean_parts(f, a_i, b_i)?.sandwiched_inverse;
    let rhs = mean_parts(f, a, b)?.sandwiched_inverse;
    loewner_leq(&lhs, &rhs, DEFAULT_LOEWNER_TOLERANCE)
}

fn scalar_inputs(a: &[f64], b: &[f64]) -> Result<()> {
    if a.is_empty() || a.len() != b.len() {
        return Err(Error::Dimension("scalar families must be non-empty and of equal length".into()));
    }
    if a.iter().chain(b).any(|&v| !(v.is_finite() && v > 0.0)) {
        return Err(Error::Precondition("scalar families must be positive".into()));
    }
    Ok(())
}

/// `Σ a_i f(b_i/a_i) <= a f(b/a)`, the 1×1 perspective sum inequality.
pub fn perspective_scalar_gap(f: &OperatorFunctionSpec, a: &[f64], b: &[f64]) -> Result<InequalityVerdict> {
    scalar_inputs(a, b)?;
    let lhs = a.iter().zip(b).map(|(&x, &y)| Ok(x * f.eval(y / x)?)).sum::<Result<f64>>()?;
    let (sa, sb) = (a.iter().sum::<f64>(), b.iter().sum::<f64>());
    Ok(InequalityVerdict::less_eq(lhs, sa * f.eval(sb / sa)?, DEFAULT_TOLERANCE))
}

/// `(1/m)(Σ b_i^{1/2})² [Σ f(b_i/a_i)]⁻¹ <= b [f(b/a)]⁻¹`.
pub fn theorem10_scalar_gap_1(f: &OperatorFunctionSpec, a: &[f64], b: &[f64]) -> Result<InequalityVerdict> {
    scalar_inputs(a, b)?;
    let m = a.len() as f64;
    let root_sum: f64 = b.iter().map(|v| v.sqrt()).sum();
    let f_sum = a.iter().zip(b).map(|(&x, &y)| f.eval(y / x)).sum::<Result<f64>>()?;
    let (sa, sb) = (a.iter().sum::<f64>(), b.iter().sum::<f64>());
    let lhs = root_sum * root_sum / (m * f_sum);
    let rhs = sb / f.eval(sb / sa)?;
    Ok(InequalityVerdict::less_eq(lhs, rhs, DEFAULT_TOLERANCE))
}

/// `Σ a_i b_i [f(b_i/a_i)]⁻¹ <= (1/m)(Σ a_i^{1/2})² b [f(b/a)]⁻¹`.
pub fn theorem10_scalar_gap_2(f: &OperatorFunctionSpec, a: &[f64], b: &[f64]) -> Result<InequalityVerdict> {
    scalar_inputs(a, b)?;
    let m = a.len() as f64;
    let lhs = a.iter().zip(b).map(|(&x, &y)| Ok(x * y / f.eval(y / x)?)).sum::<Result<f64>>()?;
    let root_sum: f64 = a.iter().map(|v| v.sqrt()).sum();
    let (sa, sb) = (a.iter().sum::<f64>(), b.iter().sum::<f64>());
    let rhs = root_sum * root_sum * sb / (m * f.eval(sb / sa)?);
    Ok(InequalityVerdict::less_eq(lhs, rhs, DEFAULT_TOLERANCE))
}
