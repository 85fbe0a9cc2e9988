//! Closed descriptions of the scalar functions used as `f`, `g` and `h`.

use serde::{Deserialize, Serialize};

use crate::deformed_log::{q_log, QLogParams};
use crate::error::{Error, Result};

/// Shape property a caller may claim for a function; claims are checked
/// numerically before the function is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeclaredClass {
    /// `x f(x)` is convex.
    XfxConvex,
    /// `x f(1/x)` is concave.
    Xf1overxConcave,
    OperatorMonotone,
    OperatorConcave,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FunctionFamily {
    Log,
    QLog { q: f64 },
    Power { r: f64 },
    /// `x / (x^2 + 2)`
    RationalXOverX2Plus2,
    Identity,
    Exp,
    /// Piecewise-linear interpolation through `(x, y)` nodes with strictly
    /// increasing `x`; the domain is the closed node range.
    Tabulated { grid: Vec<(f64, f64)> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpec {
    #[serde(flatten)]
    pub family: FunctionFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_class: Option<DeclaredClass>,
}

impl From<FunctionFamily> for FunctionSpec {
    fn from(family: FunctionFamily) -> Self {
        Self {
            family,
            declared_class: None,
        }
    }
}

impl FunctionSpec {
    pub fn log() -> Self {
        FunctionFamily::Log.into()
    }

    pub fn q_log(q: f64) -> Self {
        FunctionFamily::QLog { q }.into()
    }

    pub fn power(r: f64) -> Self {
        FunctionFamily::Power { r }.into()
    }

    pub fn rational() -> Self {
        FunctionFamily::RationalXOverX2Plus2.into()
    }

    pub fn identity() -> Self {
        FunctionFamily::Identity.into()
    }

    pub fn exp() -> Self {
        FunctionFamily::Exp.into()
    }

    pub fn tabulated(grid: Vec<(f64, f64)>) -> Result<Self> {
        let spec: Self = FunctionFamily::Tabulated { grid }.into();
        spec.validate()?;
        Ok(spec)
    }

    pub fn declared(mut self, class: DeclaredClass) -> Self {
        self.declared_class = Some(class);
        self
    }

    /// Checks the family parameters.
    pub fn validate(&self) -> Result<()> {
        match &self.family {
            FunctionFamily::QLog { q } => QLogParams::new(*q).map(|_| ()),
            FunctionFamily::Power { r } if !r.is_finite() || *r == 0.0 => Err(Error::Domain(
                format!("power exponent must be finite and nonzero, got {r}"),
            )),
            FunctionFamily::Tabulated { grid } => {
                if grid.len() < 2 {
                    return Err(Error::Domain("tabulated function needs at least two nodes".into()));
                }
                if grid.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
                    return Err(Error::Domain("tabulated nodes must be finite".into()));
                }
                if grid.windows(2).any(|w| w[0].0 >= w[1].0) {
                    return Err(Error::Domain("tabulated nodes must be strictly increasing".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Evaluates the function, rejecting arguments outside its domain.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("argument must be finite, got {x}")));
        }
        let value = match &self.family {
            FunctionFamily::Log => {
                if x <= 0.0 {
                    return Err(Error::Domain(format!("log of non-positive value {x}")));
                }
                x.ln()
            }
            FunctionFamily::QLog { q } => q_log(x, &QLogParams::new(*q)?)?,
            FunctionFamily::Power { r } => power(x, *r)?,
            FunctionFamily::RationalXOverX2Plus2 => x / (x * x + 2.0),
            FunctionFamily::Identity => x,
            FunctionFamily::Exp => x.exp(),
            FunctionFamily::Tabulated { grid } => interpolate(grid, x)?,
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Domain(format!("{} is not finite at {x}", self.name())))
        }
    }

    /// Whether a zero weight annihilates the term `0 * f(0)` by continuity
    /// (`0 log 0 = 0`, and likewise `0 ln_q 0 = 0` for `q < 2`).
    pub fn zero_weight_vanishes(&self) -> bool {
        match &self.family {
            FunctionFamily::Log => true,
            FunctionFamily::QLog { q } => *q < 2.0,
            _ => false,
        }
    }

    pub fn name(&self) -> String {
        match &self.family {
            FunctionFamily::Log => "log".into(),
            FunctionFamily::QLog { q } => format!("q_log(q={q})"),
            FunctionFamily::Power { r } => format!("power(r={r})"),
            FunctionFamily::RationalXOverX2Plus2 => "x/(x^2+2)".into(),
            FunctionFamily::Identity => "identity".into(),
            FunctionFamily::Exp => "exp".into(),
            FunctionFamily::Tabulated { grid } => format!("tabulated({} nodes)", grid.len()),
        }
    }
}

fn power(x: f64, r: f64) -> Result<f64> {
    if !r.is_finite() || r == 0.0 {
        return Err(Error::Domain(format!("power exponent must be finite and nonzero, got {r}")));
    }
    if x < 0.0 && r.fract() != 0.0 {
        return Err(Error::Domain(format!("negative base {x} with fractional exponent {r}")));
    }
    if x == 0.0 && r < 0.0 {
        return Err(Error::Domain(format!("zero base with negative exponent {r}")));
    }
    if r.fract() == 0.0 && r.abs() < i32::MAX as f64 {
        Ok(x.powi(r as i32))
    } else {
        Ok(x.powf(r))
    }
}

fn interpolate(grid: &[(f64, f64)], x: f64) -> Result<f64> {
    let (x0, _) = grid[0];
    let (xn, _) = grid[grid.len() - 1];
    if x < x0 || x > xn {
        return Err(Error::Domain(format!("{x} outside tabulated range [{x0}, {xn}]")));
    }
    let idx = grid.partition_point(|(xi, _)| *xi <= x);
    if idx >= grid.len() {
        return Ok(grid[grid.len() - 1].1);
    }
    let (xa, ya) = grid[idx - 1];
    let (xb, yb) = grid[idx];
    let t = (x - xa) / (xb - xa);
    Ok(ya + t * (yb - ya))
}
