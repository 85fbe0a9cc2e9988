//! Scalar generalized log-sum inequalities.
//!
//! Forward form, for `g(b_i) > 0` and `x f(x)` convex on the ratio range:
//!
//! ```text
//! Σ g(a_i) f(g(a_i)/g(b_i))  >=  (Σ g(a_i)) f(Σ g(a_i) / Σ g(b_i))
//! ```
//!
//! Reverse form, for `g(a_i), g(b_i) > 0` and `x f(1/x)` concave on the ratio range:
//!
//! ```text
//! Σ g(a_i) f(g(b_i)/g(a_i))  <=  (Σ g(a_i)) f(Σ g(b_i) / Σ g(a_i))
//! ```
//!
//! Convexity hypotheses are verified numerically on a uniform grid over
//! `[m_g, M_g]` because [`FunctionSpec`] admits tabulated functions.

use serde::{Deserialize, Serialize};

use crate::deformed_log::{q_log, QLogParams};
use crate::error::{Error, Result};
pub use crate::function::{DeclaredClass, FunctionFamily, FunctionSpec};

/// Relative tolerance on signed gaps, measured against `max(1, |lhs|, |rhs|)`.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Grid size used for convexity preconditions.
pub const CONVEXITY_GRID: usize = 101;
/// Second divided differences may dip this far below zero and still count as convex.
pub const CURVATURE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequencePair {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl SequencePair {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Dimension("sequences must be non-empty".into()));
        }
        if a.len() != b.len() {
            return Err(Error::Dimension(format!(
                "sequence lengths differ: {} vs {}",
                a.len(),
                b.len()
            )));
        }
        if a.iter().chain(&b).any(|v| !v.is_finite()) {
            return Err(Error::Domain("sequence entries must be finite".into()));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioBounds {
    pub min: f64,
    pub max: f64,
}

/// Outcome of one scalar (or trace) inequality evaluation.
///
/// `gap` is oriented so that the claimed inequality holds iff `gap >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityVerdict {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub tolerance: f64,
    pub holds: bool,
}

impl InequalityVerdict {
    /// Claim `lhs >= rhs`.
    pub fn greater_eq(lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::from_gap(lhs, rhs, lhs - rhs, tolerance)
    }

    /// Claim `lhs <= rhs`.
    pub fn less_eq(lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::from_gap(lhs, rhs, rhs - lhs, tolerance)
    }

    fn from_gap(lhs: f64, rhs: f64, gap: f64, tolerance: f64) -> Self {
        let scale = 1f64.max(lhs.abs()).max(rhs.abs());
        Self {
            lhs,
            rhs,
            gap,
            tolerance,
            holds: gap >= -tolerance * scale,
        }
    }

    pub fn scale(&self) -> f64 {
        1f64.max(self.lhs.abs()).max(self.rhs.abs())
    }

    /// Gap divided by [`Self::scale`].
    pub fn margin(&self) -> f64 {
        self.gap / self.scale()
    }

    pub fn with_tolerance(self, tolerance: f64) -> Self {
        Self::from_gap(self.lhs, self.rhs, self.gap, tolerance)
    }
}

/// Which auxiliary function a curvature check is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurvatureKind {
    /// `h(x) = x f(x)` must be convex.
    Xfx,
    /// `h(x) = x f(1/x)` must be concave.
    Xf1overx,
}

fn curvature_h(kind: CurvatureKind, f: &FunctionSpec, x: f64) -> Result<f64> {
    match kind {
        CurvatureKind::Xfx => {
            if x == 0.0 && f.zero_weight_vanishes() {
                Ok(0.0)
            } else {
                Ok(x * f.eval(x)?)
            }
        }
        CurvatureKind::Xf1overx => {
            if x == 0.0 {
                return Err(Error::Domain("x f(1/x) is undefined at 0".into()));
            }
            Ok(x * f.eval(1.0 / x)?)
        }
    }
}

/// Checks convexity of `x f(x)` (or concavity of `x f(1/x)`) through second
/// divided differences on a uniform grid.
///
/// The slack is [`CURVATURE_SLACK`] plus the round-off floor of the divided
/// difference, `64 eps (max|h| + max|x| |h'|) / d^2`, so narrow intervals
/// (down to a few ulps wide) do not produce spurious failures.
pub fn convexity_check(
    kind: CurvatureKind,
    f: &FunctionSpec,
    interval: (f64, f64),
    grid_points: usize,
) -> Result<bool> {
    let (lo, hi) = interval;
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::Precondition(format!("degenerate interval [{lo}, {hi}]")));
    }
    if grid_points < 3 {
        return Err(Error::Precondition(format!("need at least 3 grid points, got {grid_points}")));
    }
    let step = (hi - lo) / (grid_points - 1) as f64;
    let h = (0..grid_points)
        .map(|i| {
            let x = if i == grid_points - 1 { hi } else { lo + step * i as f64 };
            curvature_h(kind, f, x)
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = h.windows(3).all(|w| {
        let dd = (w[0] - 2.0 * w[1] + w[2]) / (step * step);
        // Round-off in h and in the grid points themselves.
        let h_mag = w[0].abs().max(w[1].abs()).max(w[2].abs());
        let slope = (w[1] - w[0]).abs().max((w[2] - w[1]).abs()) / step;
        let noise = 64.0 * f64::EPSILON * (h_mag + lo.abs().max(hi.abs()) * slope) / (step * step);
        match kind {
            CurvatureKind::Xfx => dd >= -CURVATURE_SLACK - noise,
            CurvatureKind::Xf1overx => dd <= CURVATURE_SLACK + noise,
        }
    });
    Ok(ok)
}

fn eval_all(g: &FunctionSpec, xs: &[f64]) -> Result<Vec<f64>> {
    xs.iter().map(|&x| g.eval(x)).collect()
}

fn min_max(values: impl Iterator<Item = f64>) -> RatioBounds {
    values.fold(
        RatioBounds {
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
        },
        |acc, v| RatioBounds {
            min: acc.min.min(v),
            max: acc.max.max(v),
        },
    )
}

fn require_positive(values: &[f64], what: &str) -> Result<()> {
    match values.iter().position(|&v| v <= 0.0) {
        Some(i) => Err(Error::Precondition(format!(
            "{what} must be positive, entry {i} is {}",
            values[i]
        ))),
        None => Ok(()),
    }
}

/// `m_g = min_i g(a_i)/g(b_i)` and `M_g = max_i g(a_i)/g(b_i)`.
pub fn ratio_bounds(g: &FunctionSpec, pair: &SequencePair) -> Result<RatioBounds> {
    let ga = eval_all(g, pair.a())?;
    let gb = eval_all(g, pair.b())?;
    require_positive(&gb, "g(b_i)")?;
    Ok(min_max(ga.iter().zip(&gb).map(|(x, y)| x / y)))
}

fn check_declared(f: &FunctionSpec, expected: DeclaredClass) -> Result<()> {
    match f.declared_class {
        Some(c) if c != expected => Err(Error::Precondition(format!(
            "{} is declared {c:?}, this inequality needs {expected:?}",
            f.name()
        ))),
        _ => Ok(()),
    }
}

fn require_curvature(kind: CurvatureKind, f: &FunctionSpec, bounds: RatioBounds) -> Result<()> {
    if bounds.max > bounds.min && !convexity_check(kind, f, (bounds.min, bounds.max), CONVEXITY_GRID)? {
        let what = match kind {
            CurvatureKind::Xfx => "x f(x) is not convex",
            CurvatureKind::Xf1overx => "x f(1/x) is not concave",
        };
        return Err(Error::Precondition(format!(
            "{what} on [{}, {}] for f = {}",
            bounds.min,
            bounds.max,
            f.name()
        )));
    }
    Ok(())
}

fn weighted_term(weight: f64, f: &FunctionSpec, arg: f64) -> Result<f64> {
    if weight == 0.0 && f.zero_weight_vanishes() {
        Ok(0.0)
    } else {
        Ok(weight * f.eval(arg)?)
    }
}

/// Forward generalized log-sum inequality (`lhs >= rhs`).
///
/// `g(a_i)` may have any sign; only `g(b_i) > 0` is required.
pub fn generalized_log_sum_gap(
    f: &FunctionSpec,
    g: &FunctionSpec,
    pair: &SequencePair,
) -> Result<InequalityVerdict> {
    check_declared(f, DeclaredClass::XfxConvex)?;
    let ga = eval_all(g, pair.a())?;
    let gb = eval_all(g, pair.b())?;
    require_positive(&gb, "g(b_i)")?;
    let bounds = min_max(ga.iter().zip(&gb).map(|(x, y)| x / y));
    require_curvature(CurvatureKind::Xfx, f, bounds)?;

    let lhs = ga
        .iter()
        .zip(&gb)
        .map(|(&x, &y)| weighted_term(x, f, x / y))
        .sum::<Result<f64>>()?;
    let sum_a: f64 = ga.iter().sum();
    let sum_b: f64 = gb.iter().sum();
    let rhs = weighted_term(sum_a, f, sum_a / sum_b)?;
    Ok(InequalityVerdict::greater_eq(lhs, rhs, DEFAULT_TOLERANCE))
}

/// Reverse generalized log-sum inequality (`lhs <= rhs`).
///
/// Both `g(a_i)` and `g(b_i)` must be positive: the Jensen weights are
/// `g(b_i) / Σ g(b_j)`.
pub fn reverse_log_sum_gap(
    f: &FunctionSpec,
    g: &FunctionSpec,
    pair: &SequencePair,
) -> Result<InequalityVerdict> {
    check_declared(f, DeclaredClass::Xf1overxConcave)?;
    let ga = eval_all(g, pair.a())?;
    let gb = eval_all(g, pair.b())?;
    require_positive(&ga, "g(a_i)")?;
    require_positive(&gb, "g(b_i)")?;
    let bounds = min_max(ga.iter().zip(&gb).map(|(x, y)| x / y));
    require_curvature(CurvatureKind::Xf1overx, f, bounds)?;

    let lhs = ga
        .iter()
        .zip(&gb)
        .map(|(&x, &y)| Ok(x * f.eval(y / x)?))
        .sum::<Result<f64>>()?;
    let sum_a: f64 = ga.iter().sum();
    let sum_b: f64 = gb.iter().sum();
    let rhs = sum_a * f.eval(sum_b / sum_a)?;
    Ok(InequalityVerdict::less_eq(lhs, rhs, DEFAULT_TOLERANCE))
}

/// Entry threshold `sqrt(2/3)` for the rational example.
pub fn rational_entry_threshold() -> f64 {
    (2.0f64 / 3.0).sqrt()
}

/// Lower end `1/sqrt(6)` of the region where `x f(1/x)` is concave for `f = x/(x^2+2)`.
pub fn rational_ratio_threshold() -> f64 {
    1.0 / 6f64.sqrt()
}

/// `Σ a_i^2 b_i / (2 a_i^2 + b_i^2) <= A^2 B / (2 A^2 + B^2)` with `A = Σ a`, `B = Σ b`.
///
/// Entries must exceed `sqrt(2/3)`, and every ratio `a_i/b_i` must be at
/// least `1/sqrt(6)`; the entry condition alone does not place the ratios
/// inside the concavity region.
pub fn rational_example_gap(pair: &SequencePair) -> Result<InequalityVerdict> {
    let entry = rational_entry_threshold();
    if let Some(v) = pair.a().iter().chain(pair.b()).find(|&&v| v <= entry) {
        return Err(Error::Precondition(format!("entry {v} is not greater than sqrt(2/3)")));
    }
    let ratio_floor = rational_ratio_threshold();
    if let Some((a, b)) = pair
        .a()
        .iter()
        .zip(pair.b())
        .find(|(&a, &b)| a / b < ratio_floor)
    {
        return Err(Error::Precondition(format!(
            "ratio a/b = {a}/{b} is below 1/sqrt(6); x f(1/x) is not concave there"
        )));
    }
    let lhs: f64 = pair
        .a()
        .iter()
        .zip(pair.b())
        .map(|(&a, &b)| a * a * b / (2.0 * a * a + b * b))
        .sum();
    let sa: f64 = pair.a().iter().sum();
    let sb: f64 = pair.b().iter().sum();
    let rhs = sa * sa * sb / (2.0 * sa * sa + sb * sb);
    Ok(InequalityVerdict::less_eq(lhs, rhs, DEFAULT_TOLERANCE))
}

/// The two sides of the q-log log-sum inequality
/// `(Σ b^r)^(1-q) Σ a^r ln_q(a^r/b^r)` and `(Σ a^r)[ln_q(Σ a^r) - ln_q(Σ b^r)]`.
pub fn q_log_sum_sides(pair: &SequencePair, q: f64, r: f64) -> Result<(f64, f64)> {
    let params = QLogParams::new(q)?;
    let g = FunctionSpec::power(r);
    let ar = eval_all(&g, pair.a())?;
    let br = eval_all(&g, pair.b())?;
    require_positive(&ar, "a_i^r")?;
    require_positive(&br, "b_i^r")?;
    let sum_a: f64 = ar.iter().sum();
    let sum_b: f64 = br.iter().sum();
    let inner = ar
        .iter()
        .zip(&br)
        .map(|(&x, &y)| Ok(x * q_log(x / y, &params)?))
        .sum::<Result<f64>>()?;
    let lhs = params.deformed_power(sum_b)? * inner;
    let rhs = sum_a * (q_log(sum_a, &params)? - q_log(sum_b, &params)?);
    Ok((lhs, rhs))
}

/// q-log log-sum inequality: `lhs >= rhs` for `q < 2`, reversed for `q > 2`.
pub fn q_log_sum_gap(pair: &SequencePair, q: f64, r: f64) -> Result<InequalityVerdict> {
    if (q - 2.0).abs() <= 1e-12 {
        return Err(Error::Precondition(
            "q = 2 makes x ln_q(x) affine; no direction is defined".into(),
        ));
    }
    let (lhs, rhs) = q_log_sum_sides(pair, q, r)?;
    Ok(if q < 2.0 {
        InequalityVerdict::greater_eq(lhs, rhs, DEFAULT_TOLERANCE)
    } else {
        InequalityVerdict::less_eq(lhs, rhs, DEFAULT_TOLERANCE)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::LN_2;

    fn pair(a: &[f64], b: &[f64]) -> SequencePair {
        SequencePair::new(a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn sequence_pair_validation() {
        assert!(SequencePair::new(vec![], vec![]).is_err());
        assert!(SequencePair::new(vec![1.0], vec![1.0, 2.0]).is_err());
        assert!(SequencePair::new(vec![f64::NAN], vec![1.0]).is_err());
    }

    #[test]
    fn ratio_bounds_examples() {
        let id = FunctionSpec::identity();
        let rb = ratio_bounds(&id, &pair(&[1.0, 2.0], &[2.0, 1.0])).unwrap();
        assert_eq!((rb.min, rb.max), (0.5, 2.0));
        let rb = ratio_bounds(&id, &pair(&[3.0, 3.0], &[1.0, 1.0])).unwrap();
        assert_eq!((rb.min, rb.max), (3.0, 3.0));
        let rb = ratio_bounds(&FunctionSpec::power(2.0), &pair(&[1.0, 2.0], &[2.0, 1.0])).unwrap();
        assert_eq!((rb.min, rb.max), (0.25, 4.0));
        assert!(matches!(
            ratio_bounds(&id, &pair(&[1.0], &[0.0])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn convexity_examples() {
        assert!(convexity_check(CurvatureKind::Xfx, &FunctionSpec::log(), (0.1, 10.0), 101).unwrap());
        assert!(!convexity_check(CurvatureKind::Xfx, &FunctionSpec::q_log(3.0), (0.1, 10.0), 101).unwrap());
        assert!(
            convexity_check(CurvatureKind::Xf1overx, &FunctionSpec::rational(), (0.5, 10.0), 201).unwrap()
        );
        // below 1/sqrt(6) the curvature of x f(1/x) turns positive
        assert!(
            !convexity_check(CurvatureKind::Xf1overx, &FunctionSpec::rational(), (0.05, 0.35), 201).unwrap()
        );
        // x f(x) for the rational function stops being convex beyond sqrt(2/3)
        assert!(!convexity_check(CurvatureKind::Xfx, &FunctionSpec::rational(), (1.0, 3.0), 101).unwrap());
    }

    #[test]
    fn convexity_errors() {
        let log = FunctionSpec::log();
        assert!(matches!(
            convexity_check(CurvatureKind::Xfx, &log, (1.0, 1.0), 101),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            convexity_check(CurvatureKind::Xfx, &log, (1.0, 2.0), 2),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            convexity_check(CurvatureKind::Xfx, &log, (-1.0, 2.0), 11),
            Err(Error::Domain(_))
        ));
        // 0 log 0 = 0 keeps the left endpoint usable
        assert!(convexity_check(CurvatureKind::Xfx, &log, (0.0, 2.0), 11).unwrap());
    }

    #[test]
    fn forward_examples() {
        let (log, id) = (FunctionSpec::log(), FunctionSpec::identity());
        let v = generalized_log_sum_gap(&log, &id, &pair(&[1.0, 1.0], &[1.0, 1.0])).unwrap();
        assert_eq!(v.gap, 0.0);
        assert!(v.holds);

        let v = generalized_log_sum_gap(&log, &id, &pair(&[1.0, 2.0], &[2.0, 1.0])).unwrap();
        assert_relative_eq!(v.lhs, LN_2, max_relative = 1e-15);
        assert_eq!(v.rhs, 0.0);
        assert_relative_eq!(v.gap, LN_2, max_relative = 1e-15);

        let v = generalized_log_sum_gap(&log, &FunctionSpec::power(2.0), &pair(&[2.0, 2.0], &[1.0, 1.0]))
            .unwrap();
        assert!(v.gap.abs() <= 1e-12 * v.scale());
    }

    #[test]
    fn forward_zero_weight_convention() {
        let v = generalized_log_sum_gap(
            &FunctionSpec::log(),
            &FunctionSpec::identity(),
            &pair(&[0.0, 1.0], &[0.5, 0.5]),
        )
        .unwrap();
        assert_relative_eq!(v.lhs, 2f64.ln(), max_relative = 1e-15);
        assert_eq!(v.rhs, 0.0);
    }

    #[test]
    fn forward_allows_negative_g_of_a() {
        let id = FunctionSpec::identity();
        let p = pair(&[-1.0, 2.0], &[1.0, 1.0]);
        // x f(x) = x^3 is not convex on the ratio range [-1, 2]
        assert!(matches!(
            generalized_log_sum_gap(&FunctionSpec::power(2.0), &id, &p),
            Err(Error::Precondition(_))
        ));
        // x f(x) = x^2 is convex everywhere: lhs = 1 + 4, rhs = 1 * (1/2)
        let v = generalized_log_sum_gap(&FunctionSpec::power(1.0), &id, &p).unwrap();
        assert_relative_eq!(v.lhs, 5.0);
        assert_relative_eq!(v.rhs, 0.5);
        assert!(v.holds);
    }

    #[test]
    fn forward_rejects_bad_inputs() {
        let log = FunctionSpec::log();
        let id = FunctionSpec::identity();
        assert!(matches!(
            generalized_log_sum_gap(&log, &id, &pair(&[1.0], &[-1.0])),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            generalized_log_sum_gap(&FunctionSpec::q_log(3.0), &id, &pair(&[1.0, 3.0], &[2.0, 1.0])),
            Err(Error::Precondition(_))
        ));
        let declared = FunctionSpec::log().declared(DeclaredClass::Xf1overxConcave);
        assert!(generalized_log_sum_gap(&declared, &id, &pair(&[1.0], &[1.0])).is_err());
    }

    #[test]
    fn reverse_examples() {
        let (log, id) = (FunctionSpec::log(), FunctionSpec::identity());
        let v = reverse_log_sum_gap(&log, &id, &pair(&[1.0, 1.0], &[1.0, 1.0])).unwrap();
        assert_eq!(v.gap, 0.0);

        let v = reverse_log_sum_gap(&log, &id, &pair(&[2.0, 1.0], &[1.0, 2.0])).unwrap();
        assert_relative_eq!(v.lhs, -LN_2, max_relative = 1e-15);
        assert_eq!(v.rhs, 0.0);
        assert_relative_eq!(v.gap, LN_2, max_relative = 1e-15);

        let v = reverse_log_sum_gap(&FunctionSpec::rational(), &id, &pair(&[1.0, 1.0], &[1.0, 1.0])).unwrap();
        assert_relative_eq!(v.lhs, 2.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(v.rhs, 2.0 / 3.0, max_relative = 1e-15);
        assert!(v.gap.abs() < 1e-15);

        assert!(matches!(
            reverse_log_sum_gap(&log, &id, &pair(&[0.0], &[1.0])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rational_examples() {
        let v = rational_example_gap(&pair(&[1.0], &[1.0])).unwrap();
        assert_relative_eq!(v.lhs, 1.0 / 3.0, max_relative = 1e-15);
        assert!(v.gap.abs() < 1e-15);

        let v = rational_example_gap(&pair(&[1.0, 1.0], &[1.0, 1.0])).unwrap();
        assert_relative_eq!(v.lhs, 2.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(v.rhs, 2.0 / 3.0, max_relative = 1e-15);

        // ratios 0.5 and 2 both lie above 1/sqrt(6): lhs = 1/3 + 4/9 = 7/9, rhs = 27/27 = 1
        let v = rational_example_gap(&pair(&[1.0, 2.0], &[2.0, 1.0])).unwrap();
        assert_relative_eq!(v.lhs, 7.0 / 9.0, max_relative = 1e-15);
        assert_relative_eq!(v.rhs, 1.0, max_relative = 1e-15);
        assert_relative_eq!(v.gap, 2.0 / 9.0, max_relative = 1e-14);
        let generic =
            reverse_log_sum_gap(&FunctionSpec::rational(), &FunctionSpec::identity(), &pair(&[1.0, 2.0], &[2.0, 1.0]))
                .unwrap();
        assert_relative_eq!(generic.lhs, v.lhs, max_relative = 1e-14);
        assert_relative_eq!(generic.rhs, v.rhs, max_relative = 1e-14);

        // ratio 1/3 leaves the concavity region although entries exceed sqrt(2/3)
        assert!(matches!(
            rational_example_gap(&pair(&[1.0, 1.0], &[3.0, 1.0])),
            Err(Error::Precondition(_))
        ));
        // entry below sqrt(2/3)
        assert!(matches!(
            rational_example_gap(&pair(&[0.5], &[0.5])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn q_log_sum_examples() {
        let v = q_log_sum_gap(&pair(&[1.0, 1.0], &[1.0, 1.0]), 0.5, 1.0).unwrap();
        assert!(v.gap.abs() < 1e-15);

        // q = 0.5: lhs = sqrt(3) * (1 * ln_q(0.5) + 2 * ln_q(2)), rhs = 0
        let v = q_log_sum_gap(&pair(&[1.0, 2.0], &[2.0, 1.0]), 0.5, 1.0).unwrap();
        let expected_lhs = 3f64.sqrt() * (2.0 * (0.5f64.sqrt() - 1.0) + 2.0 * 2.0 * (2f64.sqrt() - 1.0));
        assert_relative_eq!(v.lhs, expected_lhs, max_relative = 1e-14);
        assert!(v.rhs.abs() < 1e-15);
        assert!(v.gap > 0.0 && v.holds);

        // q = 3: ln_3(x) = (1 - x^-2) / 2, reversed direction
        let v = q_log_sum_gap(&pair(&[1.0, 2.0], &[2.0, 1.0]), 3.0, 1.0).unwrap();
        let expected_lhs = (1.0 / 9.0) * (0.5 * (1.0 - 4.0) + 2.0 * 0.5 * (1.0 - 0.25));
        assert_relative_eq!(v.lhs, expected_lhs, max_relative = 1e-14);
        assert_relative_eq!(v.gap, v.rhs - v.lhs);
        assert!(v.gap > 0.0 && v.holds);

        assert!(matches!(
            q_log_sum_gap(&pair(&[1.0], &[1.0]), 2.0, 1.0),
            Err(Error::Precondition(_))
        ));
        assert!(q_log_sum_gap(&pair(&[0.0], &[1.0]), 0.5, 1.0).is_err());
        assert!(q_log_sum_gap(&pair(&[-1.0], &[1.0]), 0.5, 0.5).is_err());
    }
}
