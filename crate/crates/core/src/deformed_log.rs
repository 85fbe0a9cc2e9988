//! The q-deformed logarithm `ln_q(x) = (x^(1-q) - 1) / (1 - q)` and its algebra.
//!
//! Every identity helper returns the *right-hand side* of the identity so the
//! caller can compare it against [`q_log`] evaluated on the combined argument.
//!
//! Near `q = 1` the closed form is a 0/0; inside `limit_window` the natural
//! logarithm is substituted and the deformation `1 - q` is treated as zero in
//! every identity, so all helpers stay mutually consistent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default half-width of the natural-log window around `q = 1`.
pub const DEFAULT_LIMIT_WINDOW: f64 = 1e-10;
/// Largest window accepted by [`QLogParams::with_window`].
pub const MAX_LIMIT_WINDOW: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QLogParams {
    q: f64,
    limit_window: f64,
}

impl QLogParams {
    pub fn new(q: f64) -> Result<Self> {
        Self::with_window(q, DEFAULT_LIMIT_WINDOW)
    }

    pub fn with_window(q: f64, limit_window: f64) -> Result<Self> {
        if !q.is_finite() {
            return Err(Error::Domain(format!("q must be finite, got {q}")));
        }
        if !(limit_window > 0.0 && limit_window <= MAX_LIMIT_WINDOW) {
            return Err(Error::Domain(format!(
                "limit window must lie in (0, {MAX_LIMIT_WINDOW:e}], got {limit_window:e}"
            )));
        }
        Ok(Self { q, limit_window })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn limit_window(&self) -> f64 {
        self.limit_window
    }

    /// True when `q` is close enough to 1 that the natural log is used.
    pub fn in_limit(&self) -> bool {
        (self.q - 1.0).abs() <= self.limit_window
    }

    /// Effective deformation `1 - q`, zero inside the limit window.
    pub fn deformation(&self) -> f64 {
        if self.in_limit() {
            0.0
        } else {
            1.0 - self.q
        }
    }

    /// `x^(1-q)` with the same limit convention (equals 1 inside the window).
    pub fn deformed_power(&self, x: f64) -> Result<f64> {
        check_positive(x, "x")?;
        finite((self.deformation() * x.ln()).exp(), "x^(1-q)")
    }
}

fn check_positive(x: f64, name: &str) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("{name} must be finite, got {x}")));
    }
    if x <= 0.0 {
        return Err(Error::Domain(format!("{name} must be positive, got {x}")));
    }
    Ok(())
}

fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("{what} is not finite")))
    }
}

/// `ln_q(x)`; natural log inside the limit window.
pub fn q_log(x: f64, params: &QLogParams) -> Result<f64> {
    check_positive(x, "x")?;
    let k = params.deformation();
    let ln = x.ln();
    if k == 0.0 {
        return Ok(ln);
    }
    // expm1 keeps full precision when (1-q) ln x is small.
    finite((k * ln).exp_m1() / k, "ln_q(x)")
}

/// Pseudo-additive product rule: `ln_q(x) + ln_q(y) + (1-q) ln_q(x) ln_q(y)`.
pub fn q_log_product(x: f64, y: f64, params: &QLogParams) -> Result<f64> {
    let lx = q_log(x, params)?;
    let ly = q_log(y, params)?;
    finite(lx + ly + params.deformation() * lx * ly, "product rule")
}

/// Second product rule: `x^(1-q) ln_q(y) + ln_q(x)`.
pub fn q_log_product_alt(x: f64, y: f64, params: &QLogParams) -> Result<f64> {
    let lx = q_log(x, params)?;
    let ly = q_log(y, params)?;
    finite(params.deformed_power(x)? * ly + lx, "product rule")
}

/// Quotient rule: `(ln_q(x) - ln_q(y)) / y^(1-q)`.
pub fn q_log_quotient(x: f64, y: f64, params: &QLogParams) -> Result<f64> {
    let lx = q_log(x, params)?;
    let ly = q_log(y, params)?;
    finite((lx - ly) / params.deformed_power(y)?, "quotient rule")
}

/// Reciprocal rule: `-ln_q(y) / y^(1-q)`.
pub fn q_log_reciprocal(y: f64, params: &QLogParams) -> Result<f64> {
    let ly = q_log(y, params)?;
    finite(-ly / params.deformed_power(y)?, "reciprocal rule")
}

/// `1 + (1-q) ln_q(x)`, which equals `x^(1-q)`.
pub fn q_power_identity(x: f64, params: &QLogParams) -> Result<f64> {
    let lx = q_log(x, params)?;
    Ok(1.0 + params.deformation() * lx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(q: f64) -> QLogParams {
        QLogParams::new(q).unwrap()
    }

    #[test]
    fn q_log_examples() {
        assert_eq!(q_log(1.0, &p(0.5)).unwrap(), 0.0);
        assert_relative_eq!(q_log(2.0, &p(0.0)).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(q_log(4.0, &p(0.5)).unwrap(), 2.0, max_relative = 1e-15);
    }

    #[test]
    fn q_log_rejects_bad_arguments() {
        assert!(matches!(q_log(0.0, &p(0.5)), Err(Error::Domain(_))));
        assert!(matches!(q_log(-1.0, &p(0.5)), Err(Error::Domain(_))));
        assert!(matches!(q_log(f64::NAN, &p(0.5)), Err(Error::Domain(_))));
        assert!(matches!(q_log(f64::INFINITY, &p(0.5)), Err(Error::Domain(_))));
        assert!(QLogParams::new(f64::NAN).is_err());
        assert!(QLogParams::with_window(0.5, 0.0).is_err());
        assert!(QLogParams::with_window(0.5, 1e-5).is_err());
    }

    #[test]
    fn overflow_is_a_domain_error() {
        assert!(q_log(1e300, &p(-5.0)).is_err());
    }

    #[test]
    fn product_examples() {
        assert_eq!(q_log_product(1.0, 1.0, &p(0.3)).unwrap(), 0.0);
        assert!(q_log_product(2.0, 0.5, &p(0.5)).unwrap().abs() < 1e-15);
        // ln_0.5(6) = 2 (sqrt(6) - 1)
        let expected = 2.0 * (6f64.sqrt() - 1.0);
        assert_relative_eq!(expected, 2.898979485566356, max_relative = 1e-15);
        assert_relative_eq!(q_log_product(2.0, 3.0, &p(0.5)).unwrap(), expected, max_relative = 1e-12);
        assert_relative_eq!(q_log(6.0, &p(0.5)).unwrap(), expected, max_relative = 1e-14);
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(q_log_quotient(5.0, 5.0, &p(0.7)).unwrap(), 0.0);
        assert_relative_eq!(q_log_quotient(4.0, 1.0, &p(0.5)).unwrap(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(q_log_quotient(1.0, 4.0, &p(0.5)).unwrap(), -1.0, max_relative = 1e-15);
        assert!(q_log_quotient(-1.0, 4.0, &p(0.5)).is_err());
        assert!(q_log_quotient(1.0, 0.0, &p(0.5)).is_err());
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(q_log_reciprocal(1.0, &p(0.5)).unwrap(), 0.0);
        assert_relative_eq!(q_log_reciprocal(4.0, &p(0.5)).unwrap(), -1.0, max_relative = 1e-15);
        let near_one = p(1.0 + 1e-12);
        assert!(near_one.in_limit());
        assert_relative_eq!(
            q_log_reciprocal(2.0, &near_one).unwrap(),
            -std::f64::consts::LN_2,
            max_relative = 1e-15
        );
        assert!(q_log_reciprocal(0.0, &p(0.5)).is_err());
    }

    #[test]
    fn continuity_at_q_one() {
        for &q in &[1.0 - 1e-7, 1.0 + 1e-7] {
            let params = p(q);
            assert!(!params.in_limit());
            let mut x = 1e-3;
            while x <= 1e3 {
                let err = (q_log(x, &params).unwrap() - x.ln()).abs();
                assert!(err <= 1e-6 * (1.0 + x.ln().abs()), "x={x} q={q} err={err}");
                x *= 1.37;
            }
        }
    }

    #[test]
    fn strictly_increasing_on_grid() {
        for &q in &[-2.0, 0.0, 0.5, 1.0, 1.5, 3.0, 4.0] {
            let params = p(q);
            let xs: Vec<f64> = (1..200).map(|i| 0.05 * i as f64).collect();
            let vals: Vec<f64> = xs.iter().map(|&x| q_log(x, &params).unwrap()).collect();
            assert!(vals.windows(2).all(|w| w[0] < w[1]), "q={q}");
        }
    }
}
