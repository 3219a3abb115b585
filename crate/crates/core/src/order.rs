//! The variable order α(t) and its derivative.

use crate::{Error, Result};
use alloc::boxed::Box;
use alloc::sync::Arc;

/// Central-difference step used when no derivative closure is supplied.
const CDIFF_STEP: f64 = 1e-6;

/// Consistency slack between a supplied derivative and a central difference.
const DERIV_CHECK_TOL: f64 = 1e-6;

type Eval = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type Deriv = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A fractional order α ∈ C¹(\[a,b\], (0,1)) with its first derivative.
///
/// Values are immutable after construction and all evaluation is pure, so an
/// `OrderFunction` can be shared freely across threads.
pub struct OrderFunction {
    eval: Eval,
    deriv: Deriv,
    a: f64,
    b: f64,
    constant: bool,
}

impl OrderFunction {
    /// Build from a closed-form pair (α, α′) on [a, b].
    pub fn new<F, G>(eval: F, deriv: G, a: f64, b: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(a < b) {
            return Err(Error::InvalidParams {
                what: "order function needs a < b",
            });
        }
        Ok(Self {
            eval: Arc::new(eval),
            deriv: Box::new(deriv),
            a,
            b,
            constant: false,
        })
    }

    /// Constant order; the derivative is exactly zero.
    pub fn constant(alpha: f64, a: f64, b: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParams {
                what: "constant order must lie in (0,1)",
            });
        }
        let mut of = Self::new(move |_| alpha, |_| 0.0, a, b)?;
        of.constant = true;
        Ok(of)
    }

    /// Build from α alone; α′ comes from a central difference with step 1e-6.
    pub fn from_eval<F>(eval: F, a: f64, b: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(a < b) {
            return Err(Error::InvalidParams {
                what: "order function needs a < b",
            });
        }
        let eval: Eval = Arc::new(eval);
        let e = Arc::clone(&eval);
        let deriv: Deriv = Box::new(move |t| (e(t + CDIFF_STEP) - e(t - CDIFF_STEP)) / (2.0 * CDIFF_STEP));
        Ok(Self {
            eval,
            deriv,
            a,
            b,
            constant: false,
        })
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(t)
    }

    #[inline]
    pub fn deriv(&self, t: f64) -> f64 {
        (self.deriv)(t)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// Whether this order was built as a constant (derivative identically 0).
    pub fn is_constant(&self) -> bool {
        self.constant
    }

    /// Check 0 < α(t) < 1 on `samples` points across the domain, and that the
    /// supplied derivative agrees with a central difference at the interior
    /// points.
    pub fn validate(&self, samples: usize) -> Result<()> {
        let n = samples.max(3);
        for i in 0..n {
            let t = self.a + (self.b - self.a) * i as f64 / (n - 1) as f64;
            let v = self.eval(t);
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidParams {
                    what: "order value outside (0,1) on the domain",
                });
            }
            if i > 0 && i + 1 < n {
                let cd = (self.eval(t + CDIFF_STEP) - self.eval(t - CDIFF_STEP)) / (2.0 * CDIFF_STEP);
                if (cd - self.deriv(t)).abs() > DERIV_CHECK_TOL {
                    return Err(Error::InvalidParams {
                        what: "order derivative inconsistent with central difference",
                    });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_has_exact_zero_derivative() {
        let ord = OrderFunction::constant(0.5, 0.0, 1.0).unwrap();
        for t in [0.0, 0.37, 1.0] {
            assert_eq!(ord.deriv(t), 0.0);
            assert_eq!(ord.eval(t), 0.5);
        }
        assert!(ord.is_constant());
        ord.validate(33).unwrap();
    }

    #[test]
    fn from_eval_matches_closed_form_derivative() {
        let ord = OrderFunction::from_eval(|t| (t + 1.0) / 4.0, 0.0, 1.0).unwrap();
        for t in [0.1, 0.5, 0.9] {
            assert!((ord.deriv(t) - 0.25).abs() < 1e-9);
        }
        ord.validate(21).unwrap();
    }

    #[test]
    fn validate_rejects_out_of_range() {
        let ord = OrderFunction::new(|t| t, |_| 1.0, 0.0, 2.0).unwrap();
        assert!(matches!(ord.validate(11), Err(Error::InvalidParams { .. })));
    }

    #[test]
    fn validate_rejects_bad_derivative() {
        let ord = OrderFunction::new(|t| (t + 1.0) / 4.0, |_| 0.5, 0.0, 1.0).unwrap();
        assert!(ord.validate(11).is_err());
    }

    #[test]
    fn shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<OrderFunction>();
        assert_send_sync::<crate::smooth::SmoothFunction>();
    }

    #[test]
    fn rejects_empty_domain() {
        assert!(OrderFunction::constant(0.5, 1.0, 1.0).is_err());
        assert!(OrderFunction::constant(1.5, 0.0, 1.0).is_err());
    }
}
