//! Smooth test functions carrying their integer derivatives, and the power
//! function family with known closed-form fractional operators.

use crate::{Error, Result};
use alloc::sync::Arc;
use alloc::vec::Vec;

type Fn1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function x(·) on \[a, b\] together with callables for x⁽¹⁾ … x⁽ᵐ⁾.
///
/// The expansion error bounds need x ∈ C^{n+1}, so `max_order` must be at least
/// n+1 whenever the function is used with [`ExpansionParams`](crate::expansion::ExpansionParams)
/// of order n.
pub struct SmoothFunction {
    derivs: Vec<Fn1>,
    a: f64,
    b: f64,
}

impl SmoothFunction {
    /// Build from closures for x⁽⁰⁾, x⁽¹⁾, …; at least the first derivative is
    /// required.
    pub fn new(derivs: Vec<Fn1>, a: f64, b: f64) -> Result<Self> {
        if derivs.len() < 2 {
            return Err(Error::InvalidParams {
                what: "smooth function needs the value and at least one derivative",
            });
        }
        if !(a < b) {
            return Err(Error::InvalidParams {
                what: "smooth function needs a < b",
            });
        }
        Ok(Self { derivs, a, b })
    }

    /// Polynomial Σ `coeffs[i]`·tⁱ with every derivative generated down to the
    /// zero polynomial.
    pub fn polynomial(coeffs: &[f64], a: f64, b: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParams {
                what: "polynomial needs at least one coefficient",
            });
        }
        let mut derivs: Vec<Fn1> = Vec::new();
        let mut cur: Vec<f64> = coeffs.to_vec();
        loop {
            let c = cur.clone();
            derivs.push(Arc::new(move |t: f64| horner(&c, t)));
            if cur.len() <= 1 {
                break;
            }
            cur = cur
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, v)| i as f64 * v)
                .collect();
        }
        // one step past the constant: the zero polynomial
        derivs.push(Arc::new(|_| 0.0));
        Self::new(derivs, a, b)
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        (self.derivs[0])(t)
    }

    /// j-th derivative value; `j = 0` is the function itself.
    pub fn deriv(&self, j: u32, t: f64) -> Result<f64> {
        match self.derivs.get(j as usize) {
            Some(f) => Ok(f(t)),
            None => Err(Error::InsufficientDerivatives {
                needed: j,
                have: self.max_order(),
            }),
        }
    }

    #[inline]
    pub(crate) fn deriv_unchecked(&self, j: u32, t: f64) -> f64 {
        (self.derivs[j as usize])(t)
    }

    pub fn max_order(&self) -> u32 {
        (self.derivs.len() - 1) as u32
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub(crate) fn deriv_fn(&self, j: u32) -> Fn1 {
        Arc::clone(&self.derivs[j as usize])
    }

    /// Check each derivative against a central difference of the previous one
    /// (step 1e-6, absolute slack 1e-5) at `samples` interior points.
    pub fn validate(&self, samples: usize) -> Result<()> {
        const H: f64 = 1e-6;
        const TOL: f64 = 1e-5;
        let n = samples.max(3);
        for j in 1..self.derivs.len() {
            for i in 1..n - 1 {
                let t = self.a + (self.b - self.a) * i as f64 / (n - 1) as f64;
                let cd = ((self.derivs[j - 1])(t + H) - (self.derivs[j - 1])(t - H)) / (2.0 * H);
                if (cd - (self.derivs[j])(t)).abs() > TOL {
                    return Err(Error::InvalidParams {
                        what: "derivative list inconsistent with central differences",
                    });
                }
            }
        }
        Ok(())
    }
}

fn horner(coeffs: &[f64], t: f64) -> f64 {
    let mut acc = 0.0;
    for c in coeffs.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

/// The power function x(t) = (t−a)^γ, γ > −1, whose variable-order operators
/// have closed forms.
#[derive(Debug, Clone, Copy)]
pub struct PowerFunction {
    gamma_exp: f64,
    a: f64,
}

impl PowerFunction {
    pub fn new(gamma_exp: f64, a: f64) -> Result<Self> {
        if !(gamma_exp > -1.0) || !gamma_exp.is_finite() {
            return Err(Error::InvalidParams {
                what: "power exponent must be finite and > -1",
            });
        }
        Ok(Self { gamma_exp, a })
    }

    pub fn exponent(&self) -> f64 {
        self.gamma_exp
    }

    pub fn anchor(&self) -> f64 {
        self.a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_derivatives() {
        let p = SmoothFunction::polynomial(&[0.0, 0.0, 0.0, 0.0, 1.0], 0.0, 1.0).unwrap();
        assert_eq!(p.max_order(), 5);
        assert_eq!(p.eval(2.0), 16.0);
        assert_eq!(p.deriv(1, 2.0).unwrap(), 32.0);
        assert_eq!(p.deriv(2, 2.0).unwrap(), 48.0);
        assert_eq!(p.deriv(3, 2.0).unwrap(), 48.0);
        assert_eq!(p.deriv(4, 2.0).unwrap(), 24.0);
        assert_eq!(p.deriv(5, 2.0).unwrap(), 0.0);
        assert!(p.deriv(6, 2.0).is_err());
        p.validate(11).unwrap();
    }

    #[test]
    fn validate_catches_wrong_derivative() {
        let bad = SmoothFunction::new(
            alloc::vec![Arc::new(|t: f64| t * t) as _, Arc::new(|_| 1.0) as _],
            0.0,
            1.0,
        )
        .unwrap();
        assert!(bad.validate(9).is_err());
    }

    #[test]
    fn power_function_contract() {
        assert!(PowerFunction::new(-1.0, 0.0).is_err());
        assert!(PowerFunction::new(f64::NAN, 0.0).is_err());
        let p = PowerFunction::new(4.0, 0.0).unwrap();
        assert_eq!(p.exponent(), 4.0);
    }
}
