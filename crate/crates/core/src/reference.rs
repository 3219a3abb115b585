//! Ground truth for the six variable-order operators: closed forms on the
//! power function family and weakly-singular quadrature oracles for general
//! smooth functions.
//!
//! The oracles are the reference every expansion is measured against, so
//! their quadrature tolerance must dominate the expansion error in any
//! comparison (default 1e-8 from the callers here).

use crate::fm;
use crate::order::OrderFunction;
use crate::quad::{adaptive, singular_power, singular_power_log};
use crate::smooth::{PowerFunction, SmoothFunction};
use crate::specfun::{digamma, lgamma_signed};
use crate::{Error, Result};

/// Γ(num)/Γ(den) through signed log-gamma; a pole in the denominator gives 0.
fn gamma_ratio(num: f64, den: f64) -> f64 {
    if den <= 0.0 && den == fm::floor(den) {
        return 0.0;
    }
    let (ln_n, sg_n) = lgamma_signed(num);
    let (ln_d, sg_d) = lgamma_signed(den);
    sg_n * sg_d * fm::exp(ln_n - ln_d)
}

pub(crate) fn gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let (lg, _) = lgamma_signed(x);
    fm::exp(lg)
}

fn require_left_point(a: f64, t: f64) -> Result<()> {
    if t > a {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "left-sided operator needs t > a",
        })
    }
}

/// Left Riemann–Liouville integral of (t−a)^γ:
/// Γ(γ+1)/Γ(γ+α(t)+1) · (t−a)^{γ+α(t)}.
pub fn power_left_integral(p: &PowerFunction, ord: &OrderFunction, t: f64) -> Result<f64> {
    require_left_point(p.anchor(), t)?;
    let alpha = ord.eval(t);
    let g = p.exponent();
    Ok(gamma_ratio(g + 1.0, g + alpha + 1.0) * fm::powf(t - p.anchor(), g + alpha))
}

/// Left Marchaud derivative of (t−a)^γ:
/// Γ(γ+1)/Γ(γ−α(t)+1) · (t−a)^{γ−α(t)}.
pub fn power_left_marchaud(p: &PowerFunction, ord: &OrderFunction, t: f64) -> Result<f64> {
    require_left_point(p.anchor(), t)?;
    let alpha = ord.eval(t);
    let g = p.exponent();
    Ok(gamma_ratio(g + 1.0, g - alpha + 1.0) * fm::powf(t - p.anchor(), g - alpha))
}

/// Left Riemann–Liouville derivative of (t−a)^γ: the Marchaud term plus the
/// α′-proportional correction
/// −α′(t)·Γ(γ+1)/Γ(γ−α(t)+2)·(t−a)^{γ−α(t)+1}·[ln(t−a) − ψ(γ−α(t)+2) + ψ(1−α(t))].
pub fn power_left_rl_derivative(p: &PowerFunction, ord: &OrderFunction, t: f64) -> Result<f64> {
    require_left_point(p.anchor(), t)?;
    let alpha = ord.eval(t);
    let a1 = ord.deriv(t);
    let g = p.exponent();
    let span = t - p.anchor();
    let marchaud = gamma_ratio(g + 1.0, g - alpha + 1.0) * fm::powf(span, g - alpha);
    if a1 == 0.0 {
        return Ok(marchaud);
    }
    let bracket = fm::ln(span) - digamma(g - alpha + 2.0)? + digamma(1.0 - alpha)?;
    let corr = a1 * gamma_ratio(g + 1.0, g - alpha + 2.0) * fm::powf(span, g - alpha + 1.0) * bracket;
    Ok(marchaud - corr)
}

/// Left Riemann–Liouville integral oracle:
/// (1/Γ(α(t))) ∫ₐᵗ (t−τ)^{α(t)−1} x(τ) dτ, absolute error ≤ tol.
pub fn oracle_left_integral(x: &SmoothFunction, ord: &OrderFunction, t: f64, tol: f64) -> Result<f64> {
    let (a, b) = x.domain();
    require_left_point(a, t)?;
    require_tol(tol)?;
    let _ = b;
    let alpha = ord.eval(t);
    let g = gamma_pos(alpha);
    let f = |tau: f64| x.eval(tau);
    let out = singular_power(&f, t, a, 1.0 - alpha, tol * g);
    if !out.converged {
        return Err(Error::QuadratureNonConvergence {
            achieved: out.error / g,
            tol,
        });
    }
    Ok(out.value / g)
}

/// Right Riemann–Liouville integral oracle:
/// (1/Γ(α(t))) ∫ₜᵇ (τ−t)^{α(t)−1} x(τ) dτ.
pub fn oracle_right_integral(x: &SmoothFunction, ord: &OrderFunction, t: f64, tol: f64) -> Result<f64> {
    let (_, b) = x.domain();
    require_right_point(b, t)?;
    require_tol(tol)?;
    let alpha = ord.eval(t);
    let g = gamma_pos(alpha);
    let f = |tau: f64| x.eval(tau);
    let out = singular_power(&f, t, b, 1.0 - alpha, tol * g);
    if !out.converged {
        return Err(Error::QuadratureNonConvergence {
            achieved: out.error / g,
            tol,
        });
    }
    Ok(out.value / g)
}

fn require_right_point(b: f64, t: f64) -> Result<()> {
    if t < b {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "right-sided operator needs t < b",
        })
    }
}

fn require_tol(tol: f64) -> Result<()> {
    if tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams {
            what: "quadrature tolerance must be positive",
        })
    }
}

/// Integration-by-parts form shared by the Marchaud oracle and the S₁ part
/// of the Riemann–Liouville derivative oracle:
/// (1/Γ(1−α))[x(a)(t−a)^{−α} + ∫ₐᵗ (t−τ)^{−α} x⁽¹⁾(τ) dτ].
fn left_parts_form(x: &SmoothFunction, alpha: f64, t: f64, tol: f64) -> Result<f64> {
    let (a, _) = x.domain();
    let g1 = gamma_pos(1.0 - alpha);
    let d1 = x.deriv_fn(1);
    let f = |tau: f64| d1(tau);
    let out = singular_power(&f, t, a, alpha, tol * g1);
    if !out.converged {
        return Err(Error::QuadratureNonConvergence {
            achieved: out.error / g1,
            tol,
        });
    }
    Ok((x.eval(a) * fm::powf(t - a, -alpha) + out.value) / g1)
}

/// Left Riemann–Liouville derivative oracle, split as S₁ − S₂:
/// the integration-by-parts term minus the α′-weighted ln-kernel integral
/// (α′(t)/Γ(1−α)) ∫ₐᵗ (t−τ)^{−α} ln(t−τ) x(τ) dτ.
pub fn oracle_left_rl_derivative(
    x: &SmoothFunction,
    ord: &OrderFunction,
    t: f64,
    tol: f64,
) -> Result<f64> {
    let (a, _) = x.domain();
    require_left_point(a, t)?;
    require_tol(tol)?;
    let alpha = ord.eval(t);
    let a1 = ord.deriv(t);
    if a1 == 0.0 {
        // the ln-kernel term carries an exact zero weight
        return left_parts_form(x, alpha, t, tol);
    }
    let s1 = left_parts_form(x, alpha, t, tol / 2.0)?;
    let g1 = gamma_pos(1.0 - alpha);
    let f = |tau: f64| x.eval(tau);
    let out = singular_power_log(&f, t, a, alpha, tol / 2.0 * g1 / a1.abs());
    if !out.converged {
        return Err(Error::QuadratureNonConvergence {
            achieved: out.error * a1.abs() / g1,
            tol,
        });
    }
    Ok(s1 - a1 / g1 * out.value)
}

/// Left Marchaud derivative oracle via the integration-by-parts
/// representation, cross-checked against the difference-quotient form to
/// 10·tol.
pub fn oracle_left_marchaud(x: &SmoothFunction, ord: &OrderFunction, t: f64, tol: f64) -> Result<f64> {
    let (a, _) = x.domain();
    require_left_point(a, t)?;
    require_tol(tol)?;
    let alpha = ord.eval(t);
    let rep = left_parts_form(x, alpha, t, tol)?;
    let quot = oracle_left_marchaud_quotient(x, ord, t, tol)?;
    let limit = 10.0 * tol;
    if (rep - quot).abs() > limit {
        return Err(Error::CrossCheckMismatch {
            difference: (rep - quot).abs(),
            limit,
        });
    }
    Ok(rep)
}

/// Fraction of the span below which the difference quotient switches to a
/// Taylor tail: cancellation in x(t)−x(τ) would otherwise dominate.
const QUOTIENT_TAIL_FRACTION: f64 = 1e-8;

/// Left Marchaud derivative oracle in difference-quotient form:
/// x(t)/(Γ(1−α)(t−a)^α) + (α/Γ(1−α)) ∫ₐᵗ (x(t)−x(τ))/(t−τ)^{1+α} dτ.
///
/// The integral runs over a mesh graded geometrically toward τ = t; the
/// innermost slice [t−δ, t] is evaluated from the Taylor expansion of x at t
/// so the quotient never degenerates.
pub fn oracle_left_marchaud_quotient(
    x: &SmoothFunction,
    ord: &OrderFunction,
    t: f64,
    tol: f64,
) -> Result<f64> {
    let (a, _) = x.domain();
    require_left_point(a, t)?;
    require_tol(tol)?;
    let alpha = ord.eval(t);
    let g1 = gamma_pos(1.0 - alpha);
    let span = t - a;
    let delta = QUOTIENT_TAIL_FRACTION * span;
    let xt = x.eval(t);
    let q = |tau: f64| (xt - x.eval(tau)) / fm::powf(t - tau, 1.0 + alpha);

    let inner_tol = tol * g1 / alpha / 40.0;
    let mut total = 0.0;
    let mut hi = span;
    loop {
        let lo = (hi * 0.5).max(delta);
        let out = adaptive(&q, t - hi, t - lo, inner_tol);
        if !out.converged {
            return Err(Error::QuadratureNonConvergence {
                achieved: out.error * alpha / g1,
                tol,
            });
        }
        total += out.value;
        hi = lo;
        if hi <= delta {
            break;
        }
    }
    // Taylor tail: Σ_j x⁽ʲ⁾(t) (−1)^{j+1} δ^{j−α} / (j! (j−α))
    let jmax = x.max_order().min(4);
    let mut fact = 1.0;
    for j in 1..=jmax {
        fact *= j as f64;
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        total += sign * x.deriv_unchecked(j, t) * fm::powf(delta, j as f64 - alpha)
            / (fact * (j as f64 - alpha));
    }
    Ok(xt * fm::powf(span, -alpha) / g1 + alpha / g1 * total)
}

/// Right Marchaud derivative oracle:
/// (1/Γ(1−α))[x(b)(b−t)^{−α} − ∫ₜᵇ (τ−t)^{−α} x⁽¹⁾(τ) dτ].
pub fn oracle_right_marchaud(x: &SmoothFunction, ord: &OrderFunction, t: f64, tol: f64) -> Result<f64> {
    let (_, b) = x.domain();
    require_right_point(b, t)?;
    require_tol(tol)?;
    let alpha = ord.eval(t);
    let g1 = gamma_pos(1.0 - alpha);
    let d1 = x.deriv_fn(1);
    let f = |tau: f64| d1(tau);
    let out = singular_power(&f, t, b, alpha, tol * g1);
    if !out.converged {
        return Err(Error::QuadratureNonConvergence {
            achieved: out.error / g1,
            tol,
        });
    }
    Ok((x.eval(b) * fm::powf(b - t, -alpha) - out.value) / g1)
}
