//! Integer-derivative expansion of the variable-order operators.
//!
//! Each operator is approximated by
//!
//! ```text
//! S₁(t) = w(t)^{∓α(t)} [ Σ_{k=0}^{n} A(α,k) w^k x⁽ᵏ⁾(t) + Σ_{k=n+1}^{N} B(α,k) w^{n−k} M_k(t) ]
//! ```
//!
//! with w the distance to the anchor, M the left moments V_k or right
//! moments W_k, plus (for the Riemann–Liouville derivatives) an
//! α′(t)-proportional correction S₂(t) that compensates the derivative of
//! the order function itself. Truncation at N carries the a-priori bounds
//! implemented by [`bound_e1`], [`bound_e2`] and [`bound_en_integral`]; the
//! bound decay exponents are n−α(t) (derivatives) and n+α(t) (integral).
//!
//! The moment index demands differ: S₁ needs k ≤ N, while the double sum in
//! S₂ reaches V_{k+p} with k ≤ N+n+1, p ≤ N, so a Riemann–Liouville
//! derivative needs moments up to 2N+n+1.

use crate::fm;
use crate::order::OrderFunction;
use crate::quad::{adaptive, sampled_max_abs};
use crate::reference::gamma_pos;
use crate::smooth::SmoothFunction;
use crate::specfun::{binom_signed, lgamma_signed};
use crate::{Error, Result};
use alloc::vec::Vec;

/// Absolute quadrature tolerance per moment value.
const MOMENT_TOL: f64 = 1e-10;

/// Truncation parameters: n is the highest integer derivative used,
/// `trunc` is the series length N, with N ≥ n+1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionParams {
    n: u32,
    trunc: u32,
}

impl ExpansionParams {
    pub fn new(n: u32, trunc: u32) -> Result<Self> {
        if trunc < n + 1 {
            return Err(Error::InvalidParams {
                what: "truncation size N must satisfy N >= n+1",
            });
        }
        Ok(Self { n, trunc })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// The truncation size N.
    #[inline]
    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// Highest moment index the Riemann–Liouville derivative expansion needs.
    pub fn moment_kmax_rl(&self) -> u32 {
        2 * self.trunc + self.n + 1
    }

    /// Highest moment index S₁ alone (Marchaud, integral) needs.
    pub fn moment_kmax_s1(&self) -> u32 {
        self.trunc
    }
}

/// Which endpoint an operator anchors at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Moment values V_k(t) (left) or W_k(t) (right) for k = n+1 … k_max.
///
/// Left: V_k(t) = (k−n) ∫ₐᵗ (τ−a)^{k−n−1} x(τ) dτ;
/// right: W_k(t) = (k−n) ∫ₜᵇ (b−τ)^{k−n−1} x(τ) dτ.
#[derive(Debug, Clone)]
pub struct MomentVector {
    side: Side,
    n: u32,
    t: f64,
    values: Vec<f64>,
}

impl MomentVector {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn k_max(&self) -> u32 {
        self.n + self.values.len() as u32
    }

    /// Moment of order k (k ≥ n+1).
    pub fn value(&self, k: u32) -> Result<f64> {
        if k <= self.n {
            return Err(Error::InvalidParams {
                what: "moment index must exceed n",
            });
        }
        self.values
            .get((k - self.n - 1) as usize)
            .copied()
            .ok_or(Error::InsufficientMoments {
                needed: k,
                have: self.k_max(),
            })
    }

    fn require(&self, side: Side, n: u32, t: f64, k_hi: u32) -> Result<()> {
        if self.side != side || self.n != n || self.t.to_bits() != t.to_bits() {
            return Err(Error::InvalidParams {
                what: "moment vector built for different side, n, or t",
            });
        }
        if self.k_max() < k_hi {
            return Err(Error::InsufficientMoments {
                needed: k_hi,
                have: self.k_max(),
            });
        }
        Ok(())
    }
}

/// Left moments of x on [a, t] for k = n+1 … k_max, each to 1e-10 absolute.
pub fn moments_left(x: &SmoothFunction, a: f64, t: f64, n: u32, k_max: u32) -> Result<MomentVector> {
    if !(t > a) {
        return Err(Error::Domain {
            what: "left moments need t > a",
        });
    }
    if k_max < n + 1 {
        return Err(Error::InvalidParams {
            what: "k_max must be at least n+1",
        });
    }
    let mut values = Vec::with_capacity((k_max - n) as usize);
    for k in (n + 1)..=k_max {
        let e = (k - n - 1) as f64;
        let factor = (k - n) as f64;
        let f = |tau: f64| fm::powf(tau - a, e) * x.eval(tau);
        let out = adaptive(&f, a, t, MOMENT_TOL / factor);
        if !out.converged {
            return Err(Error::QuadratureNonConvergence {
                achieved: out.error * factor,
                tol: MOMENT_TOL,
            });
        }
        values.push(factor * out.value);
    }
    Ok(MomentVector {
        side: Side::Left,
        n,
        t,
        values,
    })
}

/// Right moments of x on [t, b] for k = n+1 … k_max.
pub fn moments_right(x: &SmoothFunction, b: f64, t: f64, n: u32, k_max: u32) -> Result<MomentVector> {
    if !(t < b) {
        return Err(Error::Domain {
            what: "right moments need t < b",
        });
    }
    if k_max < n + 1 {
        return Err(Error::InvalidParams {
            what: "k_max must be at least n+1",
        });
    }
    let mut values = Vec::with_capacity((k_max - n) as usize);
    for k in (n + 1)..=k_max {
        let e = (k - n - 1) as f64;
        let factor = (k - n) as f64;
        let f = |tau: f64| fm::powf(b - tau, e) * x.eval(tau);
        let out = adaptive(&f, t, b, MOMENT_TOL / factor);
        if !out.converged {
            return Err(Error::QuadratureNonConvergence {
                achieved: out.error * factor,
                tol: MOMENT_TOL,
            });
        }
        values.push(factor * out.value);
    }
    Ok(MomentVector {
        side: Side::Right,
        n,
        t,
        values,
    })
}

/// exp(lgΓ(num) − lgΓ(den)) with sign tracking; factorial as Γ(m+1).
fn signed_gamma_over(num: f64, den: f64, factorial_arg: u32) -> f64 {
    let (ln_n, sg_n) = lgamma_signed(num);
    let (ln_d, sg_d) = lgamma_signed(den);
    let (ln_f, _) = lgamma_signed(factorial_arg as f64 + 1.0);
    sg_n * sg_d * fm::exp(ln_n - ln_d - ln_f)
}

/// A(α,k) of the left Riemann–Liouville derivative expansion, 0 ≤ k ≤ n:
/// (1/Γ(k+1−α)) [1 + Σ_{p=n+1−k}^{N} Γ(p−n+α)/(Γ(α−k)(p−n+k)!)].
pub fn coeff_a_deriv_left(alpha: f64, k: u32, params: &ExpansionParams) -> f64 {
    assert!(k <= params.n, "A(alpha,k) is defined for k <= n");
    assert!(alpha > 0.0 && alpha < 1.0);
    let n = params.n as i64;
    let k_i = k as i64;
    let mut sum = 0.0;
    for p in (n + 1 - k_i)..=(params.trunc as i64) {
        sum += signed_gamma_over(
            (p - n) as f64 + alpha,
            alpha - k as f64,
            (p - n + k_i) as u32,
        );
    }
    (1.0 + sum) / gamma_pos(k as f64 + 1.0 - alpha)
}

/// B(α,k) of the left Riemann–Liouville derivative expansion, k ≥ n+1:
/// Γ(k−n+α)/(Γ(−α)Γ(1+α)(k−n)!); negative for every valid input.
pub fn coeff_b_deriv_left(alpha: f64, k: u32, n: u32) -> f64 {
    assert!(k > n, "B(alpha,k) is defined for k >= n+1");
    assert!(alpha > 0.0 && alpha < 1.0);
    let (ln_num, _) = lgamma_signed((k - n) as f64 + alpha);
    let (ln_neg, sg_neg) = lgamma_signed(-alpha);
    let (ln_1p, _) = lgamma_signed(1.0 + alpha);
    let (ln_f, _) = lgamma_signed((k - n) as f64 + 1.0);
    sg_neg * fm::exp(ln_num - ln_neg - ln_1p - ln_f)
}

/// Right-derivative A coefficient: the left one times (−1)^k.
pub fn coeff_a_deriv_right(alpha: f64, k: u32, params: &ExpansionParams) -> f64 {
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * coeff_a_deriv_left(alpha, k, params)
}

/// Right-derivative B coefficient.
///
/// Identical to the left one: reflecting τ ↦ a+b−τ maps the right operator
/// onto the left operator with W_k in place of V_k and no extra sign on the
/// moment sum, which quadrature confirms for every n.
pub fn coeff_b_deriv_right(alpha: f64, k: u32, n: u32) -> f64 {
    coeff_b_deriv_left(alpha, k, n)
}

/// A(α,k) of the left integral expansion:
/// (1/Γ(k+1+α)) [1 + Σ_{p=n+1−k}^{N} Γ(p−n−α)/(Γ(−α−k)(p−n+k)!)].
///
/// Structurally the derivative coefficient with α ↦ −α.
pub fn coeff_a_integral(alpha: f64, k: u32, params: &ExpansionParams) -> f64 {
    assert!(k <= params.n, "A(alpha,k) is defined for k <= n");
    assert!(alpha > 0.0 && alpha < 1.0);
    let n = params.n as i64;
    let k_i = k as i64;
    let mut sum = 0.0;
    for p in (n + 1 - k_i)..=(params.trunc as i64) {
        sum += signed_gamma_over(
            (p - n) as f64 - alpha,
            -alpha - k as f64,
            (p - n + k_i) as u32,
        );
    }
    (1.0 + sum) / gamma_pos(k as f64 + 1.0 + alpha)
}

/// B(α,k) of the left integral expansion: Γ(k−n−α)/(Γ(α)Γ(1−α)(k−n)!).
pub fn coeff_b_integral(alpha: f64, k: u32, n: u32) -> f64 {
    assert!(k > n, "B(alpha,k) is defined for k >= n+1");
    assert!(alpha > 0.0 && alpha < 1.0);
    let (ln_num, _) = lgamma_signed((k - n) as f64 - alpha);
    let (ln_a, _) = lgamma_signed(alpha);
    let (ln_1m, _) = lgamma_signed(1.0 - alpha);
    let (ln_f, _) = lgamma_signed((k - n) as f64 + 1.0);
    fm::exp(ln_num - ln_a - ln_1m - ln_f)
}

#[derive(Clone, Copy)]
enum S1Kind {
    DerivLeft,
    DerivRight,
    IntegralLeft,
}

fn s1_eval(
    kind: S1Kind,
    x: &SmoothFunction,
    ord: &OrderFunction,
    params: &ExpansionParams,
    t: f64,
    moments: &MomentVector,
) -> Result<f64> {
    let (a, b) = x.domain();
    let (side, span) = match kind {
        S1Kind::DerivLeft | S1Kind::IntegralLeft => {
            if !(t > a) {
                return Err(Error::Domain {
                    what: "left expansion needs t > a",
                });
            }
            (Side::Left, t - a)
        }
        S1Kind::DerivRight => {
            if !(t < b) {
                return Err(Error::Domain {
                    what: "right expansion needs t < b",
                });
            }
            (Side::Right, b - t)
        }
    };
    if x.max_order() < params.n {
        return Err(Error::InsufficientDerivatives {
            needed: params.n,
            have: x.max_order(),
        });
    }
    moments.require(side, params.n, t, params.trunc)?;

    let alpha = ord.eval(t);
    let mut acc = 0.0;
    for k in 0..=params.n {
        let coeff = match kind {
            S1Kind::DerivLeft => coeff_a_deriv_left(alpha, k, params),
            S1Kind::DerivRight => coeff_a_deriv_right(alpha, k, params),
            S1Kind::IntegralLeft => coeff_a_integral(alpha, k, params),
        };
        acc += coeff * fm::powf(span, k as f64) * x.deriv_unchecked(k, t);
    }
    for k in (params.n + 1)..=params.trunc {
        let coeff = match kind {
            S1Kind::DerivLeft => coeff_b_deriv_left(alpha, k, params.n),
            S1Kind::DerivRight => coeff_b_deriv_right(alpha, k, params.n),
            S1Kind::IntegralLeft => coeff_b_integral(alpha, k, params.n),
        };
        acc += coeff * fm::powf(span, params.n as f64 - k as f64) * moments.value(k)?;
    }
    let prefix = match kind {
        S1Kind::DerivLeft | S1Kind::DerivRight => fm::powf(span, -alpha),
        S1Kind::IntegralLeft => fm::powf(span, alpha),
    };
    Ok(prefix * acc)
}

/// S₁ of the left derivative expansions (Riemann–Liouville and Marchaud).
pub fn s1_left(
    x: &SmoothFunction,
    ord: &OrderFunction,
    params: &ExpansionParams,
    t: f64,
    moments: &MomentVector,
) -> Result<f64> {
    s1_eval(S1Kind::DerivLeft, x, ord, params, t, moments)
}

/// S₁ of the right derivative expansions.
pub fn s1_right(
    x: &SmoothFunction,
    ord: &OrderFunction,
    params: &ExpansionParams,
    t: f64,
    moments: &MomentVector,
) -> Result<f64> {
    s1_eval(S1Kind::DerivRight, x, ord, params, t, moments)
}

fn s2_eval(
    side: Side,
    x: &SmoothFunction,
    ord: &OrderFunction,
    params: &ExpansionParams,
    t: f64,
    moments: &MomentVector,
) -> Result<f64> {
    let a1 = ord.deriv(t);
    if a1 == 0.0 {
        return Ok(0.0);
    }
    let (a, b) = x.domain();
    let span = match side {
        Side::Left => {
            if !(t > a) {
                return Err(Error::Domain {
                    what: "left expansion needs t > a",
                });
            }
            t - a
        }
        Side::Right => {
            if !(t < b) {
                return Err(Error::Domain {
                    what: "right expansion needs t < b",
                });
            }
            b - t
        }
    };
    let n = params.n;
    let nn = params.trunc;
    moments.require(side, n, t, params.moment_kmax_rl())?;

    let alpha = ord.eval(t);
    let g1 = gamma_pos(1.0 - alpha);
    let lt = fm::ln(span);
    let om = 1.0 - alpha;

    // x(t)-proportional bracket
    let mut sum_log = 0.0;
    let mut sum_dbl = 0.0;
    for k in 0..=nn {
        let bs = binom_signed(alpha, k);
        sum_log += bs / (k as f64 + 1.0);
        let mut inner = 0.0;
        for p in 1..=nn {
            inner += 1.0 / (p as f64 * (k + p + 1) as f64);
        }
        sum_dbl += bs * inner;
    }
    let bracket1 = lt / om - 1.0 / (om * om) - lt * sum_log + sum_dbl;
    let first = x.eval(t) * a1 / g1 * fm::powf(span, om) * bracket1;

    // moment bracket: ln-weighted single sum minus the V_{k+p} double sum
    let mut m1 = 0.0;
    let mut m2 = 0.0;
    for k in (n + 1)..=(nn + n + 1) {
        let bs = binom_signed(alpha, k - n - 1);
        m1 += bs / (k - n) as f64 * fm::powf(span, n as f64 - k as f64) * moments.value(k)?;
        let mut inner = 0.0;
        for p in 1..=nn {
            inner += fm::powf(span, (n as i64 - k as i64 - p as i64) as f64)
                / (p as f64 * (k + p - n) as f64)
                * moments.value(k + p)?;
        }
        m2 += bs * inner;
    }
    let second = a1 / g1 * fm::powf(span, om) * (lt * m1 - m2);
    Ok(first + second)
}

/// S₂ of the left Riemann–Liouville derivative expansion; exactly 0 when
/// α′(t) = 0.
pub fn s2_left(
    x: &SmoothFunction,
    ord: &OrderFunction,
    params: &ExpansionParams,
    t: f64,
    moments: &MomentVector,
) -> Result<f64> {
    s2_eval(Side::Left, x, ord, params, t, moments)
}

/// S₂ of the right Riemann–Liouville derivative expansion.
pub fn s2_right(
    x: &SmoothFunction,
    ord: &OrderFunction,
    params: &ExpansionParams,
    t: f64,
    moments: &MomentVector,
) -> Result<f64> {
    s2_eval(Side::Right, x, ord, params, t, moments)
}

/// Approximation value with its S₁/S₂ split and a-priori error bounds.
#[derive(Debug, Clone, Copy)]
pub struct ApproxReport {
    pub value: f64,
    pub s1: f64,
    /// 0 for the Marchaud and integral expansions.
    pub s2: f64,
    pub bound_e1: f64,
    /// 0 when no S₂ term exists.
    pub bound_e2: f64,
}

fn require_smoothness(x: &SmoothFunction, params: &ExpansionParams) -> Result<()> {
    if x.max_order() < params.n + 1 {
        return Err(Error::InsufficientDerivatives {
            needed: params.n + 1,
            have: x.max_order(),
        });
    }
    Ok(())
}

/// Left Riemann–Liouville derivative ≈ S₁ − S₂; error within
/// bound_e1 + bound_e2.
pub fn approx_left_rl_derivative(
    x: &SmoothFunction,
    ord: &OrderFunction,
    params: &ExpansionParams,
    t: f64,
) -> Result<ApproxReport> {
    require_smoothness(x, params)?;
    let (a, _) = x.domain();
    let k_max = if ord.deriv(t) == 0.0 {
        params.moment_kmax_s1()
    } else {
        params.moment_kmax_rl()
    };
    let moments = moments_left(x, a, t, params.n, k_max)?;
    let s1 = s1_left(x, ord, params, t, &moments)?;
    let s2 = s2_left(x, ord, params, t, &moments)?;
    let value = if s2 == 0.0 { s1 } else { s1 - s2 };
    Ok(ApproxReport {
        value,
        s1,
        s2,
        bound_e1: bound_e1(x, ord, params, t, Side::Left)?,
        bound_e2: bound_e2(x, ord, params, t, Side::Left)?,
    })
}

/// Right Riemann–Liouville derivative ≈ S₁ + S₂ (note the plus sign).
pub fn approx_right_rl_derivative(
    x: &SmoothFunction,
    ord: &OrderFunction,
    params: &ExpansionParams,
    t: f64,
) -> Result<ApproxReport> {
    require_smoothness(x, params)?;
    let (_, b) = x.domain();
    let k_max = if ord.deriv(t) == 0.0 {
        params.moment_kmax_s1()
    } else {
        params.moment_kmax_rl()
    };
    let moments = moments_right(x, b, t, params.n, k_max)?;
    let s1 = s1_right(x, ord, params, t, &moments)?;
    let s2 = s2_right(x, ord, params, t, &moments)?;
    let value = if s2 == 0.0 { s1 } else { s1 + s2 };
    Ok(ApproxReport {
        value,
        s1,
        s2,
        bound_e1: bound_e1(x, ord, params, t, Side::Right)?,
        bound_e2: bound_e2(x, ord, params, t, Side::Right)?,
    })
}

/// Left Riemann–Liouville integral ≈ (t−a)^{α}[…]; error within
/// bound_en_integral.
pub fn approx_left_integral(
    x: &SmoothFunction,
    ord: &OrderFunction,
    params: &ExpansionParams,
    t: f64,
) -> Result<ApproxReport> {
    require_smoothness(x, params)?;
    let (a, _) = x.domain();
    let moments = moments_left(x, a, t, params.n, params.moment_kmax_s1())?;
    let s1 = s1_eval(S1Kind::IntegralLeft, x, ord, params, t, &moments)?;
    Ok(ApproxReport {
        value: s1,
        s1,
        s2: 0.0,
        bound_e1: bound_en_integral(x, ord, params, t)?,
        bound_e2: 0.0,
    })
}

/// Left Marchaud derivative ≈ S₁; error within bound_e1.
pub fn approx_left_marchaud(
    x: &SmoothFunction,
    ord: &OrderFunction,
    params: &ExpansionParams,
    t: f64,
) -> Result<ApproxReport> {
    require_smoothness(x, params)?;
    let (a, _) = x.domain();
    let moments = moments_left(x, a, t, params.n, params.moment_kmax_s1())?;
    let s1 = s1_left(x, ord, params, t, &moments)?;
    Ok(ApproxReport {
        value: s1,
        s1,
        s2: 0.0,
        bound_e1: bound_e1(x, ord, params, t, Side::Left)?,
        bound_e2: 0.0,
    })
}

/// Right Marchaud derivative ≈ S₁ (right coefficients and W moments).
pub fn approx_right_marchaud(
    x: &SmoothFunction,
    ord: &OrderFunction,
    params: &ExpansionParams,
    t: f64,
) -> Result<ApproxReport> {
    require_smoothness(x, params)?;
    let (_, b) = x.domain();
    let moments = moments_right(x, b, t, params.n, params.moment_kmax_s1())?;
    let s1 = s1_right(x, ord, params, t, &moments)?;
    Ok(ApproxReport {
        value: s1,
        s1,
        s2: 0.0,
        bound_e1: bound_e1(x, ord, params, t, Side::Right)?,
        bound_e2: 0.0,
    })
}

fn bound_interval(x: &SmoothFunction, t: f64, side: Side) -> (f64, f64, f64) {
    let (a, b) = x.domain();
    match side {
        Side::Left => (a, t, t - a),
        Side::Right => (t, b, b - t),
    }
}

/// Bound on |E_{1,N}(t)|:
/// L_{n+1}(t)·exp((n−α)²+n−α) / (Γ(n+1−α)(n−α)N^{n−α}) · w^{n+1−α}.
///
/// L_{n+1} is the sampled maximum of |x⁽ⁿ⁺¹⁾| over \[a,t\] (left) or
/// \[t,b\] (right). When n ≤ α(t) the decay exponent is non-positive and the bound
/// formula carries no information; the result is +∞ in that case.
pub fn bound_e1(
    x: &SmoothFunction,
    ord: &OrderFunction,
    params: &ExpansionParams,
    t: f64,
    side: Side,
) -> Result<f64> {
    require_smoothness(x, params)?;
    let alpha = ord.eval(t);
    let nf = params.n as f64;
    if nf <= alpha {
        return Ok(f64::INFINITY);
    }
    let (lo, hi, span) = bound_interval(x, t, side);
    let d = x.deriv_fn(params.n + 1);
    let l = sampled_max_abs(&|tau| d(tau), lo, hi);
    let dec = nf - alpha;
    Ok(l * fm::exp(dec * dec + dec)
        / (gamma_pos(nf + 1.0 - alpha) * dec * fm::powf(params.trunc as f64, dec))
        * fm::powf(span, nf + 1.0 - alpha))
}

/// Bound on |E_{2,N}(t)|:
/// L₁(t)|α′(t)| w^{2−α} exp(α²−α) / (Γ(2−α)N^{1−α}) · (|ln w| + 1/N).
///
/// Grows without bound as t approaches the anchor (the |ln w| factor); this
/// is the stated behavior and is not clamped.
pub fn bound_e2(
    x: &SmoothFunction,
    ord: &OrderFunction,
    params: &ExpansionParams,
    t: f64,
    side: Side,
) -> Result<f64> {
    if x.max_order() < 1 {
        return Err(Error::InsufficientDerivatives {
            needed: 1,
            have: x.max_order(),
        });
    }
    let alpha = ord.eval(t);
    let a1 = ord.deriv(t);
    if a1 == 0.0 {
        return Ok(0.0);
    }
    let (lo, hi, span) = bound_interval(x, t, side);
    let d = x.deriv_fn(1);
    let l1 = sampled_max_abs(&|tau| d(tau), lo, hi);
    let nn = params.trunc as f64;
    Ok(
        l1 * a1.abs() * fm::powf(span, 2.0 - alpha) * fm::exp(alpha * alpha - alpha)
            / (gamma_pos(2.0 - alpha) * fm::powf(nn, 1.0 - alpha))
            * (fm::ln(span).abs() + 1.0 / nn),
    )
}

/// Bound on |E_N(t)| for the integral expansion: the E₁ bound with decay
/// exponent n+α(t) instead of n−α(t).
pub fn bound_en_integral(
    x: &SmoothFunction,
    ord: &OrderFunction,
    params: &ExpansionParams,
    t: f64,
) -> Result<f64> {
    require_smoothness(x, params)?;
    let alpha = ord.eval(t);
    let nf = params.n as f64;
    let (lo, hi, span) = bound_interval(x, t, Side::Left);
    let d = x.deriv_fn(params.n + 1);
    let l = sampled_max_abs(&|tau| d(tau), lo, hi);
    let dec = nf + alpha;
    Ok(l * fm::exp(dec * dec + dec)
        / (gamma_pos(nf + 1.0 + alpha) * dec * fm::powf(params.trunc as f64, dec))
        * fm::powf(span, nf + 1.0 + alpha))
}
