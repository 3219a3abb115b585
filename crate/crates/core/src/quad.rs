//! Quadrature kernels: composite Gauss–Legendre panels with doubling
//! refinement, and the substitutions that remove the weak endpoint
//! singularities of the fractional kernels.
//!
//! For a kernel |t−τ|^{−β} with 0 < β < 1 the substitution
//! u = |t−τ|^{1−β} turns the integrand into a bounded one, so plain panels
//! converge. The logarithmic kernel |t−τ|^{−β} ln|t−τ| keeps a ln u factor
//! after the same substitution; a geometric mesh graded toward u = 0
//! (ratio 1/2, 40 levels) handles it.

use crate::fm;

/// 16-point Gauss–Legendre rule: positive nodes and weights.
const GL16: [(f64, f64); 8] = [
    (0.095_012_509_837_637_44, 0.189_450_610_455_068_5),
    (0.281_603_550_779_258_91, 0.182_603_415_044_923_59),
    (0.458_016_777_657_227_39, 0.169_156_519_395_002_54),
    (0.617_876_244_402_643_75, 0.149_595_988_816_576_73),
    (0.755_404_408_355_003_03, 0.124_628_971_255_533_87),
    (0.865_631_202_387_831_74, 0.095_158_511_682_492_785),
    (0.944_575_023_073_232_58, 0.062_253_523_938_647_893),
    (0.989_400_934_991_649_93, 0.027_152_459_411_754_095),
];

/// Single 16-point Gauss–Legendre panel over [a, b].
pub(crate) fn gl16<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let rad = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL16 {
        acc += w * (f(mid + rad * x) + f(mid - rad * x));
    }
    rad * acc
}

/// Outcome of a refining quadrature: value, error estimate from the last
/// refinement step, and whether the estimate met the tolerance.
#[derive(Debug, Clone, Copy)]
pub struct QuadOutcome {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

const MAX_DOUBLINGS: u32 = 13;

/// Composite 16-point panels, doubling the panel count until two successive
/// refinements differ by at most `tol`.
pub(crate) fn adaptive<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64, tol: f64) -> QuadOutcome {
    if a == b {
        return QuadOutcome {
            value: 0.0,
            error: 0.0,
            converged: true,
        };
    }
    let mut prev = gl16(f, a, b);
    let mut panels = 2usize;
    for _ in 0..MAX_DOUBLINGS {
        let h = (b - a) / panels as f64;
        let mut cur = 0.0;
        for i in 0..panels {
            let lo = a + i as f64 * h;
            cur += gl16(f, lo, lo + h);
        }
        let diff = (cur - prev).abs();
        if diff <= tol {
            return QuadOutcome {
                value: cur,
                error: diff,
                converged: true,
            };
        }
        prev = cur;
        panels *= 2;
    }
    QuadOutcome {
        value: prev,
        error: f64::INFINITY,
        converged: false,
    }
}

/// ∫ over [min(t,far), max(t,far)] of |t−τ|^{−β} f(τ) dτ, with the kernel
/// singular at τ = t and 0 < β < 1.
///
/// The substitution u = |t−τ|^{1−β} removes the algebraic singularity
/// exactly; the image integrand is f(t ± u^{1/(1−β)})/(1−β).
pub(crate) fn singular_power<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    t: f64,
    far: f64,
    beta: f64,
    tol: f64,
) -> QuadOutcome {
    debug_assert!(beta > 0.0 && beta < 1.0);
    let span = (far - t).abs();
    if span == 0.0 {
        return QuadOutcome {
            value: 0.0,
            error: 0.0,
            converged: true,
        };
    }
    let dir = if far > t { 1.0 } else { -1.0 };
    let e = 1.0 / (1.0 - beta);
    let upper = fm::powf(span, 1.0 - beta);
    let g = move |u: f64| f(t + dir * fm::powf(u, e));
    let out = adaptive(&g, 0.0, upper, tol * (1.0 - beta));
    QuadOutcome {
        value: e * out.value,
        error: e * out.error,
        converged: out.converged,
    }
}

const LOG_MESH_LEVELS: u32 = 40;
const LOG_MESH_RATIO: f64 = 0.5;

/// ∫ over [min(t,far), max(t,far)] of |t−τ|^{−β} ln|t−τ| f(τ) dτ.
///
/// After the u-substitution of [`singular_power`] a pure ln u factor
/// remains; the integral is taken over a geometric mesh refined toward
/// u = 0 with one plain panel on the innermost piece (Gauss nodes never
/// touch the endpoint).
pub(crate) fn singular_power_log<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    t: f64,
    far: f64,
    beta: f64,
    tol: f64,
) -> QuadOutcome {
    debug_assert!(beta > 0.0 && beta < 1.0);
    let span = (far - t).abs();
    if span == 0.0 {
        return QuadOutcome {
            value: 0.0,
            error: 0.0,
            converged: true,
        };
    }
    let dir = if far > t { 1.0 } else { -1.0 };
    let e = 1.0 / (1.0 - beta);
    let upper = fm::powf(span, 1.0 - beta);
    let g = move |u: f64| fm::ln(u) * f(t + dir * fm::powf(u, e));

    let scale = e * e;
    let level_tol = tol / (scale * (LOG_MESH_LEVELS + 1) as f64);
    let mut total = 0.0;
    let mut err = 0.0;
    let mut converged = true;
    let mut hi = upper;
    for _ in 0..LOG_MESH_LEVELS {
        let lo = hi * LOG_MESH_RATIO;
        let out = adaptive(&g, lo, hi, level_tol);
        total += out.value;
        err += out.error;
        converged &= out.converged;
        hi = lo;
    }
    // innermost panel [0, hi]: ln u is integrable and the nodes stay interior
    total += gl16(&g, 0.0, hi);
    QuadOutcome {
        value: scale * total,
        error: scale * err,
        converged,
    }
}

/// Composite Simpson rule with an even number of intervals.
pub fn simpson<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64, intervals: usize) -> f64 {
    assert!(intervals >= 2 && intervals.is_multiple_of(2), "even interval count required");
    let h = (b - a) / intervals as f64;
    let mut acc = f(a) + f(b);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Simpson rule over tabulated values on a uniform grid (odd length).
pub fn simpson_samples(values: &[f64], h: f64) -> f64 {
    assert!(values.len() >= 3 && !values.len().is_multiple_of(2), "odd sample count required");
    let mut acc = values[0] + values[values.len() - 1];
    for (i, v) in values.iter().enumerate().skip(1).take(values.len() - 2) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    acc * h / 3.0
}

/// Dense sampling maximum of |f| over [lo, hi] (1001 equispaced points).
///
/// A lower estimate of the true maximum; fine enough for the Lipschitz-type
/// factors L_j(t) in the error bounds.
pub(crate) fn sampled_max_abs<F: Fn(f64) -> f64 + ?Sized>(f: &F, lo: f64, hi: f64) -> f64 {
    const SAMPLES: usize = 1001;
    let mut best = 0.0f64;
    for i in 0..SAMPLES {
        let t = lo + (hi - lo) * i as f64 / (SAMPLES - 1) as f64;
        best = best.max(f(t).abs());
    }
    best
}

/// Piecewise-linear interpolant through (xs, ys); constant extrapolation.
pub(crate) fn lerp_table(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[xs.len() - 1] {
        return ys[ys.len() - 1];
    }
    // binary search for the segment
    let mut lo = 0usize;
    let mut hi = xs.len() - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if xs[mid] <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let w = (x - xs[lo]) / (xs[hi] - xs[lo]);
    ys[lo] + w * (ys[hi] - ys[lo])
}
