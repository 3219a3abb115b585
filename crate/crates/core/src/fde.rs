//! Reduction of a linear variable-order fractional differential equation
//! 𝔻^{α(t)}x + c·x = g to a classical first-order ODE system.
//!
//! With the n = 1 Marchaud expansion, the history integral collapses into
//! the local moments V_k, giving the (N)-dimensional system
//!
//! ```text
//! x⁽¹⁾ = [ g − (A t^{−α} + c) x − Σ_{k=2}^{N} C_k t^{1−k−α} V_k ] / (B t^{1−α})
//! V_k⁽¹⁾ = (k−1) t^{k−2} x,   V_k(0) = 0
//! ```
//!
//! The right-hand side is singular at the lower limit, so integration starts
//! at a + ε with the nominal state (x₀, 0, …, 0) and warmup steps capped by
//! the Jacobian spectral radius (closed form: the Jacobian is an arrow
//! matrix).

use crate::fm;
use crate::ode::{rk4_singular_start, Trajectory};
use crate::order::OrderFunction;
use crate::reference::gamma_pos;
use crate::smooth::SmoothFunction;
use crate::specfun::lgamma_signed;
use crate::{Error, Result};
use alloc::boxed::Box;
use alloc::vec::Vec;

type Source = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// The problem 𝔻^{α(t)}x(t) + c·x(t) = g(t), x(a) = x₀, on [a, horizon].
pub struct LinearFdeProblem {
    ord: OrderFunction,
    source: Source,
    linear_coeff: f64,
    a: f64,
    x0: f64,
    horizon: f64,
}

impl LinearFdeProblem {
    pub fn new<G>(
        ord: OrderFunction,
        source: G,
        linear_coeff: f64,
        a: f64,
        x0: f64,
        horizon: f64,
    ) -> Result<Self>
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(horizon > a) {
            return Err(Error::InvalidParams {
                what: "fde horizon must exceed the start point",
            });
        }
        if !x0.is_finite() || !linear_coeff.is_finite() {
            return Err(Error::InvalidParams {
                what: "fde data must be finite",
            });
        }
        Ok(Self {
            ord,
            source: Box::new(source),
            linear_coeff,
            a,
            x0,
            horizon,
        })
    }

    pub fn order(&self) -> &OrderFunction {
        &self.ord
    }

    pub fn source(&self, t: f64) -> f64 {
        (self.source)(t)
    }

    pub fn linear_coeff(&self) -> f64 {
        self.linear_coeff
    }

    pub fn start(&self) -> f64 {
        self.a
    }

    pub fn initial_value(&self) -> f64 {
        self.x0
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }
}

/// The n = 1 reduction coefficients (A, B, C₂ … C_N):
///
/// ```text
/// A = (1/Γ(1−α)) [1 + Σ_{p=2}^{N} Γ(p−1+α)/(Γ(α)(p−1)!)]
/// B = (1/Γ(2−α)) [1 + Σ_{p=1}^{N} Γ(p−1+α)/(Γ(α−1) p!)]
/// C_k = Γ(k−1+α)/(Γ(−α)Γ(1+α)(k−1)!)
/// ```
///
/// These equal the derivative-expansion coefficients at n = 1:
/// A = A(α,0), B = A(α,1), C_k = B(α,k).
pub fn fde_coefficients(alpha: f64, trunc: u32) -> Result<(f64, f64, Vec<f64>)> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParams {
            what: "order must lie in (0,1)",
        });
    }
    if trunc < 2 {
        return Err(Error::InvalidParams {
            what: "fde reduction needs N >= 2",
        });
    }
    let (lg_a, _) = lgamma_signed(alpha);
    let (lg_am1, sg_am1) = lgamma_signed(alpha - 1.0);
    let (lg_neg, sg_neg) = lgamma_signed(-alpha);
    let (lg_1p, _) = lgamma_signed(1.0 + alpha);

    let mut sum_a = 0.0;
    for p in 2..=trunc {
        let (lg_num, _) = lgamma_signed(p as f64 - 1.0 + alpha);
        let (lg_f, _) = lgamma_signed(p as f64); // (p-1)!
        sum_a += fm::exp(lg_num - lg_a - lg_f);
    }
    let a = (1.0 + sum_a) / gamma_pos(1.0 - alpha);

    let mut sum_b = 0.0;
    for p in 1..=trunc {
        let (lg_num, _) = lgamma_signed(p as f64 - 1.0 + alpha);
        let (lg_f, _) = lgamma_signed(p as f64 + 1.0); // p!
        sum_b += sg_am1 * fm::exp(lg_num - lg_am1 - lg_f);
    }
    let b = (1.0 + sum_b) / gamma_pos(2.0 - alpha);

    let mut c = Vec::with_capacity((trunc - 1) as usize);
    for k in 2..=trunc {
        let (lg_num, _) = lgamma_signed(k as f64 - 1.0 + alpha);
        let (lg_f, _) = lgamma_signed(k as f64); // (k-1)!
        c.push(sg_neg * fm::exp(lg_num - lg_neg - lg_1p - lg_f));
    }
    Ok((a, b, c))
}

/// The reduced system: state (x, V₂, …, V_N), time measured from the start
/// point (the problem is translated so the singularity sits at 0).
pub struct ReducedOdeSystem<'a> {
    problem: &'a LinearFdeProblem,
    trunc: u32,
}

/// Build the reduced system of dimension N for a problem; N ≥ 2.
pub fn reduce(problem: &LinearFdeProblem, trunc: u32) -> Result<ReducedOdeSystem<'_>> {
    if trunc < 2 {
        return Err(Error::InvalidParams {
            what: "fde reduction needs N >= 2",
        });
    }
    Ok(ReducedOdeSystem { problem, trunc })
}

impl ReducedOdeSystem<'_> {
    pub fn state_dim(&self) -> usize {
        self.trunc as usize
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// Right-hand side at shifted time s = t − a (singular at s = 0).
    pub fn rhs(&self, s: f64, state: &[f64], out: &mut [f64]) {
        debug_assert!(s > 0.0, "reduced rhs is singular at the start point");
        let p = self.problem;
        let t = p.a + s;
        let alpha = p.ord.eval(t);
        let (a_c, b_c, c_c) = fde_coefficients(alpha, self.trunc)
            .expect("order validated at construction");
        let x = state[0];
        let mut acc = p.source(t) - (a_c * fm::powf(s, -alpha) + p.linear_coeff) * x;
        for k in 2..=self.trunc {
            acc -= c_c[(k - 2) as usize]
                * fm::powf(s, 1.0 - k as f64 - alpha)
                * state[(k - 1) as usize];
        }
        out[0] = acc / (b_c * fm::powf(s, 1.0 - alpha));
        for k in 2..=self.trunc {
            out[(k - 1) as usize] = (k as f64 - 1.0) * fm::powf(s, k as f64 - 2.0) * x;
        }
    }

    /// Spectral radius of the system Jacobian at shifted time s.
    ///
    /// Only the first row and first column of the Jacobian are nonzero
    /// (arrow form), so the nonzero eigenvalues solve
    /// λ² − a₁₁λ − Σ_k J_{1k}J_{k1} = 0 in closed form.
    pub fn stiffness(&self, s: f64) -> f64 {
        let p = self.problem;
        let alpha = p.ord.eval(p.a + s);
        let (a_c, b_c, c_c) = fde_coefficients(alpha, self.trunc)
            .expect("order validated at construction");
        let diag = (a_c * fm::powf(s, -alpha) + p.linear_coeff.abs()) / (b_c * fm::powf(s, 1.0 - alpha));
        let mut coupling = 0.0;
        for k in 2..=self.trunc {
            coupling += (k as f64 - 1.0) * c_c[(k - 2) as usize].abs();
        }
        coupling /= b_c * s * s;
        0.5 * (diag + fm::sqrt(diag * diag + 4.0 * coupling))
    }
}

/// Integrate the reduced system by fixed-step RK4 from t = a + start_eps to
/// the horizon, with stability-capped warmup steps near the singular start.
///
/// The initial state is (x₀, 0, …, 0), consistent with x(a) = x₀ and
/// V_k(a) = 0. Trajectory times are reported in the original variable.
pub fn solve_ivp(system: &ReducedOdeSystem<'_>, start_eps: f64, step: f64) -> Result<Trajectory> {
    let p = system.problem;
    let span = p.horizon - p.a;
    if !(start_eps > 0.0 && start_eps < span) {
        return Err(Error::InvalidParams {
            what: "start offset must lie inside (0, horizon - a)",
        });
    }
    if !(step > 0.0) {
        return Err(Error::InvalidParams {
            what: "step must be positive",
        });
    }
    let mut y0 = alloc::vec![0.0; system.state_dim()];
    y0[0] = p.x0;
    let rhs = |s: f64, y: &[f64], dy: &mut [f64]| system.rhs(s, y, dy);
    let stiff = |s: f64| system.stiffness(s);
    let mut traj = rk4_singular_start(&rhs, &stiff, start_eps, &y0, span, step)?;
    traj.shift_times(p.a);
    Ok(traj)
}

/// The worked instance 𝔻^{(t+1)/4}x + x = t^{(3−t)/4}/Γ((7−t)/4) + t,
/// x(0) = 0, whose exact solution is x̄(t) = t.
pub fn linear_test_problem() -> LinearFdeProblem {
    let ord = OrderFunction::new(|t| (t + 1.0) / 4.0, |_| 0.25, 0.0, 1.0)
        .expect("static demo order");
    LinearFdeProblem::new(
        ord,
        |t: f64| fm::powf(t, (3.0 - t) / 4.0) / gamma_pos((7.0 - t) / 4.0) + t,
        1.0,
        0.0,
        0.0,
        1.0,
    )
    .expect("static demo problem")
}

/// Moments of the computed trajectory, for consistency checks against the
/// V_k components carried in the state.
pub fn trajectory_moment_function(traj: &Trajectory, a: f64, b: f64) -> Result<SmoothFunction> {
    let ts: Vec<f64> = traj.times().to_vec();
    let xs: Vec<f64> = (0..traj.len()).map(|i| traj.state(i)[0]).collect();
    let ts2 = ts.clone();
    let xs2 = xs.clone();
    const H: f64 = 1e-6;
    SmoothFunction::new(
        alloc::vec![
            alloc::sync::Arc::new(move |t: f64| crate::quad::lerp_table(&ts, &xs, t)) as _,
            alloc::sync::Arc::new(move |t: f64| {
                (crate::quad::lerp_table(&ts2, &xs2, t + H) - crate::quad::lerp_table(&ts2, &xs2, t - H))
                    / (2.0 * H)
            }) as _,
        ],
        a,
        b,
    )
}
