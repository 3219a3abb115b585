//! Fixed-step classical Runge–Kutta with a stability-capped warmup for
//! systems whose right-hand side carries a 1/t factor at the start, plus the
//! small dense solve the shooting Newton iteration needs.
//!
//! The reduced systems here have Jacobian eigenvalues that scale like
//! σ(t) ≈ c/t near the singular endpoint, so a fixed step h is only stable
//! once t ≳ h·c/2. The warmup phase therefore takes steps
//! dt = min(t/4, 2/σ(t)) until the nominal step h becomes admissible, after
//! which plain fixed-step RK4 runs to the horizon. Both phases are
//! deterministic.

use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// A time grid with the state vector at each node.
#[derive(Debug, Clone)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<Vec<f64>>,
}

impl Trajectory {
    #[cfg(test)]
    pub(crate) fn from_parts(times: Vec<f64>, states: Vec<Vec<f64>>) -> Self {
        debug_assert!(times.len() == states.len() && !times.is_empty());
        Self { times, states }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn state(&self, i: usize) -> &[f64] {
        &self.states[i]
    }

    pub fn first_time(&self) -> f64 {
        self.times[0]
    }

    pub fn last_time(&self) -> f64 {
        self.times[self.times.len() - 1]
    }

    pub fn last_state(&self) -> &[f64] {
        &self.states[self.states.len() - 1]
    }

    /// State linearly interpolated at time `t` (clamped to the grid range).
    pub fn interpolate(&self, t: f64) -> Vec<f64> {
        if t <= self.times[0] {
            return self.states[0].clone();
        }
        let last = self.times.len() - 1;
        if t >= self.times[last] {
            return self.states[last].clone();
        }
        let mut lo = 0usize;
        let mut hi = last;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.times[mid] <= t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let w = (t - self.times[lo]) / (self.times[hi] - self.times[lo]);
        self.states[lo]
            .iter()
            .zip(&self.states[hi])
            .map(|(a, b)| a + w * (b - a))
            .collect()
    }

    /// One state component linearly interpolated at time `t`.
    pub fn component(&self, idx: usize, t: f64) -> f64 {
        self.interpolate(t)[idx]
    }

    /// Apply `shift` to every time node (used to undo internal translation).
    pub(crate) fn shift_times(&mut self, shift: f64) {
        for t in &mut self.times {
            *t += shift;
        }
    }
}

/// Right-hand side writing dy into `out`; `t` is the (possibly shifted) time.
pub(crate) type Rhs<'a> = &'a dyn Fn(f64, &[f64], &mut [f64]);

/// Estimated spectral radius of the Jacobian at time t.
pub(crate) type Stiffness<'a> = &'a dyn Fn(f64) -> f64;

fn all_finite(y: &[f64]) -> bool {
    y.iter().all(|v| v.is_finite())
}

struct Rk4Buffers {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    tmp: Vec<f64>,
}

impl Rk4Buffers {
    fn new(dim: usize) -> Self {
        Self {
            k1: vec![0.0; dim],
            k2: vec![0.0; dim],
            k3: vec![0.0; dim],
            k4: vec![0.0; dim],
            tmp: vec![0.0; dim],
        }
    }
}

#[allow(clippy::needless_range_loop)]
fn rk4_step(rhs: Rhs<'_>, t: f64, y: &mut [f64], h: f64, buf: &mut Rk4Buffers) {
    rhs(t, y, &mut buf.k1);
    for i in 0..y.len() {
        buf.tmp[i] = y[i] + 0.5 * h * buf.k1[i];
    }
    rhs(t + 0.5 * h, &buf.tmp, &mut buf.k2);
    for i in 0..y.len() {
        buf.tmp[i] = y[i] + 0.5 * h * buf.k2[i];
    }
    rhs(t + 0.5 * h, &buf.tmp, &mut buf.k3);
    for i in 0..y.len() {
        buf.tmp[i] = y[i] + h * buf.k3[i];
    }
    rhs(t + h, &buf.tmp, &mut buf.k4);
    for i in 0..y.len() {
        y[i] += h / 6.0 * (buf.k1[i] + 2.0 * buf.k2[i] + 2.0 * buf.k3[i] + buf.k4[i]);
    }
}

/// RK4 stability margin on the negative real axis (|hλ| < 2.78 is the exact
/// boundary; 2.0 leaves headroom for complex spectra).
const STABILITY_MARGIN: f64 = 2.0;

/// Relative warmup step: never step further than a quarter of the distance
/// to the singular point at t = 0.
const WARMUP_FRACTION: f64 = 0.25;

/// Integrate from (t0, y0) to t_end: warmup steps capped by stability and by
/// the distance to the singularity at t = 0, then fixed steps of nominal
/// size `h` (adjusted once so the grid lands exactly on t_end).
pub(crate) fn rk4_singular_start(
    rhs: Rhs<'_>,
    stiffness: Stiffness<'_>,
    t0: f64,
    y0: &[f64],
    t_end: f64,
    h: f64,
) -> Result<Trajectory> {
    debug_assert!(t0 > 0.0 && t_end > t0 && h > 0.0);
    let dim = y0.len();
    let mut buf = Rk4Buffers::new(dim);
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut times = vec![t];
    let mut states = vec![y.clone()];

    // warmup until the nominal step is admissible
    loop {
        let dt = (WARMUP_FRACTION * t).min(STABILITY_MARGIN / stiffness(t));
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::NonFiniteState { t });
        }
        if dt >= h || t + dt >= t_end {
            break;
        }
        rk4_step(rhs, t, &mut y, dt, &mut buf);
        t += dt;
        if !all_finite(&y) {
            return Err(Error::NonFiniteState { t });
        }
        times.push(t);
        states.push(y.clone());
    }

    let remaining = t_end - t;
    let steps = {
        let raw = crate::fm::round(remaining / h);
        if raw < 1.0 {
            1usize
        } else {
            raw as usize
        }
    };
    let h_exact = remaining / steps as f64;
    for i in 0..steps {
        rk4_step(rhs, t, &mut y, h_exact, &mut buf);
        t = if i + 1 == steps {
            t_end
        } else {
            t + h_exact
        };
        if !all_finite(&y) {
            return Err(Error::NonFiniteState { t });
        }
        times.push(t);
        states.push(y.clone());
    }

    Ok(Trajectory { times, states })
}

/// Solve A·x = b by Gaussian elimination with partial pivoting; A and b are
/// consumed. Sized for the shooting Jacobians (N ≲ 16).
#[allow(clippy::needless_range_loop)]
pub(crate) fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    for col in 0..n {
        let mut piv = col;
        for row in (col + 1)..n {
            if a[row][col].abs() > a[piv][col].abs() {
                piv = row;
            }
        }
        if a[piv][col].abs() < 1e-300 || !a[piv][col].is_finite() {
            return Err(Error::SingularJacobian);
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in (col + 1)..n {
            acc -= a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rk4_exponential_decay() {
        // y' = -y from y(eps) = 1; stiffness constant (no warmup triggered)
        let rhs = |_t: f64, y: &[f64], dy: &mut [f64]| dy[0] = -y[0];
        let traj = rk4_singular_start(&rhs, &|_| 1.0, 1e-6, &[1.0], 1.0, 1e-3).unwrap();
        let want = (-(1.0 - 1e-6f64)).exp();
        assert!((traj.last_state()[0] - want).abs() < 1e-12);
        assert_eq!(traj.last_time(), 1.0);
    }

    #[test]
    fn rk4_warmup_handles_singular_coefficient() {
        // y' = -(5/t)(y - t) + 1, y(eps) = eps has the exact solution y = t;
        // plain fixed-step RK4 from eps = 1e-6 with h = 1e-3 is unstable here.
        let rhs = |t: f64, y: &[f64], dy: &mut [f64]| dy[0] = -(5.0 / t) * (y[0] - t) + 1.0;
        let stiff = |t: f64| 5.0 / t;
        let traj = rk4_singular_start(&rhs, &stiff, 1e-6, &[1e-6], 1.0, 1e-3).unwrap();
        assert!((traj.last_state()[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn non_finite_state_reported() {
        let rhs = |t: f64, y: &[f64], dy: &mut [f64]| dy[0] = y[0] * y[0] / (1.05 - t);
        let res = rk4_singular_start(&rhs, &|_| 1.0, 0.5, &[5.0], 1.04, 1e-4);
        assert!(matches!(res, Err(Error::NonFiniteState { .. })));
    }

    #[test]
    fn interpolation() {
        let rhs = |_t: f64, _y: &[f64], dy: &mut [f64]| dy[0] = 2.0;
        let traj = rk4_singular_start(&rhs, &|_| 1.0, 0.5, &[0.0], 1.5, 0.25).unwrap();
        // y(t) = 2(t - 0.5)
        assert!((traj.component(0, 0.8) - 0.6).abs() < 1e-12);
        assert!((traj.component(0, 1.5) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn dense_solve_roundtrip() {
        let a = vec![
            vec![2.0, 1.0, -1.0],
            vec![-3.0, -1.0, 2.0],
            vec![-2.0, 1.0, 2.0],
        ];
        let b = vec![8.0, -11.0, -3.0];
        let x = solve_dense(a, b).unwrap();
        for (got, want) in x.iter().zip([2.0, 3.0, -1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn dense_solve_singular() {
        let a = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(matches!(
            solve_dense(a, vec![1.0, 2.0]),
            Err(Error::SingularJacobian)
        ));
    }
}
