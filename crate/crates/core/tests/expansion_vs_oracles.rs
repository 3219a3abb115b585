//! Cross-checks of the expansion approximations against the quadrature
//! oracles, including the right-sided operators (which have no closed-form
//! reference in the power-function family for variable order).

use std::sync::Arc;
use vofrac_core::expansion::{
    approx_left_integral, approx_left_marchaud, approx_left_rl_derivative,
    approx_right_marchaud, approx_right_rl_derivative, ExpansionParams,
};
use vofrac_core::order::OrderFunction;
use vofrac_core::reference::{
    oracle_left_integral, oracle_left_marchaud, oracle_left_rl_derivative,
    oracle_right_marchaud,
};
use vofrac_core::smooth::SmoothFunction;

fn ramp_order() -> OrderFunction {
    OrderFunction::new(|t| (t + 1.0) / 4.0, |_| 0.25, 0.0, 1.0).unwrap()
}

/// cos on [0,1] with five derivatives.
fn cosine() -> SmoothFunction {
    SmoothFunction::new(
        vec![
            Arc::new(|t: f64| t.cos()) as _,
            Arc::new(|t: f64| -t.sin()) as _,
            Arc::new(|t: f64| -t.cos()) as _,
            Arc::new(|t: f64| t.sin()) as _,
            Arc::new(|t: f64| t.cos()) as _,
            Arc::new(|t: f64| -t.sin()) as _,
        ],
        0.0,
        1.0,
    )
    .unwrap()
}

/// cos(1−s) on [0,1]: the reflection of cos through τ ↦ 1−τ.
fn cosine_reflected() -> SmoothFunction {
    SmoothFunction::new(
        vec![
            Arc::new(|s: f64| (1.0 - s).cos()) as _,
            Arc::new(|s: f64| (1.0 - s).sin()) as _,
            Arc::new(|s: f64| -(1.0 - s).cos()) as _,
            Arc::new(|s: f64| -(1.0 - s).sin()) as _,
            Arc::new(|s: f64| (1.0 - s).cos()) as _,
            Arc::new(|s: f64| (1.0 - s).sin()) as _,
        ],
        0.0,
        1.0,
    )
    .unwrap()
}

#[test]
fn right_marchaud_expansion_converges_to_oracle() {
    // decisive for the right-side B coefficient: an extra (−1)^{n+1}
    // factor here would diverge for even n instead of converging
    let x = cosine();
    let ord = ramp_order();
    for n in [1u32, 2] {
        let mut prev = f64::INFINITY;
        for trunc in [3u32, 6, 12] {
            if trunc < n + 1 {
                continue;
            }
            let params = ExpansionParams::new(n, trunc).unwrap();
            let mut worst = 0.0f64;
            for t in [0.1, 0.3, 0.5, 0.7] {
                let rep = approx_right_marchaud(&x, &ord, &params, t).unwrap();
                let want = oracle_right_marchaud(&x, &ord, t, 1e-9).unwrap();
                let err = (rep.value - want).abs();
                assert!(
                    err <= rep.bound_e1 + 1e-8,
                    "n={n} N={trunc} t={t}: err {err} > bound {}",
                    rep.bound_e1
                );
                worst = worst.max(err);
            }
            assert!(worst < prev, "n={n}: error must shrink with N");
            prev = worst;
        }
    }
}

#[test]
fn right_rl_derivative_matches_reflected_left_oracle() {
    // tDb^{alpha(t)} x(t) equals the left RL derivative of the reflected
    // function with reflected order at s = 1-t (exact change of variables)
    let x = cosine();
    let y = cosine_reflected();
    let ord = ramp_order();
    let ord_reflected = OrderFunction::new(|s| (2.0 - s) / 4.0, |_| -0.25, 0.0, 1.0).unwrap();
    let params = ExpansionParams::new(2, 8).unwrap();
    for t in [0.1, 0.3, 0.6] {
        let rep = approx_right_rl_derivative(&x, &ord, &params, t).unwrap();
        let want = oracle_left_rl_derivative(&y, &ord_reflected, 1.0 - t, 1e-9).unwrap();
        let err = (rep.value - want).abs();
        assert!(
            err <= rep.bound_e1 + rep.bound_e2 + 1e-8,
            "t={t}: err {err} > bounds {} + {}",
            rep.bound_e1,
            rep.bound_e2
        );
    }
}

#[test]
fn right_expansions_collapse_for_constant_order() {
    // alpha' = 0: the RL and Marchaud right expansions coincide bitwise
    let x = cosine();
    let ord = OrderFunction::constant(0.4, 0.0, 1.0).unwrap();
    let params = ExpansionParams::new(2, 6).unwrap();
    for t in [0.2, 0.5, 0.8] {
        let rl = approx_right_rl_derivative(&x, &ord, &params, t).unwrap();
        let ma = approx_right_marchaud(&x, &ord, &params, t).unwrap();
        assert_eq!(rl.value.to_bits(), ma.value.to_bits());
        assert_eq!(rl.s2, 0.0);
    }
}

#[test]
fn left_expansions_track_oracles_on_nonpolynomial() {
    let x = cosine();
    let ord = ramp_order();
    let params = ExpansionParams::new(2, 8).unwrap();
    for t in [0.25, 0.65, 1.0] {
        let ri = approx_left_integral(&x, &ord, &params, t).unwrap();
        let want = oracle_left_integral(&x, &ord, t, 1e-9).unwrap();
        assert!((ri.value - want).abs() <= ri.bound_e1 + 1e-8);

        let rm = approx_left_marchaud(&x, &ord, &params, t).unwrap();
        let want = oracle_left_marchaud(&x, &ord, t, 1e-9).unwrap();
        assert!((rm.value - want).abs() <= rm.bound_e1 + 1e-8);

        let rd = approx_left_rl_derivative(&x, &ord, &params, t).unwrap();
        let want = oracle_left_rl_derivative(&x, &ord, t, 1e-9).unwrap();
        assert!((rd.value - want).abs() <= rd.bound_e1 + rd.bound_e2 + 1e-8);
    }
}

#[test]
fn exactness_for_low_degree_polynomials() {
    // x of degree <= n with constant order: L_{n+1} = 0 bounds the error by
    // zero, so even a large-N evaluation must sit on the oracle
    let ord = OrderFunction::constant(0.5, 0.0, 1.0).unwrap();
    let cases: [(u32, SmoothFunction); 2] = [
        (1, SmoothFunction::polynomial(&[0.5, 2.0], 0.0, 1.0).unwrap()),
        (2, SmoothFunction::polynomial(&[0.3, -1.0, 2.0], 0.0, 1.0).unwrap()),
    ];
    for (n, x) in cases {
        let params = ExpansionParams::new(n, 50).unwrap();
        for t in [0.4, 1.0] {
            let rm = approx_left_marchaud(&x, &ord, &params, t).unwrap();
            let want = oracle_left_marchaud(&x, &ord, t, 1e-9).unwrap();
            assert!(
                (rm.value - want).abs() <= 1e-6,
                "marchaud n={n} t={t}: {} vs {want}",
                rm.value
            );
            let ri = approx_left_integral(&x, &ord, &params, t).unwrap();
            let want = oracle_left_integral(&x, &ord, t, 1e-9).unwrap();
            assert!(
                (ri.value - want).abs() <= 1e-6,
                "integral n={n} t={t}: {} vs {want}",
                ri.value
            );
        }
    }
}

#[test]
fn approximations_are_linear_in_x() {
    let x1 = SmoothFunction::polynomial(&[0.0, 0.0, 0.0, 0.0, 1.0], 0.0, 1.0).unwrap();
    let x2 = SmoothFunction::polynomial(&[1.0, 0.0, 1.0], 0.0, 1.0).unwrap();
    // 2*x1 - 3*x2
    let combo = SmoothFunction::polynomial(&[-3.0, 0.0, -3.0, 0.0, 2.0], 0.0, 1.0).unwrap();
    let ord = ramp_order();
    let params = ExpansionParams::new(2, 5).unwrap();
    let t = 0.7;

    type Approx = fn(
        &SmoothFunction,
        &OrderFunction,
        &ExpansionParams,
        f64,
    ) -> vofrac_core::Result<vofrac_core::expansion::ApproxReport>;
    let ops: [(&str, Approx); 5] = [
        ("ileft", approx_left_integral),
        ("dleft-rl", approx_left_rl_derivative),
        ("dleft-marchaud", approx_left_marchaud),
        ("dright-rl", approx_right_rl_derivative),
        ("dright-marchaud", approx_right_marchaud),
    ];
    for (name, op) in ops {
        let lhs = op(&combo, &ord, &params, t).unwrap().value;
        let rhs = 2.0 * op(&x1, &ord, &params, t).unwrap().value
            - 3.0 * op(&x2, &ord, &params, t).unwrap().value;
        assert!(
            (lhs - rhs).abs() < 1e-8,
            "{name}: {lhs} vs {rhs}"
        );
    }
}
