//! The built-in worked instances, addressable by name from every command.

use vofrac_core::fde::{linear_test_problem, LinearFdeProblem};
use vofrac_core::order::OrderFunction;
use vofrac_core::smooth::{PowerFunction, SmoothFunction};
use vofrac_core::variational::{tracking_test_problem, TrackingVariationalProblem};

/// x(t) = t^4 on \[0,1\] together with its power-function form and the order
/// α(t) = (t+1)/4.
pub struct PowerCase {
    pub x: SmoothFunction,
    pub power: PowerFunction,
    pub ord: OrderFunction,
}

pub fn power_t4() -> PowerCase {
    PowerCase {
        x: SmoothFunction::polynomial(&[0.0, 0.0, 0.0, 0.0, 1.0], 0.0, 1.0)
            .expect("static case"),
        power: PowerFunction::new(4.0, 0.0).expect("static case"),
        ord: OrderFunction::new(|t| (t + 1.0) / 4.0, |_| 0.25, 0.0, 1.0).expect("static case"),
    }
}

pub fn linear_fde() -> LinearFdeProblem {
    linear_test_problem()
}

pub fn tracking_min() -> TrackingVariationalProblem {
    tracking_test_problem()
}
