//! Variable-order fractional calculus with integer-derivative expansions.
//!
//! The fractional operators handled here have an order `α(t)` that varies with
//! the evaluation point, `0 < α(t) < 1`. The crate provides three layers:
//!
//! * [`mod@reference`] — ground-truth evaluation of the six operators
//!   (left/right Riemann–Liouville integral, left/right Riemann–Liouville
//!   derivative, left/right Marchaud derivative): closed forms for power
//!   functions and weakly-singular quadrature oracles for general functions.
//! * [`expansion`] — approximation of each operator by a finite sum of
//!   integer-order derivatives `x⁽ᵏ⁾(t)` and moment functions `V_k(t)`,
//!   together with computable a-priori error bounds.
//! * [`fde`] and [`variational`] — application solvers that use the expansion
//!   to reduce a variable-order fractional differential equation to a classical
//!   ODE system, and a fractional variational problem to a Pontryagin
//!   boundary-value system solved by shooting.
//!
//! The crate is `no_std`-compatible (requires `alloc`); enable the `libm`
//! feature instead of `std` to build without the standard library.
//!
//! # Example
//!
//! ```
//! use vofrac_core::order::OrderFunction;
//! use vofrac_core::smooth::SmoothFunction;
//! use vofrac_core::expansion::{approx_left_marchaud, ExpansionParams};
//!
//! // x(t) = t^4 on [0, 1], order alpha(t) = (t + 1)/4
//! let x = SmoothFunction::polynomial(&[0.0, 0.0, 0.0, 0.0, 1.0], 0.0, 1.0).unwrap();
//! let ord = OrderFunction::new(|t| (t + 1.0) / 4.0, |_| 0.25, 0.0, 1.0).unwrap();
//! let params = ExpansionParams::new(2, 5).unwrap();
//!
//! let report = approx_left_marchaud(&x, &ord, &params, 1.0).unwrap();
//! assert!((report.value - 2.0633219055460801).abs() <= report.bound_e1);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]
// frozen reference values keep their full 30-digit provenance, and the
// `!(a < b)` validations must reject NaN, which `a >= b` would let through
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("vofrac-core needs the `std` feature (default) or the `libm` feature");

extern crate alloc;

mod error;
mod fm;
pub mod expansion;
pub mod fde;
pub mod ode;
pub mod order;
pub mod quad;
pub mod reference;
pub mod smooth;
pub mod specfun;
pub mod variational;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
