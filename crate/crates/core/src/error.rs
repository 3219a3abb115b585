use core::fmt;

/// Errors reported by operator evaluation, expansion, and the solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Gamma or digamma evaluated at a non-positive integer.
    Pole { x: f64 },
    /// Evaluation point outside the operator's domain (e.g. `t <= a` for a
    /// left-sided operator).
    Domain { what: &'static str },
    /// Invalid construction parameters (N < n+1, empty derivative list,
    /// order outside (0,1), ...).
    InvalidParams { what: &'static str },
    /// A quadrature did not reach the requested tolerance; `achieved` is the
    /// error estimate from the last panel refinement.
    QuadratureNonConvergence { achieved: f64, tol: f64 },
    /// The two Marchaud oracle forms disagree beyond the allowed slack.
    CrossCheckMismatch { difference: f64, limit: f64 },
    /// A moment vector does not cover the index range an expansion needs.
    InsufficientMoments { needed: u32, have: u32 },
    /// A smooth function does not carry enough derivatives.
    InsufficientDerivatives { needed: u32, have: u32 },
    /// An ODE trajectory left the finite range at time `t`.
    NonFiniteState { t: f64 },
    /// The shooting Jacobian is numerically singular.
    SingularJacobian,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Pole { x } => write!(f, "pole at non-positive integer argument x = {x}"),
            Self::Domain { what } => write!(f, "domain error: {what}"),
            Self::InvalidParams { what } => write!(f, "invalid parameters: {what}"),
            Self::QuadratureNonConvergence { achieved, tol } => write!(
                f,
                "quadrature did not converge: achieved {achieved:.3e}, requested {tol:.3e}"
            ),
            Self::CrossCheckMismatch { difference, limit } => write!(
                f,
                "Marchaud oracle cross-check mismatch: |difference| = {difference:.3e} > {limit:.3e}"
            ),
            Self::InsufficientMoments { needed, have } => {
                write!(f, "moment vector covers k <= {have}, need k <= {needed}")
            }
            Self::InsufficientDerivatives { needed, have } => {
                write!(f, "function carries {have} derivatives, need {needed}")
            }
            Self::NonFiniteState { t } => write!(f, "non-finite state at t = {t}"),
            Self::SingularJacobian => write!(f, "singular shooting Jacobian"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
