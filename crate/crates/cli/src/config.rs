//! Run configuration: operators, named cases, grids, and the error type
//! that maps onto process exit codes.

use clap::ValueEnum;
use core::fmt;
use core::str::FromStr;

/// The six variable-order operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Operator {
    /// Left Riemann–Liouville integral
    #[value(name = "ileft")]
    ILeft,
    /// Right Riemann–Liouville integral
    #[value(name = "iright")]
    IRight,
    /// Left Riemann–Liouville derivative
    #[value(name = "dleft-rl")]
    DLeftRl,
    /// Right Riemann–Liouville derivative
    #[value(name = "dright-rl")]
    DRightRl,
    /// Left Marchaud derivative
    #[value(name = "dleft-marchaud")]
    DLeftMarchaud,
    /// Right Marchaud derivative
    #[value(name = "dright-marchaud")]
    DRightMarchaud,
}

impl Operator {
    pub fn is_right_sided(self) -> bool {
        matches!(self, Self::IRight | Self::DRightRl | Self::DRightMarchaud)
    }
}

/// Built-in test-case registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseName {
    /// x(t) = t^4 on \[0,1\] with order (t+1)/4
    #[value(name = "power-t4")]
    PowerT4,
    /// The linear fractional differential equation with exact solution x = t
    #[value(name = "linear-fde")]
    LinearFde,
    /// The tracking variational problem with global minimizer x = t
    #[value(name = "tracking-min")]
    TrackingMin,
}

/// Reference column used by the compare command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reference {
    /// Closed-form power-function formulas
    Exact,
    /// Weakly-singular quadrature oracle
    Oracle,
}

/// Evaluation grid MIN:MAX:POINTS.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self, CliError> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(CliError::Config("grid needs finite MIN < MAX".into()));
        }
        if points < 2 {
            return Err(CliError::Config("grid needs at least 2 points".into()));
        }
        Ok(Self { min, max, points })
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = (self.max - self.min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.max
                } else {
                    self.min + i as f64 * h
                }
            })
            .collect()
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.points - 1) as f64
    }
}

impl FromStr for GridSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Config(format!(
                "grid must be MIN:MAX:POINTS, got '{s}'"
            )));
        }
        let min: f64 = parts[0]
            .parse()
            .map_err(|_| CliError::Config(format!("bad grid MIN '{}'", parts[0])))?;
        let max: f64 = parts[1]
            .parse()
            .map_err(|_| CliError::Config(format!("bad grid MAX '{}'", parts[1])))?;
        let points: usize = parts[2]
            .parse()
            .map_err(|_| CliError::Config(format!("bad grid POINTS '{}'", parts[2])))?;
        Self::new(min, max, points)
    }
}

/// Command failures split by exit code: 2 for configuration problems,
/// 3 for numerical failures.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Config(msg) => write!(f, "configuration error: {msg}"),
            Self::Numeric(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<vofrac_core::Error> for CliError {
    fn from(e: vofrac_core::Error) -> Self {
        use vofrac_core::Error as E;
        match e {
            E::Domain { .. }
            | E::InvalidParams { .. }
            | E::InsufficientMoments { .. }
            | E::InsufficientDerivatives { .. } => Self::Config(e.to_string()),
            E::Pole { .. }
            | E::QuadratureNonConvergence { .. }
            | E::CrossCheckMismatch { .. }
            | E::NonFiniteState { .. }
            | E::SingularJacobian => Self::Numeric(e.to_string()),
        }
    }
}
