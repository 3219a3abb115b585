//! Command implementations. Each returns the CSV payload plus scalar
//! metrics; the binary decides where they go.

use crate::cases;
use crate::config::{CaseName, CliError, GridSpec, Operator, Reference};
use vofrac_core::expansion::{
    approx_left_integral, approx_left_marchaud, approx_left_rl_derivative,
    approx_right_marchaud, approx_right_rl_derivative, ApproxReport, ExpansionParams,
};
use vofrac_core::fde;
use vofrac_core::order::OrderFunction;
use vofrac_core::quad::simpson_samples;
use vofrac_core::reference::{
    oracle_left_integral, oracle_left_marchaud, oracle_left_rl_derivative,
    oracle_right_integral, oracle_right_marchaud, power_left_integral, power_left_marchaud,
    power_left_rl_derivative,
};
use vofrac_core::smooth::SmoothFunction;
use vofrac_core::variational;

/// CSV payload plus `metric,value` lines.
pub struct CommandOutput {
    pub csv: String,
    pub metrics: Vec<(String, f64)>,
}

/// Shortest round-tripping decimal form; byte-stable across runs.
fn fmt(v: f64) -> String {
    format!("{v}")
}

fn require_power_case(case: CaseName) -> Result<cases::PowerCase, CliError> {
    match case {
        CaseName::PowerT4 => Ok(cases::power_t4()),
        _ => Err(CliError::Config(
            "this command works on the operator test case; use --case power-t4".into(),
        )),
    }
}

fn validated_order(ord: &OrderFunction) -> Result<(), CliError> {
    ord.validate(101).map_err(CliError::from)
}

fn exact_value(op: Operator, c: &cases::PowerCase, t: f64) -> Result<f64, CliError> {
    let v = match op {
        Operator::ILeft => power_left_integral(&c.power, &c.ord, t)?,
        Operator::DLeftRl => power_left_rl_derivative(&c.power, &c.ord, t)?,
        Operator::DLeftMarchaud => power_left_marchaud(&c.power, &c.ord, t)?,
        _ => {
            return Err(CliError::Config(
                "closed forms exist for the left-sided operators only".into(),
            ))
        }
    };
    Ok(v)
}

fn oracle_value(
    op: Operator,
    x: &SmoothFunction,
    ord: &OrderFunction,
    t: f64,
    tol: f64,
) -> Result<f64, CliError> {
    let v = match op {
        Operator::ILeft => oracle_left_integral(x, ord, t, tol)?,
        Operator::IRight => oracle_right_integral(x, ord, t, tol)?,
        Operator::DLeftRl => oracle_left_rl_derivative(x, ord, t, tol)?,
        Operator::DLeftMarchaud => oracle_left_marchaud(x, ord, t, tol)?,
        Operator::DRightMarchaud => oracle_right_marchaud(x, ord, t, tol)?,
        Operator::DRightRl => {
            return Err(CliError::Config(
                "no quadrature oracle for the right Riemann-Liouville derivative".into(),
            ))
        }
    };
    Ok(v)
}

fn approx_report(
    op: Operator,
    x: &SmoothFunction,
    ord: &OrderFunction,
    params: &ExpansionParams,
    t: f64,
) -> Result<ApproxReport, CliError> {
    let r = match op {
        Operator::ILeft => approx_left_integral(x, ord, params, t)?,
        Operator::DLeftRl => approx_left_rl_derivative(x, ord, params, t)?,
        Operator::DLeftMarchaud => approx_left_marchaud(x, ord, params, t)?,
        Operator::DRightRl => approx_right_rl_derivative(x, ord, params, t)?,
        Operator::DRightMarchaud => approx_right_marchaud(x, ord, params, t)?,
        Operator::IRight => {
            return Err(CliError::Config(
                "the right Riemann-Liouville integral has no expansion; use the oracle command"
                    .into(),
            ))
        }
    };
    Ok(r)
}

/// Closed-form operator values on a grid.
pub fn run_exact(op: Operator, case: CaseName, grid: GridSpec) -> Result<CommandOutput, CliError> {
    let c = require_power_case(case)?;
    validated_order(&c.ord)?;
    let mut csv = String::from("t,value\n");
    for t in grid.nodes() {
        let v = exact_value(op, &c, t)?;
        csv.push_str(&format!("{},{}\n", fmt(t), fmt(v)));
    }
    Ok(CommandOutput {
        csv,
        metrics: Vec::new(),
    })
}

/// Quadrature oracle values on a grid.
pub fn run_oracle(
    op: Operator,
    case: CaseName,
    grid: GridSpec,
    tol: f64,
) -> Result<CommandOutput, CliError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Config("oracle tolerance must be positive".into()));
    }
    let c = require_power_case(case)?;
    validated_order(&c.ord)?;
    let mut csv = String::from("t,value\n");
    for t in grid.nodes() {
        let v = oracle_value(op, &c.x, &c.ord, t, tol)?;
        csv.push_str(&format!("{},{}\n", fmt(t), fmt(v)));
    }
    Ok(CommandOutput {
        csv,
        metrics: Vec::new(),
    })
}

/// Expansion approximation with its S1/S2 split and error bounds.
pub fn run_approx(
    op: Operator,
    case: CaseName,
    n: u32,
    trunc: u32,
    grid: GridSpec,
) -> Result<CommandOutput, CliError> {
    let params = ExpansionParams::new(n, trunc)?;
    let c = require_power_case(case)?;
    validated_order(&c.ord)?;
    let mut csv = String::from("t,value,s1,s2,bound_e1,bound_e2\n");
    for t in grid.nodes() {
        let r = approx_report(op, &c.x, &c.ord, &params, t)?;
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt(t),
            fmt(r.value),
            fmt(r.s1),
            fmt(r.s2),
            fmt(r.bound_e1),
            fmt(r.bound_e2)
        ));
    }
    Ok(CommandOutput {
        csv,
        metrics: Vec::new(),
    })
}

/// Default compare grid: [delta, 1] (or [delta, 1−delta] for right-sided
/// operators), 2001 points for the Simpson error norm.
fn compare_grid(op: Operator, delta: f64) -> Result<GridSpec, CliError> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(CliError::Config("delta must lie in (0, 0.5)".into()));
    }
    let max = if op.is_right_sided() { 1.0 - delta } else { 1.0 };
    GridSpec::new(delta, max, 2001)
}

/// Exact (or oracle) reference against the expansion on a grid, with the
/// L2 error norm E = sqrt(∫ (exact − approx)² dt) by composite Simpson.
pub fn run_compare(
    op: Operator,
    case: CaseName,
    n: u32,
    trunc: u32,
    grid: Option<GridSpec>,
    delta: f64,
    reference: Reference,
) -> Result<CommandOutput, CliError> {
    let params = ExpansionParams::new(n, trunc)?;
    let grid = match grid {
        Some(g) => g,
        None => compare_grid(op, delta)?,
    };
    if grid.points % 2 == 0 {
        return Err(CliError::Config(
            "compare needs an odd number of grid points (even Simpson intervals)".into(),
        ));
    }
    let c = require_power_case(case)?;
    validated_order(&c.ord)?;

    let nodes = grid.nodes();
    let mut csv = String::from("t,exact,approx\n");
    let mut sq = Vec::with_capacity(nodes.len());
    for &t in &nodes {
        let reference_value = match reference {
            Reference::Exact => exact_value(op, &c, t)?,
            Reference::Oracle => oracle_value(op, &c.x, &c.ord, t, 1e-8)?,
        };
        let approx = approx_report(op, &c.x, &c.ord, &params, t)?.value;
        let d = reference_value - approx;
        sq.push(d * d);
        csv.push_str(&format!(
            "{},{},{}\n",
            fmt(t),
            fmt(reference_value),
            fmt(approx)
        ));
    }
    let e = simpson_samples(&sq, grid.spacing()).sqrt();
    Ok(CommandOutput {
        csv,
        metrics: vec![("E".into(), e)],
    })
}

/// Solve the built-in fractional differential equation and report the
/// trajectory against the exact solution x̄(t) = t.
pub fn run_fde(
    case: CaseName,
    trunc: u32,
    eps: f64,
    step: f64,
    grid: Option<GridSpec>,
) -> Result<CommandOutput, CliError> {
    if case != CaseName::LinearFde {
        return Err(CliError::Config(
            "the fde command solves the built-in case; use --case linear-fde".into(),
        ));
    }
    let problem = cases::linear_fde();
    validated_order(problem.order())?;
    let system = fde::reduce(&problem, trunc)?;
    let traj = fde::solve_ivp(&system, eps, step)?;
    let grid = match grid {
        Some(g) => g,
        None => GridSpec::new(0.2, 1.0, 5)?,
    };
    let mut csv = String::from("t,x,exact,deviation\n");
    let mut worst = 0.0f64;
    for t in grid.nodes() {
        let x = traj.component(0, t);
        let dev = (x - t).abs();
        worst = worst.max(dev);
        csv.push_str(&format!(
            "{},{},{},{}\n",
            fmt(t),
            fmt(x),
            fmt(t),
            fmt(dev)
        ));
    }
    Ok(CommandOutput {
        csv,
        metrics: vec![("max_deviation".into(), worst)],
    })
}

/// Solve the built-in variational problem by shooting and report the
/// trajectory, deviations from the minimizer, and the costates.
pub fn run_varmin(
    case: CaseName,
    trunc: u32,
    eps: f64,
    step: f64,
    newton_tol: f64,
    max_iter: u32,
    grid: Option<GridSpec>,
) -> Result<CommandOutput, CliError> {
    if case != CaseName::TrackingMin {
        return Err(CliError::Config(
            "the varmin command solves the built-in case; use --case tracking-min".into(),
        ));
    }
    let problem = cases::tracking_min();
    validated_order(problem.order())?;
    let system = variational::build_pontryagin(&problem, trunc)?;
    let outcome = variational::shoot(&system, eps, step, newton_tol, max_iter)?;
    if !outcome.converged {
        return Err(CliError::Numeric(format!(
            "shooting did not converge in {} iterations (residual {:.3e})",
            outcome.iterations, outcome.residual_norm
        )));
    }
    let grid = match grid {
        Some(g) => g,
        None => GridSpec::new(0.2, 1.0, 5)?,
    };
    let nn = trunc as usize;
    let mut csv = String::from("t,x,exact,deviation");
    for k in 1..=nn {
        csv.push_str(&format!(",lambda{k}"));
    }
    csv.push('\n');
    for t in grid.nodes() {
        let state = outcome.trajectory.interpolate(t);
        let dev = (state[0] - t).abs();
        csv.push_str(&format!(
            "{},{},{},{}",
            fmt(t),
            fmt(state[0]),
            fmt(t),
            fmt(dev)
        ));
        for k in 0..nn {
            csv.push_str(&format!(",{}", fmt(state[nn + k])));
        }
        csv.push('\n');
    }
    let j = variational::evaluate_functional(&outcome.trajectory, &problem, trunc)?;
    Ok(CommandOutput {
        csv,
        metrics: vec![
            ("J".into(), j),
            ("iterations".into(), outcome.iterations as f64),
            ("residual".into(), outcome.residual_norm),
        ],
    })
}
