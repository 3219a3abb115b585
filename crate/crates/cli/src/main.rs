use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vofrac_cli::commands::{
    run_approx, run_compare, run_exact, run_fde, run_oracle, run_varmin, CommandOutput,
};
use vofrac_cli::config::{CaseName, CliError, GridSpec, Operator, Reference};

/// Variable-order fractional calculus toolkit: exact operator values,
/// quadrature oracles, integer-derivative expansions with error bounds, and
/// the two reduction-based solvers.
#[derive(Parser)]
#[command(name = "vofrac", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form operator values for the power-function case
    Exact {
        #[arg(long, value_enum)]
        op: Operator,
        #[arg(long, value_enum, default_value = "power-t4")]
        case: CaseName,
        /// Evaluation grid MIN:MAX:POINTS
        #[arg(long, default_value = "0.001:1:101")]
        grid: GridSpec,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weakly-singular quadrature oracle values
    Oracle {
        #[arg(long, value_enum)]
        op: Operator,
        #[arg(long, value_enum, default_value = "power-t4")]
        case: CaseName,
        #[arg(long, default_value = "0.001:0.999:101")]
        grid: GridSpec,
        /// Absolute quadrature tolerance
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expansion approximation with S1/S2 split and a-priori bounds
    Approx {
        #[arg(long, value_enum)]
        op: Operator,
        #[arg(long, value_enum, default_value = "power-t4")]
        case: CaseName,
        /// Highest integer derivative used
        #[arg(long = "n", default_value_t = 2)]
        n: u32,
        /// Truncation size (N >= n+1)
        #[arg(long = "N", default_value_t = 3)]
        trunc: u32,
        #[arg(long, default_value = "0.001:1:101")]
        grid: GridSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reference vs expansion on a grid, with the L2 error norm E
    Compare {
        #[arg(long, value_enum)]
        op: Operator,
        #[arg(long, value_enum, default_value = "power-t4")]
        case: CaseName,
        #[arg(long = "n", default_value_t = 2)]
        n: u32,
        #[arg(long = "N", default_value_t = 3)]
        trunc: u32,
        /// Override the default grid [delta, 1] with 2001 points
        #[arg(long)]
        grid: Option<GridSpec>,
        /// Lower cutoff of the error-norm interval
        #[arg(long, default_value_t = 1e-3)]
        delta: f64,
        /// Reference column: closed form or quadrature oracle
        #[arg(long, value_enum, default_value = "exact")]
        reference: Reference,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the built-in fractional differential equation (exact solution t)
    Fde {
        #[arg(long, value_enum, default_value = "linear-fde")]
        case: CaseName,
        #[arg(long = "N", default_value_t = 3)]
        trunc: u32,
        /// Singular-start offset
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        /// Fixed Runge-Kutta step
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Report grid (default: the five tabulated points 0.2 .. 1.0)
        #[arg(long)]
        grid: Option<GridSpec>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the built-in variational problem by Pontryagin shooting
    Varmin {
        #[arg(long, value_enum, default_value = "tracking-min")]
        case: CaseName,
        #[arg(long = "N", default_value_t = 2)]
        trunc: u32,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Shooting residual tolerance (max norm)
        #[arg(long, default_value_t = 1e-8)]
        newton_tol: f64,
        #[arg(long, default_value_t = 25)]
        max_iter: u32,
        #[arg(long)]
        grid: Option<GridSpec>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn dispatch(cmd: Command) -> Result<(CommandOutput, Option<PathBuf>), CliError> {
    match cmd {
        Command::Exact { op, case, grid, out } => Ok((run_exact(op, case, grid)?, out)),
        Command::Oracle {
            op,
            case,
            grid,
            tol,
            out,
        } => Ok((run_oracle(op, case, grid, tol)?, out)),
        Command::Approx {
            op,
            case,
            n,
            trunc,
            grid,
            out,
        } => Ok((run_approx(op, case, n, trunc, grid)?, out)),
        Command::Compare {
            op,
            case,
            n,
            trunc,
            grid,
            delta,
            reference,
            out,
        } => Ok((run_compare(op, case, n, trunc, grid, delta, reference)?, out)),
        Command::Fde {
            case,
            trunc,
            eps,
            step,
            grid,
            out,
        } => Ok((run_fde(case, trunc, eps, step, grid)?, out)),
        Command::Varmin {
            case,
            trunc,
            eps,
            step,
            newton_tol,
            max_iter,
            grid,
            out,
        } => Ok((
            run_varmin(case, trunc, eps, step, newton_tol, max_iter, grid)?,
            out,
        )),
    }
}

fn emit(output: CommandOutput, out: Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(&path, output.csv)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{}", output.csv),
    }
    for (name, value) in output.metrics {
        println!("{name},{value}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command).and_then(|(output, out)| emit(output, out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vofrac: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
