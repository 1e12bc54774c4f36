//! `ls-transform`: batch front end for the ls-transform library.
//!
//! Exit status: 0 on success, 1 when a verification check fails (or a
//! computation misses its tolerance), 2 on usage errors, 3 when an argument
//! lies outside a routine's supported numeric range.

mod commands;
mod config;
mod error;
mod grid;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::{Direction, InvertKind, KernelMethod};
use config::Settings;
use error::CliError;
use output::{emit, render, Format, Table};
use verify::Suite;

#[derive(Debug, Parser)]
#[command(name = "ls-transform", version, about = "Kernels, transforms and inversions of an index transform pair")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Write the table here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// `key = value` file overriding tolerances, tau_max and gamma.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the kernel Ψ_τ(x).
    Kernel {
        /// Index τ, a number or start:stop:count[:log].
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// Abscissa x > 0, a number or grid.
        #[arg(long)]
        x: String,
        #[arg(long, value_enum, default_value_t = KernelMethod::Auto)]
        method: KernelMethod,
    },
    /// Forward transform of a registry function on a grid.
    Transform {
        #[arg(value_enum)]
        direction: Direction,
        #[arg(long)]
        function: String,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// Recover f from F, or g from G.
    Invert {
        #[arg(value_enum)]
        kind: InvertKind,
        /// CSV of samples: (tau, F) for f, (t, G) for g.
        #[arg(long, conflicts_with = "function", required_unless_present = "function")]
        input: Option<PathBuf>,
        /// Registry function to transform and recover.
        #[arg(long)]
        function: Option<String>,
        #[arg(long = "x-grid")]
        x_grid: String,
        /// Regularization parameter of the g inversion.
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Tolerance replacing each check's default.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Solve the wedge problem from g, or from boundary data G(r).
    Pde {
        #[arg(long = "g", conflicts_with = "boundary", required_unless_present = "boundary")]
        g: Option<String>,
        /// CSV of (r, G(r)) samples.
        #[arg(long)]
        boundary: Option<PathBuf>,
        #[arg(long)]
        r: String,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        beta: f64,
    },
    /// Inspect the function registry.
    Registry {
        #[command(subcommand)]
        action: RegistryAction,
    },
}

#[derive(Debug, Subcommand)]
enum RegistryAction {
    List,
    Describe { name: String },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("LS_TRANSFORM_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("LS_TRANSFORM_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: &Cli, settings: &Settings) -> Result<(Table, Option<CliError>), CliError> {
    match &cli.command {
        Command::Kernel { tau, x, method } => Ok((commands::kernel(tau, x, *method, settings)?, None)),
        Command::Transform {
            direction,
            function,
            grid,
        } => Ok((commands::transform(*direction, function, grid, settings)?, None)),
        Command::Invert {
            kind,
            input,
            function,
            x_grid,
            eps,
        } => Ok((
            commands::invert(*kind, input.as_deref(), function.as_deref(), x_grid, *eps, settings)?,
            None,
        )),
        Command::Verify { suite, tol } => {
            if let Some(t) = tol {
                if !(*t > 0.0 && t.is_finite()) {
                    return Err(CliError::Usage(format!("--tol {t} must be positive")));
                }
            }
            let outcomes = verify::run(*suite, *tol, settings);
            let failed: Vec<String> = outcomes
                .iter()
                .filter(|o| !o.passed)
                .map(|o| {
                    format!(
                        "{}/{} violates the {}: max gap {:e} against tolerance {:e} ({})",
                        o.suite, o.name, o.identity, o.max_gap, o.tolerance, o.detail
                    )
                })
                .collect();
            let failure = (!failed.is_empty()).then(|| CliError::Tolerance(failed.join("\n")));
            Ok((verify::table(&outcomes), failure))
        }
        Command::Pde {
            g,
            boundary,
            r,
            theta,
            beta,
        } => Ok((
            commands::pde(g.as_deref(), boundary.as_deref(), r, theta, *beta, settings)?,
            None,
        )),
        Command::Registry { action } => match action {
            RegistryAction::List => Ok((commands::registry_list(), None)),
            RegistryAction::Describe { name } => Ok((commands::registry_describe(name)?, None)),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads()
        .and_then(|_| Settings::load(cli.config.as_deref()))
        .and_then(|settings| {
            let (table, failure) = run(&cli, &settings)?;
            let meta = json!({
                "command": std::env::args().skip(1).collect::<Vec<_>>(),
                "settings": settings,
            });
            emit(&render(&table, cli.format, &meta), cli.output.as_deref())?;
            failure.map_or(Ok(()), Err)
        });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ls-transform: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
