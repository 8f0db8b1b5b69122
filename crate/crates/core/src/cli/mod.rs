//! The `lobwave` command line.
//!
//! Subcommands: `convert`, `medium`, `profile`, `planewave`, `reflect`,
//! `depth`, `verify`, `sweep`. Each accepts `--config <file.json>`,
//! `--out <path>` and `--format csv|json`. Exit codes: `0` success, `1`
//! verification failure, `2` usage or domain error.

mod commands;
mod config;
mod output;
mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{Format, RunConfig};
pub use output::{fmt_f64, to_json_string, Cell, Table, SCHEMA};
pub use verify::{run_checks, CheckOutcome};

use config::{GridFlags, ModeFlags, TolFlags};

#[derive(Debug, Parser)]
#[command(
    name = "lobwave",
    version,
    about = "Exact electromagnetic modes of Lobachevsky space"
)]
pub struct Cli {
    /// JSON file with run settings; flags given on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Map a point between quasi-Cartesian, hyperboloid and Poincaré-ball coordinates.
    Convert(ConvertArgs),
    /// Tabulate the effective permittivity/permeability and the volume weight.
    Medium(MediumArgs),
    /// Tabulate G₁, G₂ and the barrier U(z) of one mode along z.
    Profile(ProfileArgs),
    /// Tabulate E, B and E×B of the a = b = 0 plane wave.
    Planewave(PlanewaveArgs),
    /// Analytic and fitted reflection coefficient of a basis branch.
    Reflect(ReflectArgs),
    /// Turning-point depth in physical units.
    Depth(DepthArgs),
    /// Run the residual and oracle checks.
    Verify(VerifyArgs),
    /// Reflection coefficients over a grid of ω and κ.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Quasi-Cartesian point x,y,z.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub quasi: Option<Vec<f64>>,
    /// Hyperboloid point u0,u1,u2,u3.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub embedding: Option<Vec<f64>>,
    /// Poincaré-ball point q1,q2,q3.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub poincare: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct MediumArgs {
    /// Single z value; overrides the grid.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<f64>,
    #[command(flatten)]
    pub grid: GridFlags,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub mode: ModeFlags,
    #[command(flatten)]
    pub grid: GridFlags,
}

#[derive(Debug, Args)]
pub struct PlanewaveArgs {
    /// +1 or -1: propagation along ±z.
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Option<i8>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub t_samples: Option<usize>,
    #[command(flatten)]
    pub grid: GridFlags,
}

#[derive(Debug, Args)]
pub struct ReflectArgs {
    #[command(flatten)]
    pub mode: ModeFlags,
}

#[derive(Debug, Args)]
pub struct DepthArgs {
    /// Angular frequency in rad/s.
    #[arg(long)]
    pub omega_physical: Option<f64>,
    /// Frequency in Hz (ω = 2πf); alternative to --omega-physical.
    #[arg(long)]
    pub frequency: Option<f64>,
    /// Wavenumber k₁ in 1/m.
    #[arg(long, allow_hyphen_values = true)]
    pub k1: Option<f64>,
    /// Wavenumber k₂ in 1/m.
    #[arg(long, allow_hyphen_values = true)]
    pub k2: Option<f64>,
    /// Curvature radius in m.
    #[arg(long)]
    pub rho: Option<f64>,
    /// Speed of light in m/s.
    #[arg(long)]
    pub c: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only checks whose name or group starts with one of these prefixes.
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<String>>,
    /// Replace every check threshold by this value.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub tol: TolFlags,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub branch: Option<String>,
    /// Comma-separated ω values.
    #[arg(long, value_delimiter = ',')]
    pub omegas: Option<Vec<f64>>,
    /// Comma-separated κ values (a = κ, b = 0).
    #[arg(long, value_delimiter = ',')]
    pub kappas: Option<Vec<f64>>,
    #[command(flatten)]
    pub tol: TolFlags,
}

/// A failure carrying its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

/// Rendered output of a command and its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub text: String,
    pub code: i32,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Convert(_) => "convert",
            Command::Medium(_) => "medium",
            Command::Profile(_) => "profile",
            Command::Planewave(_) => "planewave",
            Command::Reflect(_) => "reflect",
            Command::Depth(_) => "depth",
            Command::Verify(_) => "verify",
            Command::Sweep(_) => "sweep",
        }
    }

    fn flags(self) -> RunConfig {
        match self {
            Command::Convert(a) => RunConfig {
                quasi: a.quasi,
                embedding: a.embedding,
                poincare: a.poincare,
                ..Default::default()
            },
            Command::Medium(a) => RunConfig {
                z: a.z,
                ..a.grid.into_config()
            },
            Command::Profile(a) => a.mode.into_config().over(a.grid.into_config()),
            Command::Planewave(a) => RunConfig {
                sign: a.sign,
                omega: a.omega,
                t_min: a.t_min,
                t_max: a.t_max,
                t_samples: a.t_samples,
                ..a.grid.into_config()
            },
            Command::Reflect(a) => a.mode.into_config(),
            Command::Depth(a) => RunConfig {
                omega_physical: a.omega_physical,
                frequency: a.frequency,
                k1: a.k1,
                k2: a.k2,
                rho: a.rho,
                c: a.c,
                ..Default::default()
            },
            Command::Verify(a) => RunConfig {
                only: a.only,
                tolerance: a.tolerance,
                ..a.tol.into_config()
            },
            Command::Sweep(a) => RunConfig {
                branch: a.branch,
                omegas: a.omegas,
                kappas: a.kappas,
                ..a.tol.into_config()
            },
        }
    }
}

/// Resolves the configuration and runs the command, returning its text.
pub fn execute(cli: Cli) -> Result<(Rendered, Option<PathBuf>), CliError> {
    let name = cli.command.name();
    let top = RunConfig {
        out: cli.out,
        format: cli.format,
        ..Default::default()
    };
    let file = match &cli.config {
        Some(p) => RunConfig::load(p, name)?,
        None => RunConfig::default(),
    };
    let cfg = cli.command.flags().over(top).over(file);
    let out = cfg.out.clone();
    let rendered = commands::dispatch(name, &cfg)?;
    Ok((rendered, out))
}

/// Parses `args` (program name first), runs the command and writes to
/// `stdout`/`stderr` or the `--out` file. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli) {
        Ok((r, out)) => {
            let written = match out {
                Some(path) => std::fs::write(&path, &r.text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => stdout
                    .write_all(r.text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => r.code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}
