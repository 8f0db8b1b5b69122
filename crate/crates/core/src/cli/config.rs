//! Run configuration: command-line flags override a JSON config file, which
//! overrides built-in defaults.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use super::output::SCHEMA;
use super::CliError;
use crate::modes::BasisBranch;
use crate::numerics::ToleranceSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Every key a config file may carry. Unknown keys are rejected.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema: Option<String>,
    pub command: Option<String>,
    pub omega: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub branch: Option<String>,
    pub z_min: Option<f64>,
    pub z_max: Option<f64>,
    pub samples: Option<usize>,
    pub z: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub t_samples: Option<usize>,
    pub sign: Option<i8>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_steps: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub quasi: Option<Vec<f64>>,
    pub embedding: Option<Vec<f64>>,
    pub poincare: Option<Vec<f64>>,
    pub omega_physical: Option<f64>,
    pub frequency: Option<f64>,
    pub k1: Option<f64>,
    pub k2: Option<f64>,
    pub rho: Option<f64>,
    pub c: Option<f64>,
    pub omegas: Option<Vec<f64>>,
    pub kappas: Option<Vec<f64>>,
    pub only: Option<Vec<String>>,
    pub tolerance: Option<f64>,
}

macro_rules! overlay {
    ($hi:expr, $lo:expr, $($f:ident),+ $(,)?) => {
        RunConfig { $($f: $hi.$f.or($lo.$f)),+ }
    };
}

impl RunConfig {
    /// Reads and validates a config file for `command`.
    pub fn load(path: &Path, command: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("invalid config {}: {e}", path.display())))?;
        if let Some(s) = &cfg.schema {
            if s != SCHEMA {
                return Err(CliError::usage(format!(
                    "config schema '{s}' is not '{SCHEMA}'"
                )));
            }
        }
        if let Some(c) = &cfg.command {
            if c != command {
                return Err(CliError::usage(format!(
                    "config is for command '{c}', not '{command}'"
                )));
            }
        }
        Ok(cfg)
    }

    /// Fields set in `self` win over those in `lower`.
    pub fn over(self, lower: RunConfig) -> RunConfig {
        overlay!(
            self,
            lower,
            schema,
            command,
            omega,
            a,
            b,
            branch,
            z_min,
            z_max,
            samples,
            z,
            t_min,
            t_max,
            t_samples,
            sign,
            rel_tol,
            abs_tol,
            max_steps,
            out,
            format,
            quasi,
            embedding,
            poincare,
            omega_physical,
            frequency,
            k1,
            k2,
            rho,
            c,
            omegas,
            kappas,
            only,
            tolerance,
        )
    }

    pub fn branch(&self) -> Result<BasisBranch, CliError> {
        match &self.branch {
            Some(s) => s
                .parse()
                .map_err(|e: crate::Error| CliError::usage(e.to_string())),
            None => Ok(BasisBranch::Hankel1),
        }
    }

    pub fn tolerance_spec(&self) -> Result<ToleranceSpec, CliError> {
        let d = crate::scattering::oracle_tolerance();
        ToleranceSpec::new(
            self.rel_tol.unwrap_or(d.rel_tol),
            self.abs_tol.unwrap_or(d.abs_tol),
            self.max_steps.unwrap_or(d.max_steps),
        )
        .map_err(|e| CliError::usage(e.to_string()))
    }

    /// `n` points of `[lo, hi]` from `z_min`, `z_max`, `samples`.
    pub fn z_grid(&self, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, CliError> {
        grid(
            self.z_min.unwrap_or(lo),
            self.z_max.unwrap_or(hi),
            self.samples.unwrap_or(n),
            "z",
        )
    }
}

pub fn grid(lo: f64, hi: f64, n: usize, name: &str) -> Result<Vec<f64>, CliError> {
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(CliError::usage(format!(
            "{name} range [{lo}, {hi}] is empty or not finite"
        )));
    }
    match n {
        0 => Err(CliError::usage(format!(
            "{name} sample count must be positive"
        ))),
        1 => Ok(vec![lo]),
        _ => Ok(crate::scattering::uniform_grid(lo, hi, n)),
    }
}

/// Frequency and transverse wavenumbers.
#[derive(Debug, Clone, Default, Args)]
pub struct ModeFlags {
    /// Frequency ω (units c = ρ = 1).
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    /// Wavenumber k₁.
    #[arg(short = 'a', long = "a", allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Wavenumber k₂.
    #[arg(short = 'b', long = "b", allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// BesselPlus, BesselMinus, Hankel1, Hankel2, NeumannPlus or NeumannMinus.
    #[arg(long)]
    pub branch: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GridFlags {
    #[arg(long, allow_hyphen_values = true)]
    pub z_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub z_max: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct TolFlags {
    /// Relative tolerance of the ODE oracles.
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Absolute tolerance of the ODE oracles.
    #[arg(long)]
    pub abs_tol: Option<f64>,
    /// Step budget of the ODE oracles.
    #[arg(long)]
    pub max_steps: Option<usize>,
}

impl ModeFlags {
    pub fn into_config(self) -> RunConfig {
        RunConfig {
            omega: self.omega,
            a: self.a,
            b: self.b,
            branch: self.branch,
            ..Default::default()
        }
    }
}

impl GridFlags {
    pub fn into_config(self) -> RunConfig {
        RunConfig {
            z_min: self.z_min,
            z_max: self.z_max,
            samples: self.samples,
            ..Default::default()
        }
    }
}

impl TolFlags {
    pub fn into_config(self) -> RunConfig {
        RunConfig {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_steps: self.max_steps,
            ..Default::default()
        }
    }
}
