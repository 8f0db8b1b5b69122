//! Numerical services used as independent oracles: adaptive Gauss–Kronrod
//! quadrature, an embedded Dormand–Prince integrator for linear second-order
//! equations and a least-squares fit of two counter-propagating waves.

mod lsq;
mod ode;
mod quad;

pub use lsq::{lsq_fit_two_waves, TwoWaveFit};
pub use ode::{integrate_linear_ode2, IntegrationResult, OdePoint};
pub use quad::{quad_adaptive, quad_semi_infinite, QuadResult};

use crate::error::{Error, Result};

/// Requested accuracy for the adaptive solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl ToleranceSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_steps: usize) -> Result<Self> {
        if !(rel_tol >= 1e-14) || !rel_tol.is_finite() {
            return Err(Error::Domain(format!(
                "relative tolerance {rel_tol:e} must be finite and at least 1e-14"
            )));
        }
        if !(abs_tol >= 0.0) || !abs_tol.is_finite() {
            return Err(Error::Domain(format!(
                "absolute tolerance {abs_tol:e} must be finite and non-negative"
            )));
        }
        if max_steps == 0 {
            return Err(Error::Domain("max_steps must be positive".into()));
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_steps,
        })
    }

    /// Threshold `max(abs_tol, rel_tol * scale)`.
    pub fn bound(&self, scale: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * scale.abs())
    }
}

impl Default for ToleranceSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_steps: 200_000,
        }
    }
}
