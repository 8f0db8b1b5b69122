//! Exact electromagnetic modes of three-dimensional Lobachevsky space.
//!
//! In quasi-Cartesian coordinates `(x, y, z)` the metric
//! `dt² − e^{−2z}(dx² + dy²) − dz²` acts on Maxwell fields like an
//! inhomogeneous medium with `ε = μ = diag(1, 1, e^{−2z})`. Separating the
//! complex field `E + iB` as `e^{−iωt} e^{iax} e^{iby} f(z)` reduces the
//! problem to Bessel's equation of imaginary order `iω` on the imaginary axis
//! `x = iκe^z`, `κ = √(a² + b²)`, which is equivalent to a one-dimensional
//! Schrödinger problem with the exponential barrier `U(z) = κ² e^{2z}`.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`] – coordinate charts, metric weight and the effective medium.
//! * [`numerics`] – adaptive quadrature, Dormand–Prince integration and the
//!   two-wave least-squares fit used as independent oracles.
//! * [`specfun`] – complex log-gamma, `I_{ν}` and `K_{ν}` kernels for complex
//!   order and the six cylinder-function bases evaluated at `x = iX`.
//! * [`modes`] – assembled field modes, the first-order Maxwell system and the
//!   4×4 matrix operator, plus residual checks.
//! * [`scattering`] – asymptotic amplitudes, reflection coefficients, turning
//!   point and penetration depth.
//! * [`cli`] – the `lobwave` command-line surface (CSV / JSON output).
//!
//! # Examples
//!
//! ```text
//! cargo run --release --example geometry_maps      # charts and the medium
//! cargo run --release --example bessel_kernels     # K_{iω}, I_{iω} by two routes
//! cargo run --release --example figure_profiles -- out/   # Im H1 at ω = 10, 20
//! cargo run --release --example maxwell_check      # mode residuals per branch
//! cargo run --release --example reflection_table   # R for every branch
//! cargo run --release --example penetration_depth  # z0 in curvature units and metres
//! cargo run --release --example plane_wave         # the a = b = 0 wave
//! cargo run --release --example ode_oracle         # closed form vs integration
//! cargo run --release --example verify_suite       # the check suite
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod geometry;
pub mod modes;
pub mod numerics;
pub mod scattering;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
