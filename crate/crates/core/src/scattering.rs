//! Asymptotic amplitudes, reflection off the exponential barrier
//! `U(z) = κ² e^{2z}`, turning point and penetration depth.
//!
//! Far to the left every basis behaves as `G₁ ≈ M₊ e^{iωz} + M₋ e^{−iωz}`
//! and the reflection coefficient is `R = |M₋|² / |M₊|²`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modes::{eval_G, BasisBranch, ModeParams};
use crate::numerics::{integrate_linear_ode2, lsq_fit_two_waves, ToleranceSpec};
use crate::specfun::{basis_g1, bessel_k_large_arg, gamma, gamma_modulus_sq};

/// Largest frequency accepted by the ODE reflection oracle.
pub const ORACLE_MAX_OMEGA: f64 = 20.0;
/// Number of samples in the amplitude-fit window.
pub const FIT_SAMPLES: usize = 64;
/// Upper bound on `U(z)/ω²` inside the amplitude-fit window.
pub const FIT_BARRIER_RATIO: f64 = 1e-7;
/// Per-sample residual allowed in the two-wave fit, relative to `max |G|`.
pub const FIT_RESIDUAL: f64 = 1e-6;
/// Relative gap between analytic and fitted `R` that raises the
/// discrepancy flag.
pub const DISCREPANCY_THRESHOLD: f64 = 1e-5;

/// Coefficients of the left plane waves `M₊ e^{iωz} + M₋ e^{−iωz}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticAmplitudes {
    #[serde(rename = "M_plus")]
    pub m_plus: Complex64,
    #[serde(rename = "M_minus")]
    pub m_minus: Complex64,
}

impl AsymptoticAmplitudes {
    pub fn new(m_plus: Complex64, m_minus: Complex64) -> Result<Self> {
        if m_plus == Complex64::new(0.0, 0.0) && m_minus == Complex64::new(0.0, 0.0) {
            return Err(Error::Domain("both asymptotic amplitudes vanish".into()));
        }
        Ok(Self { m_plus, m_minus })
    }

    /// `|M₋|² / |M₊|²`.
    pub fn ratio(&self) -> Result<f64> {
        if self.m_plus.norm() == 0.0 {
            return Err(Error::UndefinedReflection(
                "M₊ = 0: the wave only moves to the left".into(),
            ));
        }
        Ok(self.m_minus.norm_sqr() / self.m_plus.norm_sqr())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReflectionMethod {
    Analytic,
    Fitted,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReflectionResult {
    #[serde(rename = "R")]
    pub r: f64,
    pub branch: BasisBranch,
    pub method: ReflectionMethod,
}

/// Turning point of the barrier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BarrierInfo {
    /// `z₀ = ln(ω/κ)`.
    pub z0: f64,
    /// `|x₀| = κ e^{z₀} = ω`.
    pub x0_magnitude: f64,
    /// `U₀ = κ²`.
    #[serde(rename = "U0")]
    pub u0: f64,
}

/// `U(z) = (a² + b²) e^{2z}`.
pub fn schrodinger_potential(p: &ModeParams, z: f64) -> f64 {
    p.kappa * p.kappa * (2.0 * z).exp()
}

/// `−dU/dz = −2(a² + b²) e^{2z}`.
pub fn effective_force(p: &ModeParams, z: f64) -> f64 {
    -2.0 * schrodinger_potential(p, z)
}

fn require_barrier(p: &ModeParams) -> Result<()> {
    if p.kappa > 0.0 {
        Ok(())
    } else {
        Err(Error::Degenerate(
            "a = b = 0: no barrier, the wave propagates freely".into(),
        ))
    }
}

pub fn turning_point(p: &ModeParams) -> Result<BarrierInfo> {
    require_barrier(p)?;
    Ok(BarrierInfo {
        z0: (p.omega / p.kappa).ln(),
        x0_magnitude: p.omega,
        u0: p.kappa * p.kappa,
    })
}

/// `z₀ = ρ ln(ω / (c √(k₁² + k₂²)))` in metres.
pub fn penetration_depth(omega_physical: f64, k1: f64, k2: f64, rho: f64, c: f64) -> Result<f64> {
    for (name, v) in [("omega", omega_physical), ("rho", rho), ("c", c)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain(format!(
                "{name} = {v} must be positive and finite"
            )));
        }
    }
    if !k1.is_finite() || !k2.is_finite() {
        return Err(Error::Domain("wavenumbers must be finite".into()));
    }
    let kappa = k1.hypot(k2);
    if kappa == 0.0 {
        return Err(Error::Degenerate("k1 = k2 = 0: no turning point".into()));
    }
    Ok(rho * (omega_physical / (c * kappa)).ln())
}

/// `A = (iσ)^{iω}/Γ(1+iω)` and `B = (iσ)^{−iω}/Γ(1−iω)` with `σ = κ/2`,
/// using `(iσ)^{±iω} = e^{∓πω/2} e^{±iω ln σ}`.
fn bessel_left_coefficients(p: &ModeParams) -> (Complex64, Complex64) {
    let w = p.omega;
    let ln_sigma = (0.5 * p.kappa).ln();
    let a =
        Complex64::from_polar((-0.5 * PI * w).exp(), w * ln_sigma) / gamma(Complex64::new(1.0, w));
    let b =
        Complex64::from_polar((0.5 * PI * w).exp(), -w * ln_sigma) / gamma(Complex64::new(1.0, -w));
    (a, b)
}

/// Left amplitudes read from the small-`x` forms of each basis.
pub fn amplitudes_analytic(branch: BasisBranch, p: &ModeParams) -> Result<AsymptoticAmplitudes> {
    require_barrier(p)?;
    let (a, b) = bessel_left_coefficients(p);
    let w = p.omega;
    let zero = Complex64::new(0.0, 0.0);
    // sin(±iωπ) = ±i sinh(ωπ), cos(±iωπ) = cosh(ωπ)
    let s = Complex64::new(0.0, (PI * w).sinh());
    let ch = (PI * w).cosh();
    let i = Complex64::i();
    let (mp, mm) = match branch {
        BasisBranch::BesselPlus => (a, zero),
        BasisBranch::BesselMinus => (zero, b),
        BasisBranch::Hankel1 => (i * (PI * w).exp() * a / s, -i * b / s),
        BasisBranch::Hankel2 => {
            let (h1p, h1m) = (i * (PI * w).exp() * a / s, -i * b / s);
            (2.0 * a - h1p, -h1m)
        }
        BasisBranch::NeumannPlus => (ch * a / s, -b / s),
        BasisBranch::NeumannMinus => (a / s, -ch * b / s),
    };
    AsymptoticAmplitudes::new(mp, mm)
}

/// `|M₊|²` and `|M₋|²` of the decaying branch in closed form:
/// `e^{2πω}|A|²/sinh²(πω)` and `|B|²/sinh²(πω)` with
/// `|A|² = e^{−πω}/|Γ(1+iω)|²`, `|B|² = e^{πω}/|Γ(1+iω)|²`.
pub fn hankel1_amplitude_moduli(omega: f64) -> (f64, f64) {
    let g2 = gamma_modulus_sq(omega);
    let sh2 = (PI * omega).sinh().powi(2);
    (
        (2.0 * PI * omega).exp() * (-PI * omega).exp() / (g2 * sh2),
        (PI * omega).exp() / (g2 * sh2),
    )
}

/// The closed-form reflection coefficients attached to each basis:
/// `1` for `H⁽¹⁾`, `e^{4ωπ}` for `H⁽²⁾`, `4/(1 + e^{−4ωπ})` and
/// `(1 + e^{4ωπ})/4` for `N_{+iω}` and `N_{−iω}`, `0` for `J_{+iω}`.
pub fn reflection_closed_form(branch: BasisBranch, omega: f64) -> Result<f64> {
    Ok(match branch {
        BasisBranch::Hankel1 => 1.0,
        BasisBranch::Hankel2 => (4.0 * omega * PI).exp(),
        BasisBranch::NeumannPlus => 4.0 / (1.0 + (-4.0 * omega * PI).exp()),
        BasisBranch::NeumannMinus => (1.0 + (4.0 * omega * PI).exp()) / 4.0,
        BasisBranch::BesselPlus => 0.0,
        BasisBranch::BesselMinus => {
            return Err(Error::UndefinedReflection(
                "J_{-iω} is a single left-moving wave (M₊ = 0)".into(),
            ))
        }
    })
}

/// Window `[z_lo, z_hi]` used for amplitude fits: `U/ω² ≤ 10⁻⁷` at `z_hi ≤ −6`
/// and at least two periods `4π/ω` (and at least length 2).
pub fn fit_window(p: &ModeParams) -> Result<(f64, f64)> {
    let info = turning_point(p)?;
    let z_hi = (-6.0f64).min(info.z0 + 0.5 * FIT_BARRIER_RATIO.ln());
    let len = (4.0 * PI / p.omega).max(2.0);
    Ok((z_hi - len, z_hi))
}

/// Uniform sample points of the fit window.
pub fn fit_grid(p: &ModeParams) -> Result<Vec<f64>> {
    let (lo, hi) = fit_window(p)?;
    Ok(uniform_grid(lo, hi, FIT_SAMPLES))
}

/// `n ≥ 2` uniform points with both end points exact.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| {
            if k + 1 == n {
                hi
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Two-wave least-squares decomposition of left-region samples.
pub fn amplitudes_fit(samples: &[(f64, Complex64)], omega: f64) -> Result<AsymptoticAmplitudes> {
    if samples.len() < 8 {
        return Err(Error::Conditioning(format!(
            "{} samples; at least 8 are needed",
            samples.len()
        )));
    }
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("omega = {omega} must be positive")));
    }
    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), (z, _)| {
            (l.min(*z), h.max(*z))
        });
    let quarter = 0.5 * PI / omega;
    if hi - lo < quarter {
        return Err(Error::Conditioning(format!(
            "samples span {} < a quarter period {quarter}",
            hi - lo
        )));
    }
    let fit = lsq_fit_two_waves(samples, omega)?;
    let peak = samples.iter().map(|(_, g)| g.norm()).fold(0.0, f64::max);
    if fit.residual > FIT_RESIDUAL * peak {
        return Err(Error::Accuracy {
            what: "two-wave model does not describe the samples".into(),
            estimate: peak,
            error: fit.residual,
        });
    }
    AsymptoticAmplitudes::new(fit.c_plus, fit.c_minus)
}

/// Fit of the closed-form `G₁` of a branch over [`fit_window`].
pub fn amplitudes_fitted(branch: BasisBranch, p: &ModeParams) -> Result<AsymptoticAmplitudes> {
    let samples = fit_grid(p)?
        .into_iter()
        .map(|z| Ok((z, eval_G(branch, p, z)?.0)))
        .collect::<Result<Vec<_>>>()?;
    amplitudes_fit(&samples, p.omega)
}

/// Reflection coefficient by closed form or by fitting sampled `G₁`.
pub fn reflection(
    branch: BasisBranch,
    p: &ModeParams,
    method: ReflectionMethod,
) -> Result<ReflectionResult> {
    require_barrier(p)?;
    let r = match method {
        ReflectionMethod::Analytic => reflection_closed_form(branch, p.omega)?,
        ReflectionMethod::Fitted => amplitudes_fitted(branch, p)?.ratio()?,
    };
    Ok(ReflectionResult { r, branch, method })
}

/// Analytic and fitted reflection side by side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReflectionReport {
    pub branch: BasisBranch,
    pub omega: f64,
    pub kappa: f64,
    #[serde(rename = "R_analytic")]
    pub r_analytic: f64,
    #[serde(rename = "R_fitted")]
    pub r_fitted: f64,
    #[serde(rename = "M_plus")]
    pub m_plus: Complex64,
    #[serde(rename = "M_minus")]
    pub m_minus: Complex64,
    pub discrepancy_flag: bool,
}

/// Reports both reflection values; the flag is raised when they differ by
/// more than [`DISCREPANCY_THRESHOLD`] relative (absolute below `R = 1`). `M±` are the analytic
/// amplitudes.
pub fn reflection_report(branch: BasisBranch, p: &ModeParams) -> Result<ReflectionReport> {
    let amps = amplitudes_analytic(branch, p)?;
    let r_analytic = reflection(branch, p, ReflectionMethod::Analytic)?.r;
    let r_fitted = reflection(branch, p, ReflectionMethod::Fitted)?.r;
    let gap = (r_analytic - r_fitted).abs() / r_analytic.abs().max(r_fitted.abs()).max(1.0);
    Ok(ReflectionReport {
        branch,
        omega: p.omega,
        kappa: p.kappa,
        r_analytic,
        r_fitted,
        m_plus: amps.m_plus,
        m_minus: amps.m_minus,
        discrepancy_flag: gap > DISCREPANCY_THRESHOLD,
    })
}

/// Default tolerances of the ODE oracles.
pub fn oracle_tolerance() -> ToleranceSpec {
    ToleranceSpec {
        rel_tol: 1e-12,
        abs_tol: 0.0,
        max_steps: 2_000_000,
    }
}

/// Start point `X_s` of the leftward integration, far enough beyond the
/// turning point for the large-argument series of `K_{iω}` to converge.
pub fn oracle_start_x(omega: f64) -> f64 {
    30f64.max(0.5 * omega * omega + 10.0).max(omega + 25.0)
}

/// Numerically integrated `K_{iω}(κe^z)` on the fit grid.
fn decaying_solution_on_grid(p: &ModeParams, tol: &ToleranceSpec) -> Result<Vec<(f64, Complex64)>> {
    require_barrier(p)?;
    if p.omega > ORACLE_MAX_OMEGA {
        return Err(Error::Range(format!(
            "omega = {} exceeds the oracle limit {ORACLE_MAX_OMEGA}",
            p.omega
        )));
    }
    let xs = oracle_start_x(p.omega);
    let zs = (xs / p.kappa).ln();
    let (k, xdk) = bessel_k_large_arg(Complex64::new(0.0, p.omega), xs)?;
    let grid = fit_grid(p)?;
    let k2 = p.kappa * p.kappa;
    let res = integrate_linear_ode2(
        |z| k2 * (2.0 * z).exp(),
        p.omega * p.omega,
        (zs, grid[0]),
        (
            Complex64::new(k.value.re, 0.0),
            Complex64::new(xdk.value.re, 0.0),
        ),
        tol,
        &grid,
    )?;
    Ok(res.points.iter().map(|pt| (pt.z, pt.u)).collect())
}

/// `R` of the decaying solution obtained without any Bessel closed form:
/// `G″ + (ω² − κ²e^{2z})G = 0` is integrated leftward from `X_s` (initial
/// data from the large-argument series of `K_{iω}`) into the fit window and
/// the two-wave fit is applied.
pub fn reflection_numeric_oracle(p: &ModeParams) -> Result<f64> {
    reflection_numeric_oracle_with(p, &oracle_tolerance())
}

/// [`reflection_numeric_oracle`] with explicit integrator tolerances.
pub fn reflection_numeric_oracle_with(p: &ModeParams, tol: &ToleranceSpec) -> Result<f64> {
    let samples = decaying_solution_on_grid(p, tol)?;
    amplitudes_fit(&samples, p.omega)?.ratio()
}

/// `R` of the growing solution `H⁽²⁾ = 2J_{iω} − H⁽¹⁾`, where `H⁽¹⁾ =
/// −(2i/π) e^{πω/2} K_{iω}` is the integrated decaying solution and
/// `J_{iω}` contributes its single left wave `(iσ)^{iω} e^{iωz}/Γ(1+iω)`.
pub fn reflection_numeric_oracle_growing(p: &ModeParams) -> Result<f64> {
    reflection_numeric_oracle_growing_with(p, &oracle_tolerance())
}

/// [`reflection_numeric_oracle_growing`] with explicit integrator tolerances.
pub fn reflection_numeric_oracle_growing_with(p: &ModeParams, tol: &ToleranceSpec) -> Result<f64> {
    let samples = decaying_solution_on_grid(p, tol)?;
    let fit = amplitudes_fit(&samples, p.omega)?;
    let norm = Complex64::new(0.0, -2.0 / PI) * (0.5 * PI * p.omega).exp();
    let (a, _) = bessel_left_coefficients(p);
    let growing = AsymptoticAmplitudes::new(2.0 * a - norm * fit.m_plus, -norm * fit.m_minus)?;
    growing.ratio()
}

/// Slope `B` of the least-squares line through `(u, ln|G|)`.
pub fn fit_log_slope(samples: &[(f64, Complex64)]) -> Result<f64> {
    if samples.len() < 3 {
        return Err(Error::Conditioning("need at least three samples".into()));
    }
    let n = samples.len() as f64;
    let mu = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let spread = samples.iter().map(|s| (s.0 - mu).powi(2)).sum::<f64>();
    let width = samples
        .iter()
        .map(|s| s.0)
        .fold(f64::NEG_INFINITY, f64::max)
        - samples.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    if !(width > 1e-8) {
        return Err(Error::Conditioning(format!(
            "window width {width} is too small"
        )));
    }
    let mut cov = 0.0;
    let mut lmean = 0.0;
    for (_, g) in samples {
        if g.norm() == 0.0 {
            return Err(Error::Domain("log of a vanishing sample".into()));
        }
        lmean += g.norm().ln() / n;
    }
    for (u, g) in samples {
        cov += (u - mu) * (g.norm().ln() - lmean);
    }
    Ok(cov / spread)
}

/// Half-width of the window in `u` used by [`near_turning_exponent`].
pub const TURNING_WINDOW: f64 = 0.02;

/// Local exponent `B` of `G₁ ≈ e^{Bu}` for the decaying branch near the
/// turning point, with `x = iω(1 + u)` and `|u| ≤ 0.02` (41 samples).
pub fn near_turning_exponent(p: &ModeParams) -> Result<f64> {
    require_barrier(p)?;
    let samples = (-20..=20)
        .map(|k| {
            let u = TURNING_WINDOW * k as f64 / 20.0;
            Ok((
                u,
                basis_g1(BasisBranch::Hankel1, p.omega, p.omega * (1.0 + u))?.value,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    fit_log_slope(&samples)
}

/// The `z` beyond the turning point where `|G₁|` of the decaying branch
/// falls to `1/e` of its left envelope `|M₊| + |M₋|`.
pub fn envelope_crossing(p: &ModeParams) -> Result<f64> {
    let info = turning_point(p)?;
    let amps = amplitudes_analytic(BasisBranch::Hankel1, p)?;
    let level = (amps.m_plus.norm() + amps.m_minus.norm()) / std::f64::consts::E;
    let g = |z: f64| -> Result<f64> { Ok(eval_G(BasisBranch::Hankel1, p, z)?.0.norm() - level) };
    // Scan leftward from inside the forbidden region to the first point
    // above the level, then bisect.
    let step = 0.01;
    let mut hi = info.z0 + 3f64.min((600.0 / p.omega).ln());
    if g(hi)? >= 0.0 {
        return Err(Error::Domain("no decay inside the forbidden region".into()));
    }
    let mut lo = hi - step;
    while g(lo)? < 0.0 {
        hi = lo;
        lo -= step;
        if lo < info.z0 - 10.0 {
            return Err(Error::Domain("envelope level never reached".into()));
        }
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if g(mid)? >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Largest deviation between closed-form `G₁` and an integration of
/// `G″ + (ω² − κ²e^{2z})G = 0` on `n` points of `[z_lo, z_hi]`, relative to
/// the largest `|G₁|`.
///
/// The decaying branch is integrated leftward from `z_hi`, every other
/// branch rightward from `z_lo`, each with closed-form initial data.
pub fn ode_profile_deviation(
    branch: BasisBranch,
    p: &ModeParams,
    z_lo: f64,
    z_hi: f64,
    n: usize,
) -> Result<f64> {
    ode_profile_deviation_with(branch, p, (z_lo, z_hi), n, &oracle_tolerance())
}

/// [`ode_profile_deviation`] with explicit integrator tolerances.
pub fn ode_profile_deviation_with(
    branch: BasisBranch,
    p: &ModeParams,
    (z_lo, z_hi): (f64, f64),
    n: usize,
    tol: &ToleranceSpec,
) -> Result<f64> {
    require_barrier(p)?;
    if !(z_hi > z_lo) || n < 2 {
        return Err(Error::Domain(
            "need z_lo < z_hi and at least two points".into(),
        ));
    }
    let grid = uniform_grid(z_lo, z_hi, n);
    let start = if branch == BasisBranch::Hankel1 {
        z_hi
    } else {
        z_lo
    };
    let end = if branch == BasisBranch::Hankel1 {
        z_lo
    } else {
        z_hi
    };
    let (g1, g2) = eval_G(branch, p, start)?;
    let k2 = p.kappa * p.kappa;
    let res = integrate_linear_ode2(
        |z| k2 * (2.0 * z).exp(),
        p.omega * p.omega,
        (start, end),
        (g1, p.omega * g2),
        tol,
        &grid,
    )?;
    let mut worst: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for pt in &res.points {
        let closed = eval_G(branch, p, pt.z)?.0;
        worst = worst.max((closed - pt.u).norm());
        peak = peak.max(closed.norm());
    }
    Ok(worst / peak)
}
