//! The `verify` check suite. Every check reduces to one measured error
//! compared against a threshold; inputs are fixed lattices so reports are
//! reproducible byte for byte.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::error::Result;
use crate::geometry::{
    effective_tensors, embedding_to_poincare, poincare_to_quasi, to_embedding, QuasiCartesian,
};
use crate::modes::{
    amplitudes_at, eval_G, heun_form_residual, line_dependency_defect, maxwell_residual_firstorder,
    maxwell_residual_matrix, plane_wave_amplitudes, plane_wave_special, BasisBranch, ModeParams,
};
use crate::numerics::ToleranceSpec;
use crate::scattering::{
    envelope_crossing, ode_profile_deviation_with, reflection,
    reflection_numeric_oracle_growing_with, reflection_numeric_oracle_with, turning_point,
    uniform_grid, ReflectionMethod,
};
use crate::specfun::{
    bessel_i, bessel_k, bessel_k_expansion, bessel_k_quad, gamma, gamma_modulus_sq,
};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub group: &'static str,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "group": self.group,
            "measured": self.measured,
            "threshold": self.threshold,
            "pass": self.pass,
            "detail": self.detail,
        })
    }
}

struct Check {
    name: &'static str,
    group: &'static str,
    threshold: f64,
    detail: &'static str,
    run: fn(&ToleranceSpec) -> Result<f64>,
}

/// Parameter sets `(ω, a, b)` used by the Maxwell checks.
pub const MAXWELL_PARAMS: [(f64, f64, f64); 6] = [
    (0.5, 1.0, 0.0),
    (1.0, 0.6, 0.8),
    (2.0, 1.0, 1.0),
    (5.0, -0.3, 2.0),
    (10.0, 1.0, 0.0),
    (3.0, 0.0, 0.5),
];
/// Grid of `(ω, κ)` for the mirror checks.
pub const MIRROR_OMEGAS: [f64; 5] = [0.5, 1.0, 2.0, 5.0, 10.0];
pub const MIRROR_KAPPAS: [f64; 3] = [0.2, 1.0, 5.0];
/// Grid of `(ω, κ)` for the closed-form versus integration check.
pub const ODE_OMEGAS: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
pub const ODE_KAPPAS: [f64; 3] = [0.5, 1.0, 2.0];

fn checks() -> Vec<Check> {
    vec![
        Check { name: "geometry.round_trip", group: "geometry", threshold: 1e-10, detail: "max coordinate error of quasi → embedding → Poincaré → quasi at 10³ seeded random points in [−5,5]³", run: geometry_round_trip },
        Check { name: "geometry.hyperboloid", group: "geometry", threshold: 1e-12, detail: "max |u0² − |u|² − 1| / u0² at the same points", run: geometry_hyperboloid },
        Check { name: "geometry.medium", group: "geometry", threshold: 0.0, detail: "count of z with eps_diag ≠ mu_diag bitwise", run: geometry_medium },
        Check { name: "specfun.gamma_identity", group: "specfun", threshold: 1e-12, detail: "relative gap |Γ(1+iω)|² vs πω/sinh(πω), ω ∈ {0.1,1,5,20}", run: gamma_identity },
        Check { name: "specfun.wronskian", group: "specfun", threshold: 1e-9, detail: "max |X(I_ν K_{ν+1} + K_ν I_{ν+1}) − 1| on 20×20 (ω,X) in [0.5,10]×[0.1,30]", run: wronskian },
        Check { name: "specfun.k_routes", group: "specfun", threshold: 1e-10, detail: "quadrature vs series/continued-fraction K_{iω}, ω ∈ [0.5,5], X ∈ [0.5,20], relative to max(|K|, e^{−πω/2}·e^{−X})", run: k_routes },
        Check { name: "maxwell.firstorder", group: "maxwell", threshold: 1e-8, detail: "first-order system residual, 6 modes × 6 branches × 200 z in [−8, z0+3]", run: maxwell_firstorder },
        Check { name: "maxwell.matrix", group: "maxwell", threshold: 1e-8, detail: "4×4 matrix operator residual on the same grid", run: maxwell_matrix },
        Check { name: "maxwell.dependency", group: "maxwell", threshold: 1e-12, detail: "defect of the identity tying line 1 to lines 2–4", run: maxwell_dependency },
        Check { name: "maxwell.planewave", group: "maxwell", threshold: 1e-12, detail: "|e^{−2z}E×B ∓ e_z| and first-order residual of the a = b = 0 wave at 100 seeded random (t,z,ω) per direction", run: maxwell_planewave },
        Check { name: "system.g_pair", group: "system", threshold: 1e-8, detail: "relative residual of dG1/dz = ωG2 and dG2/dz = (X²/ω − ω)G1 by 4th-order differences at ω=2, κ=1, z ∈ {−2,0,1}", run: g_pair },
        Check { name: "heun.residual", group: "heun", threshold: 1e-5, detail: "normalized F1 second-order residual, ω=2, a=b=1, z ∈ [−4,0]", run: heun },
        Check { name: "reflection.mirror_fitted", group: "reflection", threshold: 1e-6, detail: "max |R − 1| of the decaying branch fitted from closed form on 5×3 (ω,κ)", run: mirror_fitted },
        Check { name: "reflection.mirror_oracle", group: "reflection", threshold: 1e-6, detail: "max |R − 1| from the integrated decaying solution on 5×3 (ω,κ)", run: mirror_oracle },
        Check { name: "reflection.growing", group: "reflection", threshold: 1e-2, detail: "relative gap of the growing-branch R to e^{4πω}, ω ∈ {0.25,0.5}", run: growing },
        Check { name: "reflection.closed_vs_ode", group: "reflection", threshold: 1e-7, detail: "max |G1 − G1_ode| / max|G1| over z ∈ [−6, z0+3], 4×3 (ω,κ), decaying and J_{+iω} branches", run: closed_vs_ode },
        Check { name: "barrier.turning_point", group: "barrier", threshold: 1e-12, detail: "max |U0 e^{2 z0}/ω² − 1| on a lattice of (ω,a,b)", run: barrier_identity },
        Check { name: "barrier.envelope", group: "barrier", threshold: 1.0, detail: "max |z_e − z0| where |G1| of the decaying branch drops to 1/e of its envelope, ω ∈ {2,5,10}", run: barrier_envelope },
    ]
}

/// Runs the checks whose name or group starts with one of `only` (all when
/// empty). `threshold` replaces every built-in threshold.
pub fn run_checks(
    only: &[String],
    threshold: Option<f64>,
    tol: &ToleranceSpec,
) -> Vec<CheckOutcome> {
    checks()
        .into_iter()
        .filter(|c| {
            only.is_empty()
                || only
                    .iter()
                    .any(|o| c.name.starts_with(o.as_str()) || c.group == o)
        })
        .map(|c| {
            let threshold = threshold.unwrap_or(c.threshold);
            match (c.run)(tol) {
                Ok(m) => CheckOutcome {
                    name: c.name,
                    group: c.group,
                    measured: m,
                    threshold,
                    pass: m <= threshold,
                    detail: c.detail.to_string(),
                },
                Err(e) => CheckOutcome {
                    name: c.name,
                    group: c.group,
                    measured: f64::INFINITY,
                    threshold,
                    pass: false,
                    detail: format!("{}: {e}", c.detail),
                },
            }
        })
        .collect()
}

const SEED: u64 = 0x10b_a7e5;

fn rng() -> StdRng {
    StdRng::seed_from_u64(SEED)
}

/// 10³ seeded points in the cube `|x|, |y|, |z| ≤ 5`.
pub fn geometry_samples() -> Vec<QuasiCartesian> {
    let mut r = rng();
    (0..1000)
        .map(|_| QuasiCartesian {
            x: r.gen_range(-5.0..=5.0),
            y: r.gen_range(-5.0..=5.0),
            z: r.gen_range(-5.0..=5.0),
        })
        .collect()
}

fn geometry_round_trip(_: &ToleranceSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in geometry_samples() {
        let back = poincare_to_quasi(embedding_to_poincare(to_embedding(p)?)?)?;
        worst = worst
            .max((back.x - p.x).abs())
            .max((back.y - p.y).abs())
            .max((back.z - p.z).abs());
    }
    Ok(worst)
}

fn geometry_hyperboloid(_: &ToleranceSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in geometry_samples() {
        let u = to_embedding(p)?;
        worst = worst.max((u.minkowski_norm() - 1.0).abs() / (u.u0 * u.u0));
    }
    Ok(worst)
}

fn geometry_medium(_: &ToleranceSpec) -> Result<f64> {
    let mut bad = 0.0;
    for z in uniform_grid(-300.0, 300.0, 601) {
        let m = effective_tensors(z)?;
        if m.eps_diag.map(f64::to_bits) != m.mu_diag.map(f64::to_bits) {
            bad += 1.0;
        }
    }
    Ok(bad)
}

fn gamma_identity(_: &ToleranceSpec) -> Result<f64> {
    Ok([0.1, 1.0, 5.0, 20.0]
        .iter()
        .map(|&w| {
            let kernel = gamma(Complex64::new(1.0, w)).norm_sqr();
            (kernel / gamma_modulus_sq(w) - 1.0).abs()
        })
        .fold(0.0, f64::max))
}

fn wronskian(_: &ToleranceSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for w in uniform_grid(0.5, 10.0, 20) {
        for x in uniform_grid(0.1, 30.0, 20) {
            let nu = Complex64::new(0.0, w);
            let (i0, i1) = (bessel_i(nu, x)?.value, bessel_i(nu + 1.0, x)?.value);
            let (k0, k1) = (bessel_k(nu, x)?.value, bessel_k(nu + 1.0, x)?.value);
            worst = worst.max((x * (i0 * k1 + k0 * i1) - 1.0).norm());
        }
    }
    Ok(worst)
}

fn k_routes(_: &ToleranceSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for w in uniform_grid(0.5, 5.0, 10) {
        for x in uniform_grid(0.5, 20.0, 14) {
            let nu = Complex64::new(0.0, w);
            let q = bessel_k_quad(nu, x)?.value.re;
            let s = bessel_k_expansion(nu, x)?.value.re;
            let scale = q.abs().max((-0.5 * PI * w - x).exp());
            worst = worst.max((q - s).abs() / scale);
        }
    }
    Ok(worst)
}

fn maxwell_grid<F: Fn(&crate::modes::ModeAmplitudes, &ModeParams) -> f64>(f: F) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (w, a, b) in MAXWELL_PARAMS {
        let p = ModeParams::new(w, a, b)?;
        let z0 = turning_point(&p)?.z0;
        for branch in BasisBranch::ALL {
            for z in uniform_grid(-8.0, z0 + 3.0, 200) {
                worst = worst.max(f(&amplitudes_at(branch, &p, z)?, &p));
            }
        }
    }
    Ok(worst)
}

fn maxwell_firstorder(_: &ToleranceSpec) -> Result<f64> {
    maxwell_grid(maxwell_residual_firstorder)
}

fn maxwell_matrix(_: &ToleranceSpec) -> Result<f64> {
    maxwell_grid(maxwell_residual_matrix)
}

fn maxwell_dependency(_: &ToleranceSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (w, a, b) in MAXWELL_PARAMS {
        let p = ModeParams::new(w, a, b)?;
        for (k, z) in uniform_grid(-3.0, 1.0, 9).into_iter().enumerate() {
            // An arbitrary stack that is not a solution.
            let c = |s: f64| Complex64::new((s * (k as f64 + 1.0)).sin(), (s * z).cos());
            let mut m = amplitudes_at(BasisBranch::Hankel1, &p, z)?;
            m.f1 = c(0.3);
            m.f2 = c(0.7);
            m.f3 = c(1.1);
            m.df1 = c(1.9);
            m.df2 = c(2.3);
            m.df3 = c(2.9);
            worst = worst.max(line_dependency_defect(&m, &p));
        }
    }
    Ok(worst)
}

fn maxwell_planewave(_: &ToleranceSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    let mut r = rng();
    for sign in [1i8, -1] {
        for _ in 0..100 {
            let (t, z, w) = (
                r.gen_range(0.0..10.0),
                r.gen_range(-3.0..3.0),
                r.gen_range(0.1..10.0),
            );
            {
                let f = plane_wave_special(sign, w, t, z)?;
                let s = f.poynting();
                let e2 = (-2.0 * z).exp();
                let dev = (s[0] * e2)
                    .abs()
                    .max((s[1] * e2).abs())
                    .max((s[2] * e2 - sign as f64).abs());
                let p = ModeParams::new(w, 0.0, 0.0)?;
                let r = maxwell_residual_firstorder(&plane_wave_amplitudes(sign, w, z)?, &p);
                worst = worst.max(dev).max(r);
            }
        }
    }
    Ok(worst)
}

fn g_pair(_: &ToleranceSpec) -> Result<f64> {
    let p = ModeParams::new(2.0, 1.0, 0.0)?;
    let h = 1e-3;
    let mut worst: f64 = 0.0;
    for z in [-2.0, 0.0, 1.0] {
        let g = |dz: f64| eval_G(BasisBranch::Hankel1, &p, z + dz);
        let (m2, m1, p1, p2) = (g(-2.0 * h)?, g(-h)?, g(h)?, g(2.0 * h)?);
        let d = |f: fn((Complex64, Complex64)) -> Complex64| {
            (f(m2) - 8.0 * f(m1) + 8.0 * f(p1) - f(p2)) / (12.0 * h)
        };
        let dg1 = d(|v| v.0);
        let dg2 = d(|v| v.1);
        let (g1, g2) = g(0.0)?;
        let x2 = (p.kappa * z.exp()).powi(2);
        let r1 = (dg1 - p.omega * g2).norm() / (p.omega * g2.norm()).max(dg1.norm());
        let rhs = (x2 / p.omega - p.omega) * g1;
        let r2 = (dg2 - rhs).norm() / rhs.norm().max(dg2.norm());
        worst = worst.max(r1).max(r2);
    }
    Ok(worst)
}

fn heun(_: &ToleranceSpec) -> Result<f64> {
    let p = ModeParams::new(2.0, 1.0, 1.0)?;
    heun_form_residual(BasisBranch::Hankel1, &p, &uniform_grid(-4.0, 0.0, 41))
}

fn mirror_fitted(_: &ToleranceSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for w in MIRROR_OMEGAS {
        for k in MIRROR_KAPPAS {
            let p = ModeParams::new(w, k, 0.0)?;
            let r = reflection(BasisBranch::Hankel1, &p, ReflectionMethod::Fitted)?.r;
            worst = worst.max((r - 1.0).abs());
        }
    }
    Ok(worst)
}

fn mirror_oracle(tol: &ToleranceSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for w in MIRROR_OMEGAS {
        for k in MIRROR_KAPPAS {
            let r = reflection_numeric_oracle_with(&ModeParams::new(w, k, 0.0)?, tol)?;
            worst = worst.max((r - 1.0).abs());
        }
    }
    Ok(worst)
}

fn growing(tol: &ToleranceSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for w in [0.25, 0.5] {
        let r = reflection_numeric_oracle_growing_with(&ModeParams::new(w, 1.0, 0.0)?, tol)?;
        worst = worst.max((r / (4.0 * PI * w).exp() - 1.0).abs());
    }
    Ok(worst)
}

fn closed_vs_ode(tol: &ToleranceSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for w in ODE_OMEGAS {
        for k in ODE_KAPPAS {
            let p = ModeParams::new(w, k, 0.0)?;
            let z0 = turning_point(&p)?.z0;
            for b in [BasisBranch::Hankel1, BasisBranch::BesselPlus] {
                worst = worst.max(ode_profile_deviation_with(
                    b,
                    &p,
                    (-6.0, z0 + 3.0),
                    200,
                    tol,
                )?);
            }
        }
    }
    Ok(worst)
}

fn barrier_identity(_: &ToleranceSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for w in uniform_grid(0.1, 50.0, 7) {
        for a in uniform_grid(-3.0, 3.0, 5) {
            for b in [0.25, 1.0, 4.0] {
                let p = ModeParams::new(w, a, b)?;
                let t = turning_point(&p)?;
                worst = worst.max((t.u0 * (2.0 * t.z0).exp() / (w * w) - 1.0).abs());
            }
        }
    }
    Ok(worst)
}

fn barrier_envelope(_: &ToleranceSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for w in [2.0, 5.0, 10.0] {
        let p = ModeParams::new(w, 1.0, 0.0)?;
        worst = worst.max((envelope_crossing(&p)? - turning_point(&p)?.z0).abs());
    }
    Ok(worst)
}
