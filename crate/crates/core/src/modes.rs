//! Separated Maxwell modes `E + iB = e^{−iωt} e^{iax} e^{iby} f(z)`.
//!
//! The profile stack is built from a cylinder-function basis `G₁`:
//!
//! * `G₂ = (x/ω) dG₁/dx`, so that `dG₁/dz = ωG₂` and
//!   `dG₂/dz = (κ²e^{2z}/ω − ω) G₁`;
//! * `F₁ = (bG₁ + aG₂)/κ`, `F₂ = (−aG₁ + bG₂)/κ`;
//! * `f₁ = e^z F₁`, `f₂ = e^z F₂`, `f₃ = (κ/(iω)) e^{2z} G₁`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::MAX_ABS_Z;
use crate::specfun::{basis_jet, MAX_OMEGA};

pub use crate::specfun::BasisBranch;

/// Frequency `ω` and transverse wavenumbers `a = k₁`, `b = k₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeParams {
    pub omega: f64,
    pub a: f64,
    pub b: f64,
    pub kappa: f64,
}

impl ModeParams {
    pub fn new(omega: f64, a: f64, b: f64) -> Result<Self> {
        if !(omega > 0.0) || !(omega <= MAX_OMEGA) {
            return Err(Error::Range(format!(
                "omega = {omega} outside the supported range (0, {MAX_OMEGA}]"
            )));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain("wavenumbers must be finite".into()));
        }
        Ok(Self {
            omega,
            a,
            b,
            kappa: a.hypot(b),
        })
    }

    fn require_kappa(&self) -> Result<()> {
        if self.kappa > 0.0 {
            Ok(())
        } else {
            Err(Error::Degenerate(
                "a = b = 0 has no barrier; use the plane-wave solution".into(),
            ))
        }
    }

    /// `X = κe^z`.
    pub fn big_x(&self, z: f64) -> Result<f64> {
        if !z.is_finite() || z.abs() > MAX_ABS_Z {
            return Err(Error::Range(format!("|z| = {z} exceeds {MAX_ABS_Z}")));
        }
        Ok(self.kappa * z.exp())
    }
}

/// The profile functions and their `z`-derivatives at one point.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeAmplitudes {
    pub z: f64,
    pub G1: Complex64,
    pub G2: Complex64,
    pub F1: Complex64,
    pub F2: Complex64,
    pub f1: Complex64,
    pub f2: Complex64,
    /// `(e^{2z}/ω)(−ib F₁ + ia F₂)`.
    pub f3: Complex64,
    /// `(κ/(iω)) e^{2z} G₁`.
    pub f3_reduced: Complex64,
    pub df1: Complex64,
    pub df2: Complex64,
    pub df3: Complex64,
}

/// Components of `E + iB` in the orthonormal frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldVector {
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
}

impl FieldVector {
    pub fn components(&self) -> [Complex64; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn e(&self) -> [f64; 3] {
        self.components().map(|c| c.re)
    }

    pub fn b(&self) -> [f64; 3] {
        self.components().map(|c| c.im)
    }

    /// `E × B`.
    pub fn poynting(&self) -> [f64; 3] {
        let (e, b) = (self.e(), self.b());
        [
            e[1] * b[2] - e[2] * b[1],
            e[2] * b[0] - e[0] * b[2],
            e[0] * b[1] - e[1] * b[0],
        ]
    }
}

/// The constant 4×4 matrices of the complex Maxwell operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxwellMatrices {
    pub alpha1: [[f64; 4]; 4],
    pub alpha2: [[f64; 4]; 4],
    pub alpha3: [[f64; 4]; 4],
    pub s1: [[f64; 4]; 4],
    pub s2: [[f64; 4]; 4],
}

impl MaxwellMatrices {
    pub const fn standard() -> Self {
        Self {
            alpha1: [
                [0.0, 1.0, 0.0, 0.0],
                [-1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, -1.0],
                [0.0, 0.0, 1.0, 0.0],
            ],
            alpha2: [
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
                [-1.0, 0.0, 0.0, 0.0],
                [0.0, -1.0, 0.0, 0.0],
            ],
            alpha3: [
                [0.0, 0.0, 0.0, 1.0],
                [0.0, 0.0, -1.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
                [-1.0, 0.0, 0.0, 0.0],
            ],
            s1: [
                [0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, -1.0],
                [0.0, 0.0, 1.0, 0.0],
            ],
            s2: [
                [0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
                [0.0, 0.0, 0.0, 0.0],
                [0.0, -1.0, 0.0, 0.0],
            ],
        }
    }
}

type Mat4 = [[f64; 4]; 4];

fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn apply(m: &Mat4, v: &[Complex64; 4]) -> [Complex64; 4] {
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (i, o) in out.iter_mut().enumerate() {
        for (k, vk) in v.iter().enumerate() {
            *o += m[i][k] * vk;
        }
    }
    out
}

/// `G₁` and `G₂` of the branch at `z`.
#[allow(non_snake_case)]
pub fn eval_G(branch: BasisBranch, p: &ModeParams, z: f64) -> Result<(Complex64, Complex64)> {
    p.require_kappa()?;
    let j = basis_jet(branch, p.omega, p.big_x(z)?)?;
    Ok((j.value, j.d1 / p.omega))
}

/// Rotation from `(G₁, G₂)` to `(F₁, F₂)`.
#[allow(non_snake_case)]
pub fn F_from_G(g1: Complex64, g2: Complex64, p: &ModeParams) -> Result<(Complex64, Complex64)> {
    p.require_kappa()?;
    let (ca, cb) = (p.a / p.kappa, p.b / p.kappa);
    Ok((cb * g1 + ca * g2, -ca * g1 + cb * g2))
}

/// Inverse rotation from `(F₁, F₂)` back to `(G₁, G₂)`.
#[allow(non_snake_case)]
pub fn G_from_F(f1: Complex64, f2: Complex64, p: &ModeParams) -> Result<(Complex64, Complex64)> {
    p.require_kappa()?;
    let (ca, cb) = (p.a / p.kappa, p.b / p.kappa);
    Ok((cb * f1 - ca * f2, ca * f1 + cb * f2))
}

/// Full profile stack at `z`, with derivatives from the recurrence chain.
pub fn amplitudes_at(branch: BasisBranch, p: &ModeParams, z: f64) -> Result<ModeAmplitudes> {
    p.require_kappa()?;
    let j = basis_jet(branch, p.omega, p.big_x(z)?)?;
    let w = p.omega;
    let (g1, g2) = (j.value, j.d1 / w);
    let (dg1, dg2) = (j.d1, j.d2 / w);
    let (big_f1, big_f2) = F_from_G(g1, g2, p)?;
    let (dbig_f1, dbig_f2) = F_from_G(dg1, dg2, p)?;
    let ez = z.exp();
    let e2z = ez * ez;
    let i = Complex64::i();
    let f3 = e2z / w * (-i * p.b * big_f1 + i * p.a * big_f2);
    let c3 = Complex64::new(0.0, -p.kappa / w) * e2z;
    Ok(ModeAmplitudes {
        z,
        G1: g1,
        G2: g2,
        F1: big_f1,
        F2: big_f2,
        f1: ez * big_f1,
        f2: ez * big_f2,
        f3,
        f3_reduced: c3 * g1,
        df1: ez * (big_f1 + dbig_f1),
        df2: ez * (big_f2 + dbig_f2),
        df3: c3 * (2.0 * g1 + dg1),
    })
}

/// `E + iB` of the branch at the spacetime point `(t, x, y, z)`.
pub fn assemble_field(
    branch: BasisBranch,
    p: &ModeParams,
    t: f64,
    x: f64,
    y: f64,
    z: f64,
) -> Result<FieldVector> {
    let m = amplitudes_at(branch, p, z)?;
    let phase = Complex64::from_polar(1.0, -p.omega * t + p.a * x + p.b * y);
    Ok(FieldVector {
        c1: phase * m.f1,
        c2: phase * m.f2,
        c3: phase * m.f3,
    })
}

struct Lines {
    values: [Complex64; 4],
    scale: f64,
}

/// The four first-order equations, each with the largest term magnitude.
fn first_order_lines(m: &ModeAmplitudes, p: &ModeParams) -> Lines {
    let i = Complex64::i();
    let ez = m.z.exp();
    let w = p.omega;
    let terms: [[Complex64; 4]; 4] = [
        [i * p.a * ez * m.f1, i * p.b * ez * m.f2, m.df3, -2.0 * m.f3],
        [-w * m.f1, -m.df2, m.f2, i * p.b * ez * m.f3],
        [-w * m.f2, m.df1, -m.f1, -i * p.a * ez * m.f3],
        [
            -w * m.f3,
            -i * p.b * ez * m.f1,
            i * p.a * ez * m.f2,
            Complex64::new(0.0, 0.0),
        ],
    ];
    let scale = terms.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max);
    Lines {
        values: terms.map(|row| row.iter().sum()),
        scale,
    }
}

fn normalized(values: &[Complex64], scale: f64) -> f64 {
    let worst = values.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale > 0.0 {
        worst / scale
    } else {
        worst
    }
}

/// Largest residual of the four first-order equations relative to the
/// largest single term.
pub fn maxwell_residual_firstorder(m: &ModeAmplitudes, p: &ModeParams) -> f64 {
    let l = first_order_lines(m, p);
    normalized(&l.values, l.scale)
}

/// Defect of the identity `ω L₁ + iae^z L₂ + ibe^z L₃ + (d/dz − 2) L₄ = 0`
/// linking the first equation to the other three, relative to the largest
/// term. It vanishes for any stack, solution or not.
pub fn line_dependency_defect(m: &ModeAmplitudes, p: &ModeParams) -> f64 {
    let i = Complex64::i();
    let ez = m.z.exp();
    let w = p.omega;
    let l = first_order_lines(m, p);
    let dl4 = -w * m.df3 - i * p.b * ez * (m.f1 + m.df1) + i * p.a * ez * (m.f2 + m.df2);
    let v = w * l.values[0] + i * p.a * ez * l.values[1] + i * p.b * ez * l.values[2] + dl4
        - 2.0 * l.values[3];
    let scale = l.scale * (w + ez * (p.a.abs() + p.b.abs()) + 3.0);
    normalized(&[v], scale)
}

/// The matrix operator
/// `(−ω + iae^z α¹ + ibe^z α² + α³ d/dz − α¹s₂ + α²s₁)` applied to
/// `(0, f₁, f₂, f₃)`.
pub fn maxwell_operator(m: &ModeAmplitudes, p: &ModeParams) -> [Complex64; 4] {
    let mm = MaxwellMatrices::standard();
    let i = Complex64::i();
    let ez = m.z.exp();
    let zero = Complex64::new(0.0, 0.0);
    let psi = [zero, m.f1, m.f2, m.f3];
    let dpsi = [zero, m.df1, m.df2, m.df3];
    let a1 = apply(&mm.alpha1, &psi);
    let a2 = apply(&mm.alpha2, &psi);
    let a3 = apply(&mm.alpha3, &dpsi);
    let spin1 = apply(&mat_mul(&mm.alpha1, &mm.s2), &psi);
    let spin2 = apply(&mat_mul(&mm.alpha2, &mm.s1), &psi);
    let mut out = [zero; 4];
    for k in 0..4 {
        out[k] = -p.omega * psi[k] + i * p.a * ez * a1[k] + i * p.b * ez * a2[k] + a3[k] - spin1[k]
            + spin2[k];
    }
    out
}

/// Largest component of the matrix-operator output relative to the largest
/// first-order term.
pub fn maxwell_residual_matrix(m: &ModeAmplitudes, p: &ModeParams) -> f64 {
    let out = maxwell_operator(m, p);
    normalized(&out, first_order_lines(m, p).scale)
}

/// Profile stack of the `a = b = 0` plane wave `f = e^z (1, ±i, 0) e^{±iωz}`.
pub fn plane_wave_amplitudes(sign: i8, omega: f64, z: f64) -> Result<ModeAmplitudes> {
    let s = check_sign(sign)?;
    check_plane_omega(omega)?;
    let g = Complex64::from_polar(1.0, s * omega * z);
    let g2 = Complex64::new(0.0, s) * g;
    let ez = z.exp();
    let lift = Complex64::new(1.0, s * omega);
    let zero = Complex64::new(0.0, 0.0);
    Ok(ModeAmplitudes {
        z,
        G1: g,
        G2: g2,
        F1: g,
        F2: g2,
        f1: ez * g,
        f2: ez * g2,
        f3: zero,
        f3_reduced: zero,
        df1: lift * ez * g,
        df2: lift * ez * g2,
        df3: zero,
    })
}

fn check_sign(sign: i8) -> Result<f64> {
    match sign {
        1 => Ok(1.0),
        -1 => Ok(-1.0),
        _ => Err(Error::Domain(format!("sign must be +1 or -1, got {sign}"))),
    }
}

fn check_plane_omega(omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("omega = {omega} must be positive")))
    }
}

/// The `a = b = 0` solution: `E₁ + iB₁ = e^z(cos φ − i sin φ)`,
/// `E₂ + iB₂ = ±e^z(sin φ + i cos φ)`, `φ = ωt ∓ ωz`.
pub fn plane_wave_special(sign: i8, omega: f64, t: f64, z: f64) -> Result<FieldVector> {
    let s = check_sign(sign)?;
    check_plane_omega(omega)?;
    let phi = omega * t - s * omega * z;
    let ez = z.exp();
    let (sn, cs) = phi.sin_cos();
    Ok(FieldVector {
        c1: ez * Complex64::new(cs, -sn),
        c2: ez * s * Complex64::new(sn, cs),
        c3: Complex64::new(0.0, 0.0),
    })
}

/// Distance in `z` kept between a Heun-form grid point and the singular
/// point `Z = √ω/|a|`.
pub const HEUN_SINGULAR_MARGIN: f64 = 0.05;
const HEUN_STEP: f64 = 1e-3;

/// `F₁` along `z` for the Heun-form check.
fn big_f1(branch: BasisBranch, p: &ModeParams, z: f64) -> Result<Complex64> {
    let (g1, g2) = eval_G(branch, p, z)?;
    Ok(F_from_G(g1, g2, p)?.0)
}

/// Largest normalized residual of the second-order equation for `F₁` in
/// `Z = e^z/√ω`:
///
/// `F₁″ − (a²Z² + ω)/(Z(a²Z² − ω)) F₁′ + [ω²/Z² + 2abω/(a²Z² − ω) − κ²ω] F₁ = 0`.
///
/// Derivatives are central differences in `z` (step `10⁻³` and half of it)
/// combined by Richardson extrapolation.
pub fn heun_form_residual(branch: BasisBranch, p: &ModeParams, z_grid: &[f64]) -> Result<f64> {
    p.require_kappa()?;
    if p.a == 0.0 {
        return Err(Error::Domain(
            "the F₁ equation is singular for a = 0".into(),
        ));
    }
    let w = p.omega;
    let z_sing = (w / p.a.abs()).ln();
    if let Some(z) = z_grid
        .iter()
        .find(|z| (**z - z_sing).abs() < HEUN_SINGULAR_MARGIN)
    {
        return Err(Error::Domain(format!(
            "grid point z = {z} lies within {HEUN_SINGULAR_MARGIN} of the singular point z = {z_sing}"
        )));
    }
    let mut worst: f64 = 0.0;
    for &z in z_grid {
        let f = |dz: f64| big_f1(branch, p, z + dz);
        let f0 = f(0.0)?;
        let diff = |h: f64| -> Result<(Complex64, Complex64)> {
            let (fp, fm) = (f(h)?, f(-h)?);
            Ok(((fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)))
        };
        let (d1h, d2h) = diff(HEUN_STEP)?;
        let (d1q, d2q) = diff(0.5 * HEUN_STEP)?;
        let dz1 = (4.0 * d1q - d1h) / 3.0;
        let dz2 = (4.0 * d2q - d2h) / 3.0;
        let zz = z.exp() / w.sqrt();
        let d1 = dz1 / zz;
        let d2 = (dz2 - dz1) / (zz * zz);
        let a2z2 = p.a * p.a * zz * zz;
        let c1 = -(a2z2 + w) / (zz * (a2z2 - w));
        let c0 = w * w / (zz * zz) + 2.0 * p.a * p.b * w / (a2z2 - w) - p.kappa * p.kappa * w;
        let terms = [d2, c1 * d1, c0 * f0];
        let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
        let r = (terms[0] + terms[1] + terms[2]).norm();
        worst = worst.max(if scale > 0.0 { r / scale } else { r });
    }
    Ok(worst)
}
