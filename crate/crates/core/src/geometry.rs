//! Coordinate charts and effective-medium data of Lobachevsky space in the
//! quasi-Cartesian chart `dS² = dt² − e^{−2z}(dx² + dy²) − dz²`.
//!
//! Everything here works in units of the curvature radius (`ρ = 1`).

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `|z|` accepted before `e^{±z}` factors lose double precision range.
pub const MAX_ABS_Z: f64 = 300.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuasiCartesian {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Point on the unit hyperboloid `u0² − u1² − u2² − u3² = 1`, `u0 ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmbeddingPoint {
    pub u0: f64,
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
}

/// Point of the Poincaré ball `|q| < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoincarePoint {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

/// Diagonals of the relative permittivity and permeability tensors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MediumTensors {
    pub eps_diag: [f64; 3],
    pub mu_diag: [f64; 3],
}

impl MediumTensors {
    /// Diagonal of `μ⁻¹`, i.e. `(1, 1, e^{2z})`.
    pub fn inverse_mu_diag(&self) -> [f64; 3] {
        self.mu_diag.map(f64::recip)
    }
}

impl QuasiCartesian {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let p = Self { x, y, z };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        if !(self.x.is_finite() && self.y.is_finite() && self.z.is_finite()) {
            return Err(Error::Domain(format!("non-finite coordinates {self:?}")));
        }
        check_z(self.z)
    }
}

impl EmbeddingPoint {
    /// `u0² − |u|²`, equal to 1 on the hyperboloid.
    pub fn minkowski_norm(&self) -> f64 {
        // (u0 − u3)(u0 + u3) keeps precision when u0 ≈ u3 is large.
        (self.u0 - self.u3) * (self.u0 + self.u3) - self.u1 * self.u1 - self.u2 * self.u2
    }
}

impl PoincarePoint {
    pub fn norm_sqr(&self) -> f64 {
        self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3
    }
}

fn check_z(z: f64) -> Result<()> {
    if !z.is_finite() || z.abs() > MAX_ABS_Z {
        return Err(Error::Range(format!(
            "|z| = {} exceeds the supported bound {MAX_ABS_Z}",
            z.abs()
        )));
    }
    Ok(())
}

/// Maps quasi-Cartesian coordinates onto the hyperboloid.
pub fn to_embedding(p: QuasiCartesian) -> Result<EmbeddingPoint> {
    p.check()?;
    let (ez, emz) = (p.z.exp(), (-p.z).exp());
    let r2 = p.x * p.x + p.y * p.y;
    let u = EmbeddingPoint {
        u0: 0.5 * ((ez + emz) + r2 * emz),
        u1: p.x * emz,
        u2: p.y * emz,
        u3: 0.5 * ((ez - emz) + r2 * emz),
    };
    if ![u.u0, u.u1, u.u2, u.u3].iter().all(|v| v.is_finite()) {
        return Err(Error::Range(format!("embedding of {p:?} overflows")));
    }
    Ok(u)
}

/// Central projection `q_i = u_i / u0` into the unit ball.
pub fn embedding_to_poincare(u: EmbeddingPoint) -> Result<PoincarePoint> {
    if !(u.u0 >= 1.0) || !u.u0.is_finite() {
        return Err(Error::Domain(format!(
            "u0 = {} is not on the upper hyperboloid sheet",
            u.u0
        )));
    }
    Ok(PoincarePoint {
        q1: u.u1 / u.u0,
        q2: u.u2 / u.u0,
        q3: u.u3 / u.u0,
    })
}

/// Inverse chart: `x = q1/(1−q3)`, `y = q2/(1−q3)`, `e^z = √(1−q²)/(1−q3)`.
pub fn poincare_to_quasi(q: PoincarePoint) -> Result<QuasiCartesian> {
    if ![q.q1, q.q2, q.q3].iter().all(|v| v.is_finite()) {
        return Err(Error::Domain(format!("non-finite Poincaré point {q:?}")));
    }
    let one_minus_q3 = 1.0 - q.q3;
    if !(one_minus_q3 > 0.0) {
        return Err(Error::Domain(format!(
            "q3 = {} must be < 1 (q3 → 1 is the ideal boundary point)",
            q.q3
        )));
    }
    // 1 − q² = (1 − q3)(1 + q3) − q1² − q2², better conditioned near |q| → 1.
    let one_minus_q2 = one_minus_q3 * (1.0 + q.q3) - q.q1 * q.q1 - q.q2 * q.q2;
    if !(one_minus_q2 > 0.0) {
        return Err(Error::Domain(format!(
            "|q|² = {} must be < 1 (point outside the open ball)",
            q.norm_sqr()
        )));
    }
    let z = 0.5 * one_minus_q2.ln() - one_minus_q3.ln();
    QuasiCartesian::new(q.q1 / one_minus_q3, q.q2 / one_minus_q3, z)
}

/// Constitutive tensors `ε = μ = diag(1, 1, e^{−2z})` of the equivalent medium.
pub fn effective_tensors(z: f64) -> Result<MediumTensors> {
    let w = volume_weight(z)?;
    let diag = [1.0, 1.0, w];
    Ok(MediumTensors {
        eps_diag: diag,
        mu_diag: diag,
    })
}

/// `√(−g) = e^{−2z}`.
pub fn volume_weight(z: f64) -> Result<f64> {
    check_z(z)?;
    Ok((-2.0 * z).exp())
}

/// Field energy per coordinate volume `dx dy dz`: `½(|E|² + |B|²)e^{−2z}`.
pub fn energy_density(e: [f64; 3], b: [f64; 3], z: f64) -> Result<f64> {
    let sq = |v: [f64; 3]| v.iter().map(|c| c * c).sum::<f64>();
    Ok(0.5 * (sq(e) + sq(b)) * volume_weight(z)?)
}
