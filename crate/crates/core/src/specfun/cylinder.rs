//! The six cylinder-function bases `J_{±iω}`, `H⁽¹⁾_{iω}`, `H⁽²⁾_{iω}`,
//! `N_{±iω}` at `x = iX`, with derivatives from the order recurrences.
//!
//! With `D = x d/dx` (equal to `d/dz` when `x = iκe^z`):
//!
//! * `D C_ν = ν C_ν − x C_{ν+1}` and `D C_ν = −ν C_ν + x C_{ν−1}`,
//! * `D² C_ν = ν² C_ν − (2ν + 2d) x C_{ν+d} + x² C_{ν+2d}` for `d = ±1`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bessel::{bessel_i, bessel_k, cos_pi, sin_pi};
use super::{ImagOrder, SpecialValue};
use crate::error::{Error, Result};

/// Which fundamental solution `G₁` is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisBranch {
    BesselPlus,
    BesselMinus,
    Hankel1,
    Hankel2,
    NeumannPlus,
    NeumannMinus,
}

/// Cylinder-function family, independent of the sign of the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    J,
    H1,
    H2,
    N,
}

impl BasisBranch {
    pub const ALL: [BasisBranch; 6] = [
        BasisBranch::BesselPlus,
        BasisBranch::BesselMinus,
        BasisBranch::Hankel1,
        BasisBranch::Hankel2,
        BasisBranch::NeumannPlus,
        BasisBranch::NeumannMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BasisBranch::BesselPlus => "BesselPlus",
            BasisBranch::BesselMinus => "BesselMinus",
            BasisBranch::Hankel1 => "Hankel1",
            BasisBranch::Hankel2 => "Hankel2",
            BasisBranch::NeumannPlus => "NeumannPlus",
            BasisBranch::NeumannMinus => "NeumannMinus",
        }
    }

    pub fn family(self) -> Family {
        match self {
            BasisBranch::BesselPlus | BasisBranch::BesselMinus => Family::J,
            BasisBranch::Hankel1 => Family::H1,
            BasisBranch::Hankel2 => Family::H2,
            BasisBranch::NeumannPlus | BasisBranch::NeumannMinus => Family::N,
        }
    }

    /// `+1` for order `+iω`, `−1` for order `−iω`.
    pub fn order_sign(self) -> i32 {
        match self {
            BasisBranch::BesselMinus | BasisBranch::NeumannMinus => -1,
            _ => 1,
        }
    }
}

impl fmt::Display for BasisBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisBranch {
    type Err = Error;

    /// Case-insensitive; dashes and underscores are ignored, so `hankel1`,
    /// `bessel-plus` and `NeumannMinus` all parse.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .flat_map(char::to_lowercase)
            .collect();
        BasisBranch::ALL
            .into_iter()
            .find(|b| b.name().to_lowercase() == key)
            .ok_or_else(|| Error::Domain(format!("unknown basis branch '{s}'")))
    }
}

/// `i^m` without rounding.
fn i_pow(m: i32) -> Complex64 {
    match m.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `C_ν(iX)` for order `ν = m + iy` with integer `m`.
pub fn cylinder(family: Family, m: i32, y: f64, x: f64) -> Result<SpecialValue> {
    let nu = Complex64::new(m as f64, y);
    match family {
        Family::J => {
            // J_ν(iX) = e^{iπν/2} I_ν(X)
            let phase = i_pow(m) * (-0.5 * PI * y).exp();
            let i = bessel_i(nu, x)?;
            Ok(SpecialValue {
                value: phase * i.value,
                abs_err_estimate: phase.norm() * i.abs_err_estimate,
            })
        }
        Family::H1 => {
            // H⁽¹⁾_ν(iX) = (2/(πi)) e^{−iπν/2} K_ν(X)
            let phase = Complex64::new(0.0, -2.0 / PI) * i_pow(-m) * (0.5 * PI * y).exp();
            let k = bessel_k(nu, x)?;
            Ok(SpecialValue {
                value: phase * k.value,
                abs_err_estimate: phase.norm() * k.abs_err_estimate,
            })
        }
        Family::H2 => {
            let j = cylinder(Family::J, m, y, x)?;
            let h = cylinder(Family::H1, m, y, x)?;
            Ok(SpecialValue {
                value: 2.0 * j.value - h.value,
                abs_err_estimate: 2.0 * j.abs_err_estimate + h.abs_err_estimate,
            })
        }
        Family::N => {
            if y == 0.0 {
                return Err(Error::Domain(
                    "Neumann form needs a non-integer order".into(),
                ));
            }
            // N_ν = (cos νπ J_ν − J_{−ν}) / sin νπ
            let jp = cylinder(Family::J, m, y, x)?;
            let jm = cylinder(Family::J, -m, -y, x)?;
            let (c, s) = (cos_pi(nu), sin_pi(nu));
            Ok(SpecialValue {
                value: (c * jp.value - jm.value) / s,
                abs_err_estimate: (c.norm() * jp.abs_err_estimate + jm.abs_err_estimate) / s.norm(),
            })
        }
    }
}

/// `G₁ = C_{±iω}(iX)` for the given branch.
pub fn basis_g1(branch: BasisBranch, omega: f64, x: f64) -> Result<SpecialValue> {
    let o = ImagOrder::new(omega)?;
    cylinder(
        branch.family(),
        0,
        branch.order_sign() as f64 * o.omega(),
        x,
    )
}

/// A basis function with its first two logarithmic derivatives in `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasisJet {
    /// `C(x)`.
    pub value: Complex64,
    /// `x dC/dx`, equal to `dC/dz`.
    pub d1: Complex64,
    /// `(x d/dx)² C`, equal to `d²C/dz²`.
    pub d2: Complex64,
    /// Propagated absolute error bound on `value`, `d1` and `d2`.
    pub abs_err_estimate: f64,
}

/// Evaluates `C`, `x C'` and `(x d/dx)² C` from orders `ν`, `ν ± 1`, `ν ± 2`.
pub fn basis_jet(branch: BasisBranch, omega: f64, x: f64) -> Result<BasisJet> {
    let o = ImagOrder::new(omega)?;
    let d = branch.order_sign();
    let y = d as f64 * o.omega();
    let fam = branch.family();
    let c0 = cylinder(fam, 0, y, x)?;
    let c1 = cylinder(fam, d, y, x)?;
    let c2 = cylinder(fam, 2 * d, y, x)?;
    let nu = Complex64::new(0.0, y);
    let xi = Complex64::new(0.0, x);
    let df = d as f64;
    let d1 = df * (nu * c0.value - xi * c1.value);
    let d2 = nu * nu * c0.value - (2.0 * nu + 2.0 * df) * xi * c1.value + xi * xi * c2.value;
    let abs_err_estimate = (1.0 + o.omega()).powi(2) * c0.abs_err_estimate
        + (2.0 * o.omega() + 2.0 + 1.0) * x * c1.abs_err_estimate
        + x * x * c2.abs_err_estimate;
    Ok(BasisJet {
        value: c0.value,
        d1,
        d2,
        abs_err_estimate,
    })
}

/// `x dG₁/dx` at `x = iX` through the order-shift recurrence.
pub fn recurrence_shift(branch: BasisBranch, omega: f64, x: f64) -> Result<SpecialValue> {
    let o = ImagOrder::new(omega)?;
    let d = branch.order_sign();
    let y = d as f64 * o.omega();
    let c0 = cylinder(branch.family(), 0, y, x)?;
    let c1 = cylinder(branch.family(), d, y, x)?;
    let nu = Complex64::new(0.0, y);
    let xi = Complex64::new(0.0, x);
    Ok(SpecialValue {
        value: d as f64 * (nu * c0.value - xi * c1.value),
        abs_err_estimate: o.omega() * c0.abs_err_estimate + x * c1.abs_err_estimate,
    })
}

/// Residual `|G″ + G′/x + (1 + ω²/x²) G|` of Bessel's equation of order `iω`
/// at `x = iX`, using recurrence derivatives.
pub fn bessel_ode_residual(branch: BasisBranch, omega: f64, x: f64) -> Result<f64> {
    let j = basis_jet(branch, omega, x)?;
    // x²G″ + xG′ = D²G, and x² = −X².
    let x2 = -x * x;
    Ok(((j.d2 + (x2 + omega * omega) * j.value) / x2).norm())
}
