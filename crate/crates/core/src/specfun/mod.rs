//! Special functions of imaginary order evaluated on the imaginary axis.
//!
//! Every cylinder function `C_ν(x)` at `x = iX` (`X > 0`) is reduced to the
//! real-argument kernels `I_ν(X)` and `K_ν(X)` with the branch `x = e^{iπ/2}X`.

mod bessel;
mod cylinder;
mod gamma;

use num_complex::Complex64;
use serde::Serialize;

pub use bessel::{
    bessel_i, bessel_i_imag, bessel_i_series, bessel_k, bessel_k_cf_pair, bessel_k_expansion,
    bessel_k_imag, bessel_k_large_arg, bessel_k_quad, bessel_k_series, MAX_ARG,
};
pub use cylinder::{
    basis_g1, basis_jet, bessel_ode_residual, cylinder, recurrence_shift, BasisBranch, BasisJet,
    Family,
};
pub use gamma::{gamma, gamma_modulus_sq, ln_gamma};

/// Largest frequency `ω` accepted for the order `iω`.
pub const MAX_OMEGA: f64 = 50.0;

/// A function value together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialValue {
    pub value: Complex64,
    pub abs_err_estimate: f64,
}

/// The order `iω` with `0 < ω ≤ 50`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImagOrder {
    omega: f64,
}

impl ImagOrder {
    pub fn new(omega: f64) -> crate::Result<Self> {
        if omega > 0.0 && omega <= MAX_OMEGA {
            Ok(Self { omega })
        } else {
            Err(crate::Error::Range(format!(
                "omega = {omega} outside the supported range (0, {MAX_OMEGA}]"
            )))
        }
    }

    pub fn omega(self) -> f64 {
        self.omega
    }

    /// The complex order `iω`.
    pub fn nu(self) -> Complex64 {
        Complex64::new(0.0, self.omega)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn imag_order_range() {
        assert!(ImagOrder::new(0.0).is_err());
        assert!(ImagOrder::new(50.5).is_err());
        assert!(ImagOrder::new(f64::NAN).is_err());
        assert_eq!(
            ImagOrder::new(50.0).unwrap().nu(),
            Complex64::new(0.0, 50.0)
        );
    }
}
