use num_complex::Complex64;

use crate::error::{Error, Result};

/// Least-squares decomposition `G(z) ≈ c₊ e^{iωz} + c₋ e^{−iωz}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoWaveFit {
    pub c_plus: Complex64,
    pub c_minus: Complex64,
    /// Largest absolute residual over the samples.
    pub residual: f64,
    /// 2-norm condition number of the design matrix.
    pub condition: f64,
}

const MAX_CONDITION: f64 = 1e8;

/// Fits two counter-propagating plane waves to `(z, G)` samples by a
/// modified Gram–Schmidt QR factorisation of the
/// two-column design matrix.
pub fn lsq_fit_two_waves(samples: &[(f64, Complex64)], omega: f64) -> Result<TwoWaveFit> {
    if samples.len() < 4 {
        return Err(Error::Conditioning(format!(
            "{} samples cannot determine two waves (need at least 4)",
            samples.len()
        )));
    }
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!("omega = {omega} must be positive")));
    }
    let plus: Vec<Complex64> = samples
        .iter()
        .map(|(z, _)| Complex64::from_polar(1.0, omega * z))
        .collect();
    let minus: Vec<Complex64> = plus.iter().map(|p| p.conj()).collect();

    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    };
    let norm = |a: &[Complex64]| a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();

    let r11 = norm(&plus);
    let q1: Vec<Complex64> = plus.iter().map(|p| p / r11).collect();
    let r12 = dot(&q1, &minus);
    let v: Vec<Complex64> = minus.iter().zip(&q1).map(|(m, q)| m - r12 * q).collect();
    let r22 = norm(&v);

    // Singular values of R = [[r11, r12], [0, r22]].
    let fro2 = r11 * r11 + r12.norm_sqr() + r22 * r22;
    let det = r11 * r22;
    let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
    let s_max = ((fro2 + disc) / 2.0).sqrt();
    let s_min = if s_max > 0.0 { det / s_max } else { 0.0 };
    let condition = if s_min > 0.0 {
        s_max / s_min
    } else {
        f64::INFINITY
    };
    if !(condition < MAX_CONDITION) {
        return Err(Error::Conditioning(format!(
            "design matrix condition number {condition:e} exceeds {MAX_CONDITION:e}"
        )));
    }

    let q2: Vec<Complex64> = v.iter().map(|x| x / r22).collect();
    let g: Vec<Complex64> = samples.iter().map(|(_, g)| *g).collect();
    let c_minus = dot(&q2, &g) / r22;
    let c_plus = (dot(&q1, &g) - r12 * c_minus) / r11;

    let residual = samples
        .iter()
        .zip(plus.iter().zip(&minus))
        .map(|((_, g), (p, m))| (g - c_plus * p - c_minus * m).norm())
        .fold(0.0, f64::max);

    Ok(TwoWaveFit {
        c_plus,
        c_minus,
        residual,
        condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples(omega: f64, cp: Complex64, cm: Complex64) -> Vec<(f64, Complex64)> {
        (0..32)
            .map(|k| {
                let z = -8.0 + 0.1 * k as f64;
                let i = Complex64::i();
                (z, cp * (i * omega * z).exp() + cm * (-i * omega * z).exp())
            })
            .collect()
    }

    #[test]
    fn exact_two_wave_recovery() {
        let cp = Complex64::new(1.5, -0.25);
        let cm = Complex64::new(-0.5, 2.0);
        let fit = lsq_fit_two_waves(&samples(2.0, cp, cm), 2.0).unwrap();
        assert!((fit.c_plus - cp).norm() < 1e-12);
        assert!((fit.c_minus - cm).norm() < 1e-12);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn too_few_samples() {
        let s = vec![(0.0, Complex64::new(1.0, 0.0))];
        assert!(matches!(
            lsq_fit_two_waves(&s, 1.0),
            Err(Error::Conditioning(_))
        ));
    }

    #[test]
    fn coincident_samples_are_singular() {
        let s = vec![(0.5, Complex64::new(1.0, 0.0)); 6];
        assert!(matches!(
            lsq_fit_two_waves(&s, 1.0),
            Err(Error::Conditioning(_))
        ));
    }
}
