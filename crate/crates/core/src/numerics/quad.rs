use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::ToleranceSpec;
use crate::error::{Error, Result};

// Gauss–Kronrod 7/15 abscissae and weights on [-1, 1] (positive half, centre first).
const XGK: [f64; 8] = [
    0.0,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.991_455_371_120_812_639_206_854_697_526_329,
];
const WGK: [f64; 8] = [
    0.209_482_141_084_727_828_012_999_174_891_714,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.022_935_322_010_529_224_963_732_008_058_970,
];
// Gauss weights for XGK[0], XGK[2], XGK[4], XGK[6].
const WG: [f64; 4] = [
    0.417_959_183_673_469_387_755_102_040_816_327,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.129_484_966_168_869_693_270_611_432_679_082,
];

/// Values that can be integrated: real or complex.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Outcome of an adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T = f64> {
    pub value: T,
    /// Estimated absolute error of `value`.
    pub abs_err: f64,
    /// Integral of `|f|`, the scale against which roundoff is judged.
    pub abs_integral: f64,
    pub evaluations: usize,
    pub intervals: usize,
}

#[derive(Clone, Copy)]
struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
    abs: f64,
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut e = err.abs();
    if res_asc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / res_asc).powf(1.5);
        e = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * res_abs);
    }
    e
}

fn gk15<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> Segment<T> {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[0];
    let mut gauss = fc * WG[0];
    let mut res_abs = WGK[0] * fc.magnitude();
    let mut lo = [T::zero(); 8];
    let mut hi = [T::zero(); 8];
    for j in 1..8 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        lo[j] = f1;
        hi[j] = f2;
        kronrod = kronrod + (f1 + f2) * WGK[j];
        res_abs += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 0 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut res_asc = WGK[0] * (fc - mean).magnitude();
    for j in 1..8 {
        res_asc += WGK[j] * ((lo[j] - mean).magnitude() + (hi[j] - mean).magnitude());
    }
    let scale = half.abs();
    let err = rescale_error(
        ((kronrod - gauss) * half).magnitude(),
        res_abs * scale,
        res_asc * scale,
    );
    Segment {
        a,
        b,
        value: kronrod * half,
        err,
        abs: res_abs * scale,
    }
}

fn adaptive<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    breaks: &[f64],
    tol: &ToleranceSpec,
) -> Result<QuadResult<T>> {
    if breaks.len() < 2 || breaks.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("quadrature interval must be finite".into()));
    }
    let mut segs: Vec<Segment<T>> = breaks
        .windows(2)
        .map(|w| gk15(&mut f, w[0], w[1]))
        .collect();
    let mut evaluations = 15 * segs.len();
    loop {
        let value = segs.iter().fold(T::zero(), |s, g| s + g.value);
        let err: f64 = segs.iter().map(|g| g.err).sum();
        let abs: f64 = segs.iter().map(|g| g.abs).sum();
        let done = err <= tol.bound(value.magnitude())
            // Roundoff floor: cancellation in the integrand limits what any
            // further subdivision can achieve.
            || err <= 100.0 * f64::EPSILON * abs;
        if done {
            return Ok(QuadResult {
                value,
                abs_err: err,
                abs_integral: abs,
                evaluations,
                intervals: segs.len(),
            });
        }
        if segs.len() >= tol.max_steps {
            return Err(Error::Accuracy {
                what: format!("quadrature subdivision limit {} reached", tol.max_steps),
                estimate: value.magnitude(),
                error: err,
            });
        }
        let (worst, _) = segs
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, g)| {
                if g.err > best.1 {
                    (i, g.err)
                } else {
                    best
                }
            });
        let seg = segs.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a.min(seg.b) || mid >= seg.a.max(seg.b) {
            return Err(Error::Accuracy {
                what: "quadrature interval cannot be bisected further".into(),
                estimate: value.magnitude(),
                error: err,
            });
        }
        segs.push(gk15(&mut f, seg.a, mid));
        segs.push(gk15(&mut f, mid, seg.b));
        evaluations += 30;
    }
}

/// Adaptive Gauss–Kronrod (7/15) quadrature over `[a, b]`, optionally split at
/// interior break points.
///
/// Converges when the summed error estimate drops below
/// `max(abs_tol, rel_tol·|I|)`, or to the roundoff floor `100ε∫|f|` when the
/// integrand cancels; `max_steps` caps the number of subintervals.
pub fn quad_adaptive<T: QuadValue, F: FnMut(f64) -> T>(
    f: F,
    breaks: &[f64],
    tol: &ToleranceSpec,
) -> Result<QuadResult<T>> {
    adaptive(f, breaks, tol)
}

/// Quadrature over `[a, ∞)` through the map `t = a − ln(1 − s)`.
///
/// The mapped range is truncated where the integrand falls below `1e-18` of
/// its sampled peak. `f` must decay monotonically beyond its peak region.
pub fn quad_semi_infinite<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    tol: &ToleranceSpec,
) -> Result<QuadResult<T>> {
    if !a.is_finite() {
        return Err(Error::Domain("lower limit must be finite".into()));
    }
    let mut peak = f(a).magnitude();
    let mut span = 0.125;
    let mut below = 0;
    loop {
        let v = f(a + span).magnitude();
        peak = peak.max(v);
        if v <= 1e-18 * peak {
            below += 1;
            if below == 2 {
                break;
            }
        } else {
            below = 0;
        }
        span *= 2.0;
        if span > 1e6 {
            return Err(Error::Accuracy {
                what: "integrand does not decay on [a, a + 1e6]".into(),
                estimate: peak,
                error: f64::INFINITY,
            });
        }
    }
    let s_max = -(-span).exp_m1();
    let pieces = 8;
    let breaks: Vec<f64> = (0..=pieces)
        .map(|i| s_max * i as f64 / pieces as f64)
        .collect();
    adaptive(
        |s: f64| {
            let one_minus = 1.0 - s;
            f(a - (-s).ln_1p()) * (1.0 / one_minus)
        },
        &breaks,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tight() -> ToleranceSpec {
        ToleranceSpec::new(1e-14, 0.0, 2000).unwrap()
    }

    #[test]
    fn kronrod_rule_is_exact_for_degree_22() {
        // Single panel, no adaptivity: monomials up to x^22 on [-1, 1].
        for p in 0..=22 {
            let seg = gk15(&mut |x: f64| x.powi(p), -1.0, 1.0);
            let exact = if p % 2 == 1 {
                0.0
            } else {
                2.0 / (p as f64 + 1.0)
            };
            assert!((seg.value - exact).abs() < 1e-14, "p={p}");
        }
    }

    #[test]
    fn gauss_weights_integrate_degree_13() {
        let mut g = WG[0] * 0.0_f64.powi(12);
        for (k, w) in WG.iter().enumerate().skip(1) {
            g += 2.0 * w * XGK[2 * k].powi(12);
        }
        assert!((g - 2.0 / 13.0).abs() < 1e-14);
    }

    #[test]
    fn exponential_tail() {
        let r = quad_semi_infinite(|t: f64| (-t).exp(), 0.0, &tight()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12, "{}", r.value);
    }

    #[test]
    fn complex_integrand() {
        let r = quad_adaptive(
            |t: f64| Complex64::new(t.cos(), t.sin()),
            &[0.0, std::f64::consts::PI],
            &tight(),
        )
        .unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn subdivision_limit_is_an_accuracy_error() {
        let tol = ToleranceSpec::new(1e-14, 0.0, 2).unwrap();
        let err = quad_adaptive(|t: f64| (50.0 * t).sin().abs(), &[0.0, 10.0], &tol).unwrap_err();
        assert!(matches!(err, Error::Accuracy { .. }));
    }

    #[test]
    fn rejects_infinite_limits() {
        assert!(quad_adaptive(|t: f64| t, &[0.0, f64::INFINITY], &tight()).is_err());
    }
}
