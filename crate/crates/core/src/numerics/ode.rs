use num_complex::Complex64;

use super::ToleranceSpec;
use crate::error::{Error, Result};

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// Fifth-order solution minus embedded fourth-order solution.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
// Continuous extension (Hairer & Wanner, dense output of order 4).
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

type State = [f64; 4];

/// Solution value `u` and derivative `u′` at one requested output point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdePoint {
    pub z: f64,
    pub u: Complex64,
    pub du: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationResult {
    /// One entry per requested output point, in the order requested.
    pub points: Vec<OdePoint>,
    /// State at the end of the span.
    pub end: OdePoint,
    pub accepted: usize,
    pub rejected: usize,
    /// Largest normalised local error estimate over accepted steps (≤ 1).
    pub max_error: f64,
}

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (c, k) in terms {
        if *c != 0.0 {
            for i in 0..4 {
                out[i] += h * c * k[i];
            }
        }
    }
    out
}

fn norm_inf(y: &State) -> f64 {
    y.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// Integrates the complex linear equation `u″ = (coeff(z) − omega2)·u` over
/// `span` with the embedded Dormand–Prince 5(4) pair.
///
/// The complex unknown is advanced as the real 4-vector `(Re u, Im u, Re u′,
/// Im u′)`. The local error of each step is measured against
/// `abs_tol + rel_tol·‖y‖∞`, so the control is relative to the size of the
/// solution; pass `abs_tol = 0` when the solution spans many decades.
/// Values at `outputs` come from the continuous extension. `span` may run in
/// either direction; every output point must lie inside it.
pub fn integrate_linear_ode2<F: Fn(f64) -> f64>(
    coeff: F,
    omega2: f64,
    span: (f64, f64),
    init: (Complex64, Complex64),
    tol: &ToleranceSpec,
    outputs: &[f64],
) -> Result<IntegrationResult> {
    let (z0, z1) = span;
    if !z0.is_finite() || !z1.is_finite() {
        return Err(Error::Domain("integration span must be finite".into()));
    }
    let dir = if z1 >= z0 { 1.0 } else { -1.0 };
    let (lo, hi) = (z0.min(z1), z0.max(z1));
    if let Some(bad) = outputs.iter().find(|z| !(**z >= lo && **z <= hi)) {
        return Err(Error::Domain(format!(
            "output point {bad} lies outside the span [{lo}, {hi}]"
        )));
    }
    let rhs = |z: f64, y: &State| -> State {
        let q = coeff(z) - omega2;
        [y[2], y[3], q * y[0], q * y[1]]
    };
    let pack = |z: f64, y: &State| OdePoint {
        z,
        u: Complex64::new(y[0], y[1]),
        du: Complex64::new(y[2], y[3]),
    };

    let mut order: Vec<usize> = (0..outputs.len()).collect();
    order.sort_by(|&i, &j| (dir * outputs[i]).total_cmp(&(dir * outputs[j])));
    let mut results: Vec<Option<OdePoint>> = vec![None; outputs.len()];
    let mut next_out = 0;

    let mut z = z0;
    let mut y: State = [init.0.re, init.0.im, init.1.re, init.1.im];
    while next_out < order.len() && outputs[order[next_out]] == z0 {
        results[order[next_out]] = Some(pack(z0, &y));
        next_out += 1;
    }

    let length = hi - lo;
    let rate = (coeff(z0) - omega2).abs().sqrt().max(1e-3);
    let mut h = dir * (0.01 / rate).min(length).max(f64::MIN_POSITIVE);
    let mut k1 = rhs(z, &y);
    let (mut accepted, mut rejected) = (0usize, 0usize);
    let mut max_error = 0.0_f64;
    let mut err_prev = 1e-4_f64;

    while dir * (z1 - z) > 0.0 {
        if accepted + rejected >= tol.max_steps {
            return Err(Error::Accuracy {
                what: format!("step limit {} exhausted at z = {z}", tol.max_steps),
                estimate: norm_inf(&y),
                error: max_error,
            });
        }
        if dir * (z + h - z1) > 0.0 {
            h = z1 - z;
        }
        if h.abs() < 1e-14 * z.abs().max(1.0) && dir * (z1 - z) > h.abs() {
            return Err(Error::Accuracy {
                what: format!("step size underflow at z = {z}"),
                estimate: norm_inf(&y),
                error: max_error,
            });
        }

        let k2 = rhs(z + C[1] * h, &axpy(&y, h, &[(A[1][0], &k1)]));
        let k3 = rhs(
            z + C[2] * h,
            &axpy(&y, h, &[(A[2][0], &k1), (A[2][1], &k2)]),
        );
        let k4 = rhs(
            z + C[3] * h,
            &axpy(&y, h, &[(A[3][0], &k1), (A[3][1], &k2), (A[3][2], &k3)]),
        );
        let k5 = rhs(
            z + C[4] * h,
            &axpy(
                &y,
                h,
                &[
                    (A[4][0], &k1),
                    (A[4][1], &k2),
                    (A[4][2], &k3),
                    (A[4][3], &k4),
                ],
            ),
        );
        let k6 = rhs(
            z + h,
            &axpy(
                &y,
                h,
                &[
                    (A[5][0], &k1),
                    (A[5][1], &k2),
                    (A[5][2], &k3),
                    (A[5][3], &k4),
                    (A[5][4], &k5),
                ],
            ),
        );
        let y_new = axpy(
            &y,
            h,
            &[
                (A[6][0], &k1),
                (A[6][2], &k3),
                (A[6][3], &k4),
                (A[6][4], &k5),
                (A[6][5], &k6),
            ],
        );
        let k7 = rhs(z + h, &y_new);

        let scale = tol.abs_tol + tol.rel_tol * norm_inf(&y).max(norm_inf(&y_new));
        let ks = [&k1, &k2, &k3, &k4, &k5, &k6, &k7];
        let mut err = 0.0_f64;
        for i in 0..4 {
            let e: f64 = ks.iter().zip(E.iter()).map(|(k, e)| e * k[i]).sum::<f64>() * h;
            err = err.max((e / scale).abs());
        }
        if !err.is_finite() {
            h *= 0.2;
            rejected += 1;
            continue;
        }

        if err <= 1.0 {
            accepted += 1;
            max_error = max_error.max(err);
            let z_new = z + h;
            // Dense output for every requested point inside (z, z_new].
            while next_out < order.len() && dir * (outputs[order[next_out]] - z_new) <= 0.0 {
                let zo = outputs[order[next_out]];
                let theta = (zo - z) / h;
                let mut cont = [[0.0; 4]; 5];
                for i in 0..4 {
                    let dy = y_new[i] - y[i];
                    let bspl = h * k1[i] - dy;
                    cont[0][i] = y[i];
                    cont[1][i] = dy;
                    cont[2][i] = bspl;
                    cont[3][i] = dy - h * k7[i] - bspl;
                    cont[4][i] = h * ks.iter().zip(D.iter()).map(|(k, d)| d * k[i]).sum::<f64>();
                }
                let t1 = 1.0 - theta;
                let mut yo = [0.0; 4];
                for i in 0..4 {
                    yo[i] = cont[0][i]
                        + theta
                            * (cont[1][i]
                                + t1 * (cont[2][i] + theta * (cont[3][i] + t1 * cont[4][i])));
                }
                results[order[next_out]] = Some(pack(zo, &yo));
                next_out += 1;
            }
            z = if dir * (z1 - z_new) <= 0.0 { z1 } else { z_new };
            y = y_new;
            k1 = k7;
            // PI step-size control.
            let fac = 0.9 * err.max(1e-10).powf(-0.17) * err_prev.powf(0.04);
            h *= fac.clamp(0.2, 10.0);
            err_prev = err.max(1e-4);
        } else {
            rejected += 1;
            h *= (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
        }
    }

    let points = results
        .into_iter()
        .map(|p| p.expect("every output point lies inside the span"))
        .collect();
    Ok(IntegrationResult {
        points,
        end: pack(z1, &y),
        accepted,
        rejected,
        max_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cosine_full_period() {
        let tol = ToleranceSpec::new(1e-12, 0.0, 100_000).unwrap();
        let r = integrate_linear_ode2(
            |_| 0.0,
            1.0,
            (0.0, 2.0 * PI),
            (c(1.0, 0.0), c(0.0, 0.0)),
            &tol,
            &[],
        )
        .unwrap();
        assert!((r.end.u - c(1.0, 0.0)).norm() < 1e-10, "{:?}", r.end.u);
        assert!(r.max_error <= 1.0);
    }

    #[test]
    fn dense_output_matches_exact_solution() {
        let tol = ToleranceSpec::new(1e-12, 0.0, 100_000).unwrap();
        let outs: Vec<f64> = (0..50).map(|i| 0.123 * i as f64).collect();
        let r = integrate_linear_ode2(
            |_| 0.0,
            4.0,
            (0.0, 6.1),
            (c(0.0, 0.0), c(2.0, 0.0)),
            &tol,
            &outs,
        )
        .unwrap();
        for p in &r.points {
            assert!((p.u.re - (2.0 * p.z).sin()).abs() < 1e-9, "z={}", p.z);
            assert!((p.du.re - 2.0 * (2.0 * p.z).cos()).abs() < 1e-9);
        }
    }

    #[test]
    fn backward_integration_and_output_order() {
        let tol = ToleranceSpec::new(1e-11, 0.0, 100_000).unwrap();
        let outs = [-1.0, -3.0, -2.0];
        let r = integrate_linear_ode2(
            |_| 1.0,
            0.0,
            (0.0, -3.0),
            (c(1.0, 0.0), c(1.0, 0.0)),
            &tol,
            &outs,
        )
        .unwrap();
        for (p, z) in r.points.iter().zip(outs) {
            assert_eq!(p.z, z);
            assert!((p.u.re - z.exp()).abs() < 1e-10 * z.exp().max(1.0));
        }
    }

    #[test]
    fn output_outside_span_is_rejected() {
        let tol = ToleranceSpec::default();
        let err = integrate_linear_ode2(
            |_| 0.0,
            1.0,
            (0.0, 1.0),
            (c(1.0, 0.0), c(0.0, 0.0)),
            &tol,
            &[2.0],
        );
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn step_exhaustion_is_reported() {
        let tol = ToleranceSpec::new(1e-12, 0.0, 10).unwrap();
        let err = integrate_linear_ode2(
            |_| 0.0,
            100.0,
            (0.0, 50.0),
            (c(1.0, 0.0), c(0.0, 0.0)),
            &tol,
            &[],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Accuracy { .. }));
    }
}
