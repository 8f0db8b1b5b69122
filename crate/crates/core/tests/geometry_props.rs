use lobwave::geometry::{
    effective_tensors, embedding_to_poincare, energy_density, poincare_to_quasi, to_embedding,
    volume_weight, PoincarePoint, QuasiCartesian,
};
use proptest::prelude::*;

fn quasi() -> impl Strategy<Value = QuasiCartesian> {
    (-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64).prop_map(|(x, y, z)| QuasiCartesian { x, y, z })
}

proptest! {
    #[test]
    fn hyperboloid_constraint_holds(p in quasi()) {
        let u = to_embedding(p).unwrap();
        prop_assert!(u.u0 >= 1.0);
        prop_assert!((u.minkowski_norm() - 1.0).abs() <= 1e-12 * u.u0 * u.u0);
    }

    #[test]
    fn projection_lands_inside_the_ball(p in quasi()) {
        let q = embedding_to_poincare(to_embedding(p).unwrap()).unwrap();
        prop_assert!(q.norm_sqr() < 1.0);
    }

    #[test]
    fn round_trip_recovers_the_transverse_coordinates(p in quasi()) {
        let back = poincare_to_quasi(embedding_to_poincare(to_embedding(p).unwrap()).unwrap()).unwrap();
        prop_assert!((back.x - p.x).abs() < 1e-10);
        prop_assert!((back.y - p.y).abs() < 1e-10);
    }

    // The depth coordinate is recovered to a bound set by the spacing of
    // doubles near the ball boundary: one ulp of q moves z by about
    // ε/(1 − |q|²) = ε·u0².
    #[test]
    fn round_trip_depth_is_limited_by_ball_resolution(p in quasi()) {
        let u = to_embedding(p).unwrap();
        let back = poincare_to_quasi(embedding_to_poincare(u).unwrap()).unwrap();
        prop_assert!((back.z - p.z).abs() <= 8.0 * f64::EPSILON * u.u0 * u.u0 + 1e-14);
    }

    #[test]
    fn medium_tensors_coincide_bitwise(z in -300.0..300.0f64) {
        let m = effective_tensors(z).unwrap();
        prop_assert_eq!(m.eps_diag.map(f64::to_bits), m.mu_diag.map(f64::to_bits));
        prop_assert_eq!(m.eps_diag[0], 1.0);
        prop_assert_eq!(m.eps_diag[1], 1.0);
        let inv = m.inverse_mu_diag();
        prop_assert!((inv[2] * m.mu_diag[2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn energy_density_scales_with_the_volume_weight(
        e in prop::array::uniform3(-3.0..3.0f64),
        b in prop::array::uniform3(-3.0..3.0f64),
        z in -5.0..5.0f64,
    ) {
        let flat = energy_density(e, b, 0.0).unwrap();
        let w = energy_density(e, b, z).unwrap();
        prop_assert!((w - flat * volume_weight(z).unwrap()).abs() <= 1e-14 * w.abs().max(1e-300));
    }
}

#[test]
fn axis_depth_is_monotone_in_q3() {
    let mut last = f64::NEG_INFINITY;
    for k in 1..200 {
        let q3 = -1.0 + k as f64 / 100.0;
        let z = poincare_to_quasi(PoincarePoint {
            q1: 0.0,
            q2: 0.0,
            q3,
        })
        .unwrap()
        .z;
        assert!(z > last, "q3 = {q3}");
        assert!((z - q3.atanh()).abs() < 1e-12 * (1.0 + z.abs()));
        last = z;
    }
}

#[test]
fn deep_axis_points_approach_the_poles() {
    let up =
        embedding_to_poincare(to_embedding(QuasiCartesian::new(0.0, 0.0, 20.0).unwrap()).unwrap())
            .unwrap();
    let down =
        embedding_to_poincare(to_embedding(QuasiCartesian::new(0.0, 0.0, -20.0).unwrap()).unwrap())
            .unwrap();
    assert!(1.0 - up.q3 < 1e-15);
    assert!(1.0 + down.q3 < 1e-15);
}
