//! Turning-point depth of a mode, in curvature units and in metres.

use lobwave::modes::ModeParams;
use lobwave::scattering::{envelope_crossing, penetration_depth, turning_point};

fn main() -> lobwave::Result<()> {
    println!("  ω     κ      z0 = ln(ω/κ)   1/e envelope crossing");
    for (w, k) in [
        (2.0, 1.0),
        (5.0, 1.0),
        (10.0, 1.0),
        (10.0, 3.0),
        (20.0, 1.0),
    ] {
        let p = ModeParams::new(w, k, 0.0)?;
        println!(
            "{w:5.1} {k:5.1}   {:12.6}   {:12.6}",
            turning_point(&p)?.z0,
            envelope_crossing(&p)?
        );
    }
    let c = 299_792_458.0;
    let omega = 2.0 * std::f64::consts::PI * 1e9;
    for rho in [1.0, 10.0, 1e3] {
        println!(
            "f = 1 GHz, k1 = k2 = 1/m, ρ = {rho:6} m: z0 = {:.6} m",
            penetration_depth(omega, 1.0, 1.0, rho, c)?
        );
    }
    Ok(())
}
