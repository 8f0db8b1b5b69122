//! The closed-form profiles against an independent adaptive integration of
//! the Schrödinger-form equation, across a parameter grid.

use lobwave::modes::{BasisBranch, ModeParams};
use lobwave::scattering::{ode_profile_deviation, turning_point};

fn main() -> lobwave::Result<()> {
    println!("  ω     κ     H1 deviation   J+ deviation");
    for w in [0.5, 1.0, 2.0, 5.0] {
        for k in [0.5, 1.0, 2.0] {
            let p = ModeParams::new(w, k, 0.0)?;
            let hi = turning_point(&p)?.z0 + 3.0;
            let h1 = ode_profile_deviation(BasisBranch::Hankel1, &p, -6.0, hi, 200)?;
            let j = ode_profile_deviation(BasisBranch::BesselPlus, &p, -6.0, hi, 200)?;
            println!("{w:5.1} {k:5.1}   {h1:.2e}       {j:.2e}");
        }
    }
    Ok(())
}
