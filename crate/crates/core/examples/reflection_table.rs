//! Reflection coefficients of every basis branch: the closed forms, the
//! values fitted from the far-left profile, and the integrated oracle.

use lobwave::modes::{BasisBranch, ModeParams};
use lobwave::scattering::{
    reflection_numeric_oracle, reflection_numeric_oracle_growing, reflection_report,
};

fn main() -> lobwave::Result<()> {
    let p = ModeParams::new(0.5, 1.0, 0.0)?;
    println!("ω = 0.5, κ = 1");
    println!(
        "{:>13} {:>22} {:>22}  flag",
        "branch", "R closed form", "R fitted"
    );
    for branch in BasisBranch::ALL {
        match reflection_report(branch, &p) {
            Ok(r) => println!(
                "{:>13} {:22.12} {:22.12}  {}",
                branch.name(),
                r.r_analytic,
                r.r_fitted,
                r.discrepancy_flag
            ),
            Err(e) => println!("{:>13}  {e}", branch.name()),
        }
    }
    println!(
        "\nintegrated decaying branch R − 1 = {:.2e}",
        reflection_numeric_oracle(&p)? - 1.0
    );
    println!(
        "integrated growing branch R / e^(4ωπ) − 1 = {:.2e}",
        reflection_numeric_oracle_growing(&p)? / (4.0 * 0.5 * std::f64::consts::PI).exp() - 1.0
    );
    Ok(())
}
