//! Assembled field modes substituted back into the first-order Maxwell
//! system and its 4×4 matrix form, for every basis branch.

use lobwave::modes::{
    amplitudes_at, assemble_field, maxwell_residual_firstorder, maxwell_residual_matrix,
    BasisBranch, ModeParams,
};
use lobwave::scattering::{turning_point, uniform_grid};

fn main() -> lobwave::Result<()> {
    let p = ModeParams::new(2.0, 0.6, 0.8)?;
    let z0 = turning_point(&p)?.z0;
    println!("ω = 2, a = 0.6, b = 0.8, z in [−8, {:.3}]", z0 + 3.0);
    for branch in BasisBranch::ALL {
        let (mut first, mut matrix) = (0.0f64, 0.0f64);
        for z in uniform_grid(-8.0, z0 + 3.0, 200) {
            let m = amplitudes_at(branch, &p, z)?;
            first = first.max(maxwell_residual_firstorder(&m, &p));
            matrix = matrix.max(maxwell_residual_matrix(&m, &p));
        }
        println!(
            "{:>13}  first-order {first:.2e}  matrix {matrix:.2e}",
            branch.name()
        );
    }
    let f = assemble_field(BasisBranch::Hankel1, &p, 0.3, 1.0, -0.5, 0.0)?;
    println!(
        "\nH1 field at (t, x, y, z) = (0.3, 1, −0.5, 0): E = {:?}",
        f.e()
    );
    println!("                                          B = {:?}", f.b());
    Ok(())
}
