//! The a = b = 0 plane wave: E×B points along ±z with magnitude e^{2z}, and
//! the energy density per coordinate volume stays constant.

use lobwave::geometry::energy_density;
use lobwave::modes::plane_wave_special;

fn main() -> lobwave::Result<()> {
    for sign in [1i8, -1] {
        println!("sign {sign:+}");
        for (t, z) in [(0.0, -2.0), (0.7, 0.0), (2.1, 1.5)] {
            let f = plane_wave_special(sign, 1.5, t, z)?;
            let s = f.poynting();
            println!(
                "  t = {t:3.1} z = {z:4.1}  e^(−2z)·E×B = ({:+.3e}, {:+.3e}, {:+.15})  energy = {:.15}",
                s[0] * (-2.0 * z).exp(), s[1] * (-2.0 * z).exp(), s[2] * (-2.0 * z).exp(),
                energy_density(f.e(), f.b(), z)?
            );
        }
    }
    Ok(())
}
