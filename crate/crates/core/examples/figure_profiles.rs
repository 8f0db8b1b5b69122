//! Data for the Im H⁽¹⁾_{iω} profiles at ω = 10 and ω = 20: oscillation left
//! of the turning point, monotone decay beyond it. Writes two CSV files into
//! the directory given as the first argument (default: current directory).

use std::fmt::Write as _;
use std::path::PathBuf;

use lobwave::modes::{eval_G, BasisBranch, ModeParams};
use lobwave::scattering::{schrodinger_potential, turning_point, uniform_grid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    for w in [10.0, 20.0] {
        let p = ModeParams::new(w, 1.0, 0.0)?;
        let mut csv = String::from("z,re_G1,im_G1,abs_G1,U\n");
        for z in uniform_grid(-6.0, 5.0, 1101) {
            let (g1, _) = eval_G(BasisBranch::Hankel1, &p, z)?;
            writeln!(
                csv,
                "{z:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                g1.re,
                g1.im,
                g1.norm(),
                schrodinger_potential(&p, z)
            )?;
        }
        let path = dir.join(format!("hankel1_omega{w}.csv"));
        std::fs::write(&path, csv)?;
        println!(
            "ω = {w}: turning point z0 = {:.4}, wrote {}",
            turning_point(&p)?.z0,
            path.display()
        );
    }
    Ok(())
}
