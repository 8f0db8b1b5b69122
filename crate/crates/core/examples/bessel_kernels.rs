//! Modified Bessel functions of imaginary order by their independent routes:
//! integral representation, series/continued fraction and the hybrid
//! selector, with the Wronskian as a consistency check.

use lobwave::specfun::{bessel_i, bessel_k, bessel_k_expansion, bessel_k_quad, gamma_modulus_sq};
use lobwave::Complex64;

fn main() -> lobwave::Result<()> {
    println!("  ω      X        K quadrature             K expansion              |Δ|");
    for (w, x) in [
        (0.5, 0.5),
        (1.0, 1.0),
        (2.0, 3.0),
        (5.0, 2.0),
        (5.0, 10.0),
        (10.0, 25.0),
    ] {
        let nu = Complex64::new(0.0, w);
        let q = bessel_k_quad(nu, x)?.value.re;
        let s = bessel_k_expansion(nu, x)?.value.re;
        println!(
            "{w:5.1} {x:6.1}   {q:+.16e}   {s:+.16e}   {:.1e}",
            (q - s).abs()
        );
    }
    println!("\n  ω      X      X·(I_ν K_ν+1 + K_ν I_ν+1) − 1");
    for (w, x) in [(0.5, 0.1), (3.0, 1.0), (10.0, 30.0)] {
        let nu = Complex64::new(0.0, w);
        let wr = x
            * (bessel_i(nu, x)?.value * bessel_k(nu + 1.0, x)?.value
                + bessel_k(nu, x)?.value * bessel_i(nu + 1.0, x)?.value);
        println!("{w:5.1} {x:6.1}   {:.2e}", (wr - 1.0).norm());
    }
    println!("\n|Γ(1+iω)|² = πω/sinh(πω):");
    for w in [0.1, 1.0, 5.0, 20.0] {
        println!("  ω = {w:4}  {:.16e}", gamma_modulus_sq(w));
    }
    Ok(())
}
