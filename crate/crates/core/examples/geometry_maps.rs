//! Quasi-Cartesian points mapped to the hyperboloid and the Poincaré ball,
//! and the equivalent medium along z.

use lobwave::geometry::{
    effective_tensors, embedding_to_poincare, poincare_to_quasi, to_embedding, QuasiCartesian,
};

fn main() -> lobwave::Result<()> {
    for (x, y, z) in [
        (0.0, 0.0, 0.0),
        (1.0, 0.0, 0.0),
        (0.3, -0.7, 1.1),
        (2.0, 2.0, -3.0),
    ] {
        let p = QuasiCartesian::new(x, y, z)?;
        let u = to_embedding(p)?;
        let q = embedding_to_poincare(u)?;
        let back = poincare_to_quasi(q)?;
        println!(
            "({x:5.2}, {y:5.2}, {z:5.2})  u = ({:.6}, {:.6}, {:.6}, {:.6})  q = ({:.6}, {:.6}, {:.6})  back z = {:.12}  u0²−|u|² = {:.15}",
            u.u0, u.u1, u.u2, u.u3, q.q1, q.q2, q.q3, back.z, u.minkowski_norm()
        );
    }
    println!("\n    z      eps = mu = diag(1, 1, e^-2z)");
    for z in [-2.0, -1.0, 0.0, 2f64.ln(), 1.0, 2.0] {
        let m = effective_tensors(z)?;
        println!("{z:7.4}   {:?}", m.eps_diag);
    }
    Ok(())
}
