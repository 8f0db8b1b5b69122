//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use lobwave::geometry::{embedding_to_poincare, poincare_to_quasi, to_embedding, QuasiCartesian};
use lobwave::modes::{
    amplitudes_at, heun_form_residual, maxwell_residual_firstorder, maxwell_residual_matrix,
    plane_wave_amplitudes, plane_wave_special, BasisBranch, ModeParams,
};
use lobwave::scattering::{
    envelope_crossing, ode_profile_deviation, reflection, reflection_closed_form,
    reflection_numeric_oracle, reflection_numeric_oracle_growing, reflection_report, turning_point,
    uniform_grid, ReflectionMethod,
};
use lobwave::specfun::{bessel_i, bessel_k, gamma};
use lobwave::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn within(elapsed: Duration, limit: f64, msg: String) -> Outcome {
    let secs = elapsed.as_secs_f64();
    ensure(
        secs < limit,
        format!("{msg}; {secs:.2} s (limit {limit} s)"),
    )
}

fn params(w: f64, k: f64) -> ModeParams {
    ModeParams::new(w, k, 0.0).unwrap()
}

fn mirror() -> Outcome {
    let start = Instant::now();
    let (mut fitted, mut oracle) = (0.0f64, 0.0f64);
    for w in [0.5, 1.0, 2.0, 5.0, 10.0] {
        for k in [0.2, 1.0, 5.0] {
            let p = params(w, k);
            let r = reflection(BasisBranch::Hankel1, &p, ReflectionMethod::Fitted)
                .map_err(|e| e.to_string())?
                .r;
            fitted = fitted.max((r - 1.0).abs());
            let r = reflection_numeric_oracle(&p).map_err(|e| e.to_string())?;
            oracle = oracle.max((r - 1.0).abs());
        }
    }
    let msg = format!("max |R − 1|: closed-form samples {fitted:.2e}, integrated samples {oracle:.2e} (limit 1e-6)");
    ensure(fitted <= 1e-6 && oracle <= 1e-6, msg.clone())?;
    within(start.elapsed(), 10.0, msg)
}

fn growing() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for w in [0.25, 0.5] {
        let want = (4.0 * w * PI).exp();
        let p = params(w, 1.0);
        let fitted = reflection(BasisBranch::Hankel2, &p, ReflectionMethod::Fitted)
            .map_err(|e| e.to_string())?
            .r;
        let integrated = reflection_numeric_oracle_growing(&p).map_err(|e| e.to_string())?;
        worst = worst
            .max((fitted / want - 1.0).abs())
            .max((integrated / want - 1.0).abs());
    }
    let msg = format!("max relative gap to e^(4ωπ) {worst:.2e} (limit 1e-2)");
    ensure(worst < 1e-2, msg.clone())?;
    within(start.elapsed(), 5.0, msg)
}

fn closed_vs_ode() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for w in [0.5, 1.0, 2.0, 5.0] {
        for k in [0.5, 1.0, 2.0] {
            let p = params(w, k);
            let z0 = turning_point(&p).map_err(|e| e.to_string())?.z0;
            for b in [BasisBranch::Hankel1, BasisBranch::BesselPlus] {
                worst = worst.max(
                    ode_profile_deviation(b, &p, -6.0, z0 + 3.0, 200).map_err(|e| e.to_string())?,
                );
            }
        }
    }
    let msg = format!("max |G1 − G1_ode| / max|G1| {worst:.2e} (limit 1e-7)");
    ensure(worst < 1e-7, msg.clone())?;
    within(start.elapsed(), 30.0, msg)
}

fn maxwell() -> Outcome {
    let sets = [
        (0.5, 1.0, 0.0),
        (1.0, 0.6, 0.8),
        (2.0, 1.0, 1.0),
        (5.0, -0.3, 2.0),
        (10.0, 1.0, 0.0),
        (3.0, 0.0, 0.5),
    ];
    let (mut first, mut matrix) = (0.0f64, 0.0f64);
    for (w, a, b) in sets {
        let p = ModeParams::new(w, a, b).unwrap();
        let z0 = turning_point(&p).unwrap().z0;
        for branch in BasisBranch::ALL {
            for z in uniform_grid(-8.0, z0 + 3.0, 200) {
                let m = amplitudes_at(branch, &p, z).map_err(|e| e.to_string())?;
                first = first.max(maxwell_residual_firstorder(&m, &p));
                matrix = matrix.max(maxwell_residual_matrix(&m, &p));
            }
        }
    }
    ensure(
        first < 1e-8 && matrix < 1e-8,
        format!("first-order {first:.2e}, matrix {matrix:.2e} (limit 1e-8)"),
    )
}

fn plane_wave() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let (mut dir, mut res) = (0.0f64, 0.0f64);
    for k in 0..100 {
        let sign = if k % 2 == 0 { 1i8 } else { -1 };
        let (t, z, w) = (
            rng.gen_range(0.0..10.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(0.1..10.0),
        );
        let s = plane_wave_special(sign, w, t, z)
            .map_err(|e| e.to_string())?
            .poynting();
        let e2 = (-2.0 * z).exp();
        dir = dir
            .max((s[0] * e2).abs())
            .max((s[1] * e2).abs())
            .max((s[2] * e2 - sign as f64).abs());
        let m = plane_wave_amplitudes(sign, w, z).map_err(|e| e.to_string())?;
        res = res.max(maxwell_residual_firstorder(
            &m,
            &ModeParams::new(w, 0.0, 0.0).unwrap(),
        ));
    }
    ensure(
        dir <= 1e-12 && res < 1e-12,
        format!("|E×B ∓ e_z| {dir:.2e}, residual {res:.2e} (limit 1e-12)"),
    )
}

fn gamma_identity() -> Outcome {
    let worst = [0.1, 1.0, 5.0, 20.0]
        .iter()
        .map(|&w| {
            (gamma(Complex64::new(1.0, w)).norm_sqr() / (PI * w / (PI * w).sinh()) - 1.0).abs()
        })
        .fold(0.0, f64::max);
    ensure(
        worst < 1e-12,
        format!("max relative gap {worst:.2e} (limit 1e-12)"),
    )
}

fn wronskian() -> Outcome {
    let mut worst = 0.0f64;
    for w in uniform_grid(0.5, 10.0, 20) {
        for x in uniform_grid(0.1, 30.0, 20) {
            let nu = Complex64::new(0.0, w);
            let f = |v: Result<lobwave::specfun::SpecialValue, lobwave::Error>| {
                v.map(|s| s.value).map_err(|e| e.to_string())
            };
            let (i0, i1) = (f(bessel_i(nu, x))?, f(bessel_i(nu + 1.0, x))?);
            let (k0, k1) = (f(bessel_k(nu, x))?, f(bessel_k(nu + 1.0, x))?);
            // I·K′ − K·I′ = −(I_ν K_{ν+1} + K_ν I_{ν+1}).
            let wr = -(i0 * k1 + k0 * i1);
            worst = worst.max((wr * (-x) - 1.0).norm());
        }
    }
    ensure(
        worst < 1e-9,
        format!("max relative gap to −1/X {worst:.2e} (limit 1e-9)"),
    )
}

fn turning() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let (mut balance, mut exact) = (0.0f64, true);
    for _ in 0..200 {
        let (w, a, b) = (
            rng.gen_range(0.1..50.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(0.01..5.0),
        );
        let p = ModeParams::new(w, a, b).unwrap();
        let t = turning_point(&p).map_err(|e| e.to_string())?;
        balance = balance.max((t.u0 * (2.0 * t.z0).exp() / (w * w) - 1.0).abs());
        exact &= t.z0.to_bits() == (w / p.kappa).ln().to_bits();
    }
    let mut crossing = 0.0f64;
    for w in [2.0, 5.0, 10.0, 20.0] {
        for k in [0.5, 1.0, 2.0] {
            let p = params(w, k);
            let z0 = turning_point(&p).unwrap().z0;
            crossing = crossing.max((envelope_crossing(&p).map_err(|e| e.to_string())? - z0).abs());
        }
    }
    ensure(
        balance < 1e-12 && exact && crossing <= 1.0,
        format!("U0e^(2z0)/ω² − 1 {balance:.2e}, z0 = ln(ω/κ) bitwise {exact}, max |z_e − z0| {crossing:.3}"),
    )
}

fn heun() -> Outcome {
    let p = ModeParams::new(2.0, 1.0, 1.0).unwrap();
    let r = heun_form_residual(BasisBranch::Hankel1, &p, &uniform_grid(-4.0, 0.0, 81))
        .map_err(|e| e.to_string())?;
    ensure(
        r < 1e-5,
        format!("normalized residual {r:.2e} (limit 1e-5)"),
    )
}

fn geometry() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let (mut trip, mut hyper) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let p = QuasiCartesian {
            x: rng.gen_range(-5.0..=5.0),
            y: rng.gen_range(-5.0..=5.0),
            z: rng.gen_range(-5.0..=5.0),
        };
        let u = to_embedding(p).map_err(|e| e.to_string())?;
        hyper = hyper.max((u.minkowski_norm() - 1.0).abs() / (u.u0 * u.u0));
        let b = poincare_to_quasi(embedding_to_poincare(u).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        trip = trip
            .max((b.x - p.x).abs())
            .max((b.y - p.y).abs())
            .max((b.z - p.z).abs());
    }
    ensure(
        trip < 1e-10 && hyper < 1e-12,
        format!("round trip {trip:.2e} (limit 1e-10), hyperboloid {hyper:.2e} (limit 1e-12)"),
    )
}

fn neumann_audit() -> Outcome {
    let mut verbatim = true;
    for w in [0.1, 0.5, 1.0, 2.0, 5.0] {
        verbatim &= reflection_closed_form(BasisBranch::NeumannPlus, w)
            .unwrap()
            .to_bits()
            == (4.0 / (1.0 + (-4.0 * w * PI).exp())).to_bits();
        verbatim &= reflection_closed_form(BasisBranch::NeumannMinus, w)
            .unwrap()
            .to_bits()
            == ((1.0 + (4.0 * w * PI).exp()) / 4.0).to_bits();
    }
    let p = params(1.0, 1.0);
    let mut flags = Vec::new();
    for b in [BasisBranch::NeumannPlus, BasisBranch::NeumannMinus] {
        let r = reflection_report(b, &p).map_err(|e| e.to_string())?;
        let doc = run_cli(&["reflect", "--branch", b.name(), "--omega", "1", "-a", "1"]).0;
        let v: Value = serde_json::from_str(&doc).map_err(|e| e.to_string())?;
        let emitted = v["R_fitted"].as_f64() == Some(r.r_fitted)
            && v["R_analytic"].as_f64() == Some(r.r_analytic);
        flags.push((
            b,
            r.r_analytic,
            r.r_fitted,
            r.discrepancy_flag && v["discrepancy_flag"] == true && emitted,
        ));
    }
    let all = verbatim && flags.iter().all(|f| f.3);
    let detail: Vec<String> = flags
        .iter()
        .map(|(b, a, f, ok)| format!("{b}: printed {a:.6} fitted {f:.6} flagged {ok}"))
        .collect();
    ensure(
        all,
        format!("printed formulas bitwise {verbatim}; {}", detail.join("; ")),
    )
}

fn run_cli(args: &[&str]) -> (String, i32) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = lobwave::cli::run(
        std::iter::once("lobwave").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (String::from_utf8(out).unwrap(), code)
}

fn determinism() -> Outcome {
    let (a, ca) = run_cli(&["verify"]);
    let (b, cb) = run_cli(&["verify"]);
    ensure(
        a == b && ca == cb && !a.is_empty(),
        format!(
            "two verify reports of {} bytes identical: {}",
            a.len(),
            a == b
        ),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("mirror reflection of the decaying branch", mirror),
        ("growing-branch ratio", growing),
        ("closed form vs integrated profile", closed_vs_ode),
        ("Maxwell system exactness", maxwell),
        ("plane-wave special case", plane_wave),
        ("gamma modulus identity", gamma_identity),
        ("I/K Wronskian", wronskian),
        ("turning point and penetration depth", turning),
        ("Heun-form residual", heun),
        ("geometry round trips", geometry),
        ("Neumann ratio audit", neumann_audit),
        ("verify determinism", determinism),
    ];
    let mut failed = 0;
    for (n, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {title}: {msg} [{secs:.2} s]", n + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {msg} [{secs:.2} s]", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
