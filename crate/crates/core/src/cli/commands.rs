use std::f64::consts::PI;

use serde_json::{json, Map, Value};

use super::config::{grid, Format, RunConfig};
use super::output::{to_json_string, Cell, Table, SCHEMA};
use super::verify::{run_checks, CheckOutcome};
use super::{CliError, Rendered};
use crate::geometry::{
    effective_tensors, embedding_to_poincare, energy_density, poincare_to_quasi, to_embedding,
    volume_weight, EmbeddingPoint, PoincarePoint, QuasiCartesian,
};
use crate::modes::{eval_G, plane_wave_special, BasisBranch, ModeParams};
use crate::scattering::{
    reflection_numeric_oracle_growing_with, reflection_numeric_oracle_with, reflection_report,
    schrodinger_potential, turning_point,
};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

pub fn dispatch(name: &str, cfg: &RunConfig) -> Result<Rendered, CliError> {
    match name {
        "convert" => convert(cfg),
        "medium" => medium(cfg),
        "profile" => profile(cfg),
        "planewave" => planewave(cfg),
        "reflect" => reflect(cfg),
        "depth" => depth(cfg),
        "verify" => verify(cfg),
        "sweep" => sweep(cfg),
        other => Err(CliError::usage(format!("unknown command '{other}'"))),
    }
}

fn header(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m
}

fn ok(text: String) -> Result<Rendered, CliError> {
    Ok(Rendered { text, code: 0 })
}

/// A table as CSV, or as `{schema, command, ...meta, rows}` JSON.
fn render_table(
    cfg: &RunConfig,
    default: Format,
    command: &str,
    meta: Map<String, Value>,
    table: &Table,
) -> String {
    match cfg.format.unwrap_or(default) {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let mut m = header(command);
            m.extend(meta);
            m.insert("rows".into(), table.to_json_rows());
            to_json_string(&Value::Object(m))
        }
    }
}

/// A flat record as JSON, or as a one-row CSV.
fn render_record(cfg: &RunConfig, command: &str, fields: Vec<(&'static str, Value)>) -> String {
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut m = header(command);
            for (k, v) in fields {
                m.insert(k.into(), v);
            }
            to_json_string(&Value::Object(m))
        }
        Format::Csv => {
            let mut cols = Vec::new();
            let mut row = Vec::new();
            for (k, v) in fields {
                match v {
                    Value::Array(items) if items.len() == 2 && k.starts_with("M_") => {
                        cols.push(if k == "M_plus" {
                            "re_M_plus"
                        } else {
                            "re_M_minus"
                        });
                        cols.push(if k == "M_plus" {
                            "im_M_plus"
                        } else {
                            "im_M_minus"
                        });
                        row.push(value_cell(&items[0]));
                        row.push(value_cell(&items[1]));
                    }
                    other => {
                        cols.push(k);
                        row.push(value_cell(&other));
                    }
                }
            }
            let mut t = Table::new(cols);
            t.push(row);
            t.to_csv()
        }
    }
}

fn value_cell(v: &Value) -> Cell {
    match v {
        Value::Bool(b) => Cell::Bool(*b),
        Value::Number(n) if n.is_i64() => Cell::Int(n.as_i64().unwrap_or_default()),
        Value::Number(n) => Cell::Float(n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => Cell::Text(s.clone()),
        other => Cell::Text(other.to_string()),
    }
}

fn triple<const N: usize>(v: &[f64], what: &str) -> Result<[f64; N], CliError> {
    v.try_into().map_err(|_| {
        CliError::usage(format!(
            "--{what} needs {N} comma-separated numbers, got {}",
            v.len()
        ))
    })
}

fn convert(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let given = [
        cfg.quasi.is_some(),
        cfg.embedding.is_some(),
        cfg.poincare.is_some(),
    ];
    if given.iter().filter(|g| **g).count() != 1 {
        return Err(CliError::usage(
            "give exactly one of --quasi x,y,z, --embedding u0,u1,u2,u3, --poincare q1,q2,q3",
        ));
    }
    let (input, quasi) = if let Some(v) = &cfg.quasi {
        let [x, y, z] = triple::<3>(v, "quasi")?;
        ("quasi", QuasiCartesian::new(x, y, z)?)
    } else if let Some(v) = &cfg.embedding {
        let [u0, u1, u2, u3] = triple::<4>(v, "embedding")?;
        let u = EmbeddingPoint { u0, u1, u2, u3 };
        let defect = (u.minkowski_norm() - 1.0).abs();
        if !(defect <= 1e-10 * u0 * u0) {
            return Err(CliError::usage(format!(
                "u0² − u1² − u2² − u3² = {} violates the hyperboloid constraint (must equal 1)",
                u.minkowski_norm()
            )));
        }
        ("embedding", poincare_to_quasi(embedding_to_poincare(u)?)?)
    } else {
        let v = cfg.poincare.as_deref().unwrap_or_default();
        let [q1, q2, q3] = triple::<3>(v, "poincare")?;
        ("poincare", poincare_to_quasi(PoincarePoint { q1, q2, q3 })?)
    };
    let u = to_embedding(quasi)?;
    let q = embedding_to_poincare(u)?;
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut m = header("convert");
            m.insert("input".into(), json!(input));
            m.insert(
                "quasi".into(),
                json!({"x": quasi.x, "y": quasi.y, "z": quasi.z}),
            );
            m.insert(
                "embedding".into(),
                json!({"u0": u.u0, "u1": u.u1, "u2": u.u2, "u3": u.u3}),
            );
            m.insert(
                "poincare".into(),
                json!({"q1": q.q1, "q2": q.q2, "q3": q.q3}),
            );
            m.insert("hyperboloid_defect".into(), json!(u.minkowski_norm() - 1.0));
            to_json_string(&Value::Object(m))
        }
        Format::Csv => {
            let mut t = Table::new(vec![
                "x", "y", "z", "u0", "u1", "u2", "u3", "q1", "q2", "q3",
            ]);
            t.push(
                [
                    quasi.x, quasi.y, quasi.z, u.u0, u.u1, u.u2, u.u3, q.q1, q.q2, q.q3,
                ]
                .map(Cell::Float)
                .to_vec(),
            );
            t.to_csv()
        }
    };
    ok(text)
}

fn medium(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let zs = match cfg.z {
        Some(z) => vec![z],
        None => cfg.z_grid(-2.0, 2.0, 9)?,
    };
    let mut t = Table::new(vec![
        "z",
        "eps_1",
        "eps_2",
        "eps_3",
        "mu_1",
        "mu_2",
        "mu_3",
        "inv_mu_3",
        "volume_weight",
    ]);
    for z in zs {
        let m = effective_tensors(z)?;
        let mut row: Vec<Cell> = vec![Cell::Float(z)];
        row.extend(m.eps_diag.iter().chain(&m.mu_diag).map(|v| Cell::Float(*v)));
        row.push(Cell::Float(m.inverse_mu_diag()[2]));
        row.push(Cell::Float(volume_weight(z)?));
        t.push(row);
    }
    ok(render_table(cfg, Format::Csv, "medium", Map::new(), &t))
}

fn mode_params(cfg: &RunConfig) -> Result<ModeParams, CliError> {
    Ok(ModeParams::new(
        cfg.omega.unwrap_or(1.0),
        cfg.a.unwrap_or(1.0),
        cfg.b.unwrap_or(0.0),
    )?)
}

fn mode_meta(branch: BasisBranch, p: &ModeParams) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("branch".into(), json!(branch.name()));
    m.insert("omega".into(), json!(p.omega));
    m.insert("a".into(), json!(p.a));
    m.insert("b".into(), json!(p.b));
    m.insert("kappa".into(), json!(p.kappa));
    m
}

fn profile(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let p = mode_params(cfg)?;
    if p.kappa == 0.0 {
        return Err(CliError::usage(
            "a = b = 0 is the free plane wave; use the `planewave` command",
        ));
    }
    let branch = cfg.branch()?;
    let zs = cfg.z_grid(-6.0, 5.0, 1101)?;
    let mut t = Table::new(vec!["z", "re_G1", "im_G1", "re_G2", "im_G2", "abs_G1", "U"]);
    for z in zs {
        let (g1, g2) = eval_G(branch, &p, z)?;
        t.push(
            [
                z,
                g1.re,
                g1.im,
                g2.re,
                g2.im,
                g1.norm(),
                schrodinger_potential(&p, z),
            ]
            .map(Cell::Float)
            .to_vec(),
        );
    }
    let mut meta = mode_meta(branch, &p);
    meta.insert("z0".into(), json!(turning_point(&p)?.z0));
    ok(render_table(cfg, Format::Csv, "profile", meta, &t))
}

fn planewave(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let omega = cfg.omega.unwrap_or(1.0);
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(CliError::usage(format!("omega = {omega} must be positive")));
    }
    let sign = cfg.sign.unwrap_or(1);
    if sign != 1 && sign != -1 {
        return Err(CliError::usage(format!("sign must be 1 or -1, got {sign}")));
    }
    let ts = grid(
        cfg.t_min.unwrap_or(0.0),
        cfg.t_max.unwrap_or(2.0 * PI / omega),
        cfg.t_samples.unwrap_or(5),
        "t",
    )?;
    let zs = cfg.z_grid(-2.0, 2.0, 5)?;
    let mut t = Table::new(vec![
        "t",
        "z",
        "E1",
        "E2",
        "E3",
        "B1",
        "B2",
        "B3",
        "S1",
        "S2",
        "S3",
        "S3_normalized",
        "poynting_direction",
        "energy_density",
    ]);
    for &time in &ts {
        for &z in &zs {
            let f = plane_wave_special(sign, omega, time, z)?;
            let (e, b, s) = (f.e(), f.b(), f.poynting());
            let w = volume_weight(z)?;
            let mut row: Vec<Cell> = [time, z]
                .iter()
                .chain(&e)
                .chain(&b)
                .chain(&s)
                .map(|v| Cell::Float(*v))
                .collect();
            row.push(Cell::Float(s[2] * w));
            row.push(Cell::Int(if s[2] > 0.0 { 1 } else { -1 }));
            row.push(Cell::Float(energy_density(e, b, z)?));
            t.push(row);
        }
    }
    let mut meta = Map::new();
    meta.insert("sign".into(), json!(sign));
    meta.insert("omega".into(), json!(omega));
    ok(render_table(cfg, Format::Csv, "planewave", meta, &t))
}

fn reflect(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let p = mode_params(cfg)?;
    let branch = cfg.branch()?;
    let r = reflection_report(branch, &p)?;
    let fields = vec![
        ("branch", json!(r.branch.name())),
        ("omega", json!(r.omega)),
        ("kappa", json!(r.kappa)),
        ("R_analytic", json!(r.r_analytic)),
        ("R_fitted", json!(r.r_fitted)),
        ("M_plus", json!([r.m_plus.re, r.m_plus.im])),
        ("M_minus", json!([r.m_minus.re, r.m_minus.im])),
        ("discrepancy_flag", json!(r.discrepancy_flag)),
    ];
    ok(render_record(cfg, "reflect", fields))
}

fn depth(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let omega = match (cfg.omega_physical, cfg.frequency) {
        (Some(w), None) => w,
        (None, Some(f)) => 2.0 * PI * f,
        _ => {
            return Err(CliError::usage(
                "give exactly one of --omega-physical (rad/s) or --frequency (Hz)",
            ))
        }
    };
    let (k1, k2) = (cfg.k1.unwrap_or(0.0), cfg.k2.unwrap_or(0.0));
    let rho = cfg.rho.unwrap_or(1.0);
    let c = cfg.c.unwrap_or(SPEED_OF_LIGHT);
    let z0 = crate::scattering::penetration_depth(omega, k1, k2, rho, c)?;
    let fields = vec![
        ("z0_meters", json!(z0)),
        ("z0_curvature_units", json!(z0 / rho)),
        ("turning_x_magnitude", json!(omega * rho / c)),
    ];
    ok(render_record(cfg, "depth", fields))
}

fn verify(cfg: &RunConfig) -> Result<Rendered, CliError> {
    if let Some(t) = cfg.tolerance {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(CliError::usage(format!(
                "tolerance {t} must be a finite non-negative number"
            )));
        }
    }
    let only = cfg.only.clone().unwrap_or_default();
    let tol = cfg.tolerance_spec()?;
    let outcomes = run_checks(&only, cfg.tolerance, &tol);
    if outcomes.is_empty() {
        return Err(CliError::usage(format!(
            "no check matches --only {}",
            only.join(",")
        )));
    }
    let passed = outcomes.iter().all(|o| o.pass);
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut m = header("verify");
            m.insert("passed".into(), json!(passed));
            m.insert(
                "tolerance_override".into(),
                cfg.tolerance.map_or(Value::Null, |t| json!(t)),
            );
            m.insert(
                "checks".into(),
                Value::Array(outcomes.iter().map(CheckOutcome::to_json).collect()),
            );
            to_json_string(&Value::Object(m))
        }
        Format::Csv => {
            let mut t = Table::new(vec![
                "name",
                "group",
                "measured",
                "threshold",
                "pass",
                "detail",
            ]);
            for o in &outcomes {
                t.push(vec![
                    Cell::Text(o.name.to_string()),
                    Cell::Text(o.group.to_string()),
                    Cell::Float(o.measured),
                    Cell::Float(o.threshold),
                    Cell::Bool(o.pass),
                    Cell::Text(o.detail.replace(',', ";")),
                ]);
            }
            t.to_csv()
        }
    };
    Ok(Rendered {
        text,
        code: if passed { 0 } else { 1 },
    })
}

fn sweep(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let branch = cfg.branch()?;
    let omegas = cfg
        .omegas
        .clone()
        .unwrap_or_else(|| vec![0.5, 1.0, 2.0, 5.0, 10.0]);
    let kappas = cfg.kappas.clone().unwrap_or_else(|| vec![0.2, 1.0, 5.0]);
    let tol = cfg.tolerance_spec()?;
    let oracle = matches!(branch, BasisBranch::Hankel1 | BasisBranch::Hankel2);
    let mut cols = vec!["omega", "kappa", "z0", "R_analytic", "R_fitted"];
    if oracle {
        cols.push("R_oracle");
    }
    cols.push("discrepancy_flag");
    let mut t = Table::new(cols);
    for &w in &omegas {
        for &k in &kappas {
            let p = ModeParams::new(w, k, 0.0)?;
            let r = reflection_report(branch, &p)?;
            let mut row = vec![
                Cell::Float(w),
                Cell::Float(k),
                Cell::Float(turning_point(&p)?.z0),
                Cell::Float(r.r_analytic),
                Cell::Float(r.r_fitted),
            ];
            if branch == BasisBranch::Hankel1 {
                row.push(Cell::Float(reflection_numeric_oracle_with(&p, &tol)?));
            } else if branch == BasisBranch::Hankel2 {
                row.push(Cell::Float(reflection_numeric_oracle_growing_with(
                    &p, &tol,
                )?));
            }
            row.push(Cell::Bool(r.discrepancy_flag));
            t.push(row);
        }
    }
    let mut meta = Map::new();
    meta.insert("branch".into(), json!(branch.name()));
    ok(render_table(cfg, Format::Csv, "sweep", meta, &t))
}
