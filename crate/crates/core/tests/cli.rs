use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lobwave").chain(args.iter().copied());
    let code = lobwave::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn schema() -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/lobwave-1.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn names(v: &Value) -> Vec<String> {
    v.as_array()
        .map(|a| a.iter().map(|s| s.as_str().unwrap().to_string()).collect())
        .unwrap_or_default()
}

/// Checks the required keys the schema lists for this document's command,
/// including those of table rows and verify checks.
fn assert_schema_keys(doc: &Value) {
    let schema = schema();
    let command = doc["command"].as_str().unwrap();
    assert_eq!(doc["schema"], "lobwave/1");
    for key in names(&schema["required"]) {
        assert!(doc.get(&key).is_some(), "{command}: missing {key}");
    }
    for rule in schema["allOf"].as_array().unwrap() {
        let cond = &rule["if"]["properties"]["command"];
        let applies = cond["const"] == command || names(&cond["enum"]).iter().any(|c| c == command);
        if !applies {
            continue;
        }
        let then = &rule["then"];
        for key in names(&then["required"]) {
            assert!(doc.get(&key).is_some(), "{command}: missing {key}");
        }
        for (list, item_rule) in [
            ("rows", &then["properties"]["rows"]["items"]),
            ("checks", &then["properties"]["checks"]["items"]),
        ] {
            let required = names(&item_rule["required"]);
            if let Some(items) = doc[list].as_array() {
                assert!(!items.is_empty() || required.is_empty());
                for item in items {
                    for key in &required {
                        assert!(
                            item.get(key).is_some(),
                            "{command}: {list} item missing {key}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn every_command_emits_schema_conformant_json() {
    let docs = [
        json(&["convert", "--quasi", "0.3,-0.7,1.1"]),
        json(&["medium", "--format", "json"]),
        json(&["profile", "--samples", "11", "--format", "json"]),
        json(&[
            "planewave",
            "--samples",
            "3",
            "--t-samples",
            "2",
            "--format",
            "json",
        ]),
        json(&["reflect", "--branch", "hankel2", "--omega", "0.5"]),
        json(&[
            "depth",
            "--frequency",
            "1e9",
            "--k1",
            "1",
            "--k2",
            "1",
            "--rho",
            "1",
        ]),
        json(&["verify", "--only", "maxwell"]),
        json(&[
            "sweep", "--omegas", "1,2", "--kappas", "1", "--format", "json",
        ]),
    ];
    for d in &docs {
        assert_schema_keys(d);
    }
}

#[test]
fn convert_origin_and_boundary() {
    let d = json(&["convert", "--quasi", "0,0,0"]);
    assert_eq!(d["embedding"]["u0"], 1.0);
    assert_eq!(d["poincare"]["q3"], 0.0);
    let near = json(&["convert", "--poincare", "0,0,0.999999"]);
    let z = near["quasi"]["z"].as_f64().unwrap();
    assert!(z.is_finite() && z > 7.0);
    let (code, _, err) = run(&["convert", "--poincare", "0,0,1"]);
    assert_eq!(code, 2);
    assert!(err.contains("q3"));
}

#[test]
fn profile_reproduces_the_figure_morphology() {
    for (w, z0) in [("10", 10f64.ln()), ("20", 20f64.ln())] {
        let (code, csv, _) = run(&[
            "profile",
            "--omega",
            w,
            "-a",
            "1",
            "--z-min",
            "-6",
            "--z-max",
            "5",
            "--samples",
            "1101",
        ]);
        assert_eq!(code, 0);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "z,re_G1,im_G1,re_G2,im_G2,abs_G1,U");
        let rows: Vec<Vec<f64>> = lines
            .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
            .collect();
        assert_eq!(rows.len(), 1101);
        let im: Vec<(f64, f64)> = rows.iter().map(|r| (r[0], r[2])).collect();
        let sign_changes = im
            .windows(2)
            .filter(|p| p[0].0 < z0 && p[0].1 * p[1].1 < 0.0)
            .count();
        assert!(sign_changes >= 3, "ω = {w}: {sign_changes}");
        let beyond: Vec<f64> = im
            .iter()
            .filter(|p| p.0 > z0 + 0.3)
            .map(|p| p.1.abs())
            .collect();
        assert!(beyond.windows(2).all(|p| p[1] < p[0]));
    }
}

#[test]
fn profile_without_barrier_points_to_planewave() {
    let (code, _, err) = run(&["profile", "-a", "0", "-b", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("planewave"));
}

#[test]
fn reflect_reports() {
    let h1 = json(&["reflect", "--branch", "hankel1", "--omega", "2"]);
    assert_eq!(h1["R_analytic"], 1.0);
    assert!((h1["R_fitted"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    let h2 = json(&["reflect", "--branch", "hankel2", "--omega", "0.5"]);
    assert_eq!(
        h2["R_analytic"].as_f64().unwrap(),
        (2.0 * std::f64::consts::PI).exp()
    );
    let n = json(&["reflect", "--branch", "neumann-plus"]);
    assert_eq!(n["discrepancy_flag"], true);
    let (code, _, _) = run(&["reflect", "--branch", "bessel-minus"]);
    assert_eq!(code, 2);
}

#[test]
fn depth_values() {
    let c = 299_792_458.0_f64;
    let omega = std::f64::consts::E * c;
    let d = json(&[
        "depth",
        "--omega-physical",
        &omega.to_string(),
        "--k1",
        "1",
        "--rho",
        "1",
    ]);
    assert!((d["z0_meters"].as_f64().unwrap() - 1.0).abs() < 1e-15);
    let si = json(&[
        "depth",
        "--frequency",
        "1e9",
        "--k1",
        "1",
        "--k2",
        "1",
        "--rho",
        "1",
    ]);
    let want = (2.0 * std::f64::consts::PI * 1e9 / (c * 2f64.sqrt())).ln();
    assert_eq!(si["z0_meters"].as_f64().unwrap(), want);
    let (code, _, _) = run(&["depth", "--frequency", "1e9", "--rho", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn planewave_direction_column_is_constant() {
    for (sign, want) in [("1", "1"), ("-1", "-1")] {
        let (code, csv, _) = run(&[
            "planewave",
            "--sign",
            sign,
            "--samples",
            "5",
            "--t-samples",
            "4",
        ]);
        assert_eq!(code, 0);
        let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
        let col = header
            .iter()
            .position(|h| *h == "poynting_direction")
            .unwrap();
        assert!(csv
            .lines()
            .skip(1)
            .all(|l| l.split(',').nth(col) == Some(want)));
        for line in csv.lines().skip(1) {
            let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
            let sq: f64 = v[2..8].iter().map(|c| c * c).sum();
            let direct = 0.5 * sq * (-2.0 * v[1]).exp();
            assert!((v[13] - direct).abs() < 1e-14 * direct);
        }
    }
    let (code, _, _) = run(&["planewave", "--omega", "-1"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_filtering_and_unreachable_tolerance() {
    let d = json(&["verify", "--only", "maxwell"]);
    let checks = d["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks
        .iter()
        .all(|c| c["group"] == "maxwell" && c["pass"] == true));
    assert_eq!(d["passed"], true);
    let (code, out, _) = run(&["verify", "--only", "maxwell", "--tolerance", "1e-20"]);
    assert_eq!(code, 1);
    let d: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(d["passed"], false);
    assert!(d["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["measured"].as_f64().unwrap() > 1e-20));
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [
        &["verify", "--only", "specfun,barrier"][..],
        &["profile", "--omega", "10"][..],
        &["sweep"][..],
    ] {
        assert_eq!(run(args).1, run(args).1, "{args:?}");
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"schema": "lobwave/1", "command": "reflect", "branch": "hankel2", "omega": 0.5}"#,
    )
    .unwrap();
    let d = json(&["--config", cfg.to_str().unwrap(), "reflect"]);
    assert_eq!(d["omega"], 0.5);
    let d = json(&[
        "--config",
        cfg.to_str().unwrap(),
        "reflect",
        "--omega",
        "0.25",
    ]);
    assert_eq!(d["omega"], 0.25);
    assert_eq!(d["branch"], "Hankel2");

    std::fs::write(
        &cfg,
        r#"{"schema": "lobwave/1", "command": "reflect", "omgea": 1}"#,
    )
    .unwrap();
    assert_eq!(run(&["--config", cfg.to_str().unwrap(), "reflect"]).0, 2);
    std::fs::write(&cfg, r#"{"schema": "lobwave/1", "command": "profile"}"#).unwrap();
    assert_eq!(run(&["--config", cfg.to_str().unwrap(), "reflect"]).0, 2);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("medium.csv");
    let (code, stdout, _) = run(&["medium", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("z,eps_1,eps_2,eps_3,mu_1,mu_2,mu_3,inv_mu_3,volume_weight\n"));
    assert!(!text.contains('\r'));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["reflect", "--branch", "hankel3"]).0, 2);
    assert_eq!(run(&["convert", "--quasi", "1,2"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lobwave");
    let status = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .output()
            .unwrap()
            .status
            .code()
            .unwrap()
    };
    assert_eq!(status(&["convert", "--quasi", "1,0,0"]), 0);
    assert_eq!(status(&["convert", "--poincare", "0,0,1"]), 2);
    assert_eq!(
        status(&["verify", "--only", "heun", "--tolerance", "1e-20"]),
        1
    );
}
