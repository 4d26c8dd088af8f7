use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn isoperim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoperim"))
        .args(args)
        .env_remove("ISOPERIM_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const ELLIPSE: [&str; 6] = ["--preset", "ellipse", "--a", "1.4142135623730951", "--b", "0.7071067811865476"];

#[test]
fn domain_info_disk() {
    let out = isoperim(&["domain-info", "--preset", "disk"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["area"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-14);
    assert!((v["kappa_max"].as_f64().unwrap() - 1.0).abs() < 1e-14);
    assert_eq!(v["is_disk"], true);
    assert_eq!(v["pestov_ionin"]["holds"], true);
}

#[test]
fn domain_info_ellipse_rounded_axes() {
    let out = isoperim(&["domain-info", "--preset", "ellipse", "--a", "1.41421356", "--b", "0.70710678"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["is_class_A"], true);
}

#[test]
fn malformed_spec_is_a_config_error() {
    let out = isoperim(&["domain-info", "--domain", "{\"support_cos\": [1.0,"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = isoperim(&["domain-info"]);
    assert_eq!(out.status.code(), Some(2));
    let out = isoperim(&["profile", "--preset", "disk", "--samples", "8"]);
    assert_eq!(out.status.code(), Some(2));
    let out = isoperim(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn disk_profile_row_at_quarter_angle() {
    let out = isoperim(&["profile", "--preset", "disk", "--samples", "256"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,area,length,curvature"));
    let row = lines
        .map(|l| l.split(',').map(|x| x.parse::<f64>().unwrap()).collect::<Vec<_>>())
        .find(|r| (r[0] - FRAC_PI_4).abs() < 1e-14)
        .expect("row at pi/4");
    assert!((row[2] - FRAC_PI_2).abs() < 1e-10);
    assert!((row[1] - (FRAC_PI_2 - 1.0)).abs() < 1e-10);
}

#[test]
fn profile_output_is_byte_identical() {
    let (p1, p2) = (scratch("profile1.csv"), scratch("profile2.csv"));
    let mut args = vec!["profile"];
    args.extend(ELLIPSE);
    for (path, threads) in [(&p1, "1"), (&p2, "3")] {
        let mut a = args.clone();
        a.extend(["--threads", threads, "--output", path.to_str().unwrap()]);
        assert_eq!(isoperim(&a).status.code(), Some(0));
    }
    let (a, b) = (fs::read(&p1).unwrap(), fs::read(&p2).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
    // monotone columns
    let text = String::from_utf8(a).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert!(rows.windows(2).all(|w| w[1][1] > w[0][1] && w[1][2] > w[0][2]));
}

#[test]
fn not_class_a_exits_three() {
    let out = isoperim(&["profile", "--domain", r#"{"support_cos":[1.0,0.1,0.05],"normalize_area":3.141592653589793}"#]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn conjecture_checks() {
    let mut args = vec!["check-conjecture"];
    args.extend(ELLIPSE);
    let out = isoperim(&args);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
    let out = isoperim(&["check-conjecture", "--preset", "disk"]);
    assert_eq!(out.status.code(), Some(3));
    let out = isoperim(&["check-conjecture", "--preset", "ellipse", "--eps", "1e-3"]);
    assert_eq!(out.status.code(), Some(0));
    let margin = json(&out)["margin"].as_f64().unwrap();
    assert!(margin > 0.0 && margin < 1e-2);
}

#[test]
fn config_file_and_precedence() {
    let cfg = scratch("run.json");
    fs::write(&cfg, r#"{"domain": {"preset": "disk"}, "samples": 32}"#).unwrap();
    let out = isoperim(&["profile", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 33);
    let out = isoperim(&["profile", "--config", cfg.to_str().unwrap(), "--samples", "64"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 65);
    fs::write(&cfg, r#"{"domain": {"preset": "disk"}, "unknown": 1}"#).unwrap();
    assert_eq!(isoperim(&["profile", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn arcs_find() {
    let mut args = vec!["arcs-find", "--s1", "0.3"];
    args.extend(ELLIPSE);
    let out = isoperim(&args);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let arcs = v["arcs"].as_array().unwrap();
    assert!(!arcs.is_empty());
    for a in arcs {
        assert!(a["orthogonality_residual"].as_f64().unwrap() < 1e-9);
    }
    let out = isoperim(&["arcs-find", "--preset", "disk", "--area", "0.5707963267948966"]);
    assert_eq!(out.status.code(), Some(0));
    assert!((json(&out)["length"].as_f64().unwrap() - FRAC_PI_2).abs() < 1e-9);
}

#[test]
fn perturb_roots() {
    let out = isoperim(&["perturb", "roots", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert!((v[0]["b"].as_f64().unwrap() - 1.150262).abs() < 1e-6);
    let out = isoperim(&["perturb", "roots", "--n", "2"]);
    assert_eq!(json(&out), serde_json::json!([]));
}

#[test]
fn perturb_experiment_mode_four() {
    let out = isoperim(&["perturb", "experiment", "--mode", "4", "--s-max", "5e-3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["verdict"], "second_order_decrease");
    assert!(v["beta"].as_f64().unwrap() < 0.0);
}

#[test]
fn implicit_curve_csv() {
    let out = isoperim(&["implicit-curve", "--xmax", "8", "--ymax", "1.57", "--resolution", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("x,y\n"));
    assert!(text.lines().count() > 100);
    let out = isoperim(&["implicit-curve", "--xmin", "2", "--xmax", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
