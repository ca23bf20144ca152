use std::process::{Command, Output};

use serde_json::Value;

fn infsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infsurf")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

#[test]
fn classify_vertical_like() {
    let out = infsurf(&["classify", "--direction", "2", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!({"class": "vertical-like", "saddle_connections": false}));
}

#[test]
fn classify_negative_direction() {
    let out = infsurf(&["classify", "--direction", "-6", "-4"]);
    assert_eq!(json(&out)["class"], "horizontal-like");
}

#[test]
fn horizontal_moduli_are_half() {
    let out = infsurf(&["cylinders", "--c", "1", "--direction", "horizontal", "--count", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let cyls = v["cylinders"].as_array().unwrap();
    assert_eq!(cyls.len(), 3);
    for c in cyls {
        assert_eq!(c["modulus"], "1/2");
    }
}

#[test]
fn slope_one_moduli() {
    let v = json(&infsurf(&["cylinders", "--c", "5/4", "--direction", "slope-one", "--count", "4"]));
    for c in v["cylinders"].as_array().unwrap() {
        assert_eq!(c["modulus"], "2/9");
    }
}

#[test]
fn verify_all_passes() {
    let out = infsurf(&["verify", "--c", "5/4", "--suite", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for want in ["relations", "moduli", "symmetry", "singularities"] {
        assert!(names.contains(&want), "{want} missing");
    }
    for c in v["checks"].as_array().unwrap() {
        assert!(!c["certifies"].as_str().unwrap().is_empty());
    }
}

#[test]
fn verify_single_suite() {
    let v = json(&infsurf(&["verify", "--c", "2", "--suite", "parabolic"]));
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "--c", "1/2"],
        vec!["verify", "--c", "x/y"],
        vec!["verify", "--c", "1/0"],
        vec!["verify", "--suite", "nonsense"],
        vec!["classify", "--direction", "0", "0"],
        vec!["reduce", "--direction", "2", "4"],
        vec!["surface", "--window", "5000"],
        vec!["trace", "--start", "0", "0", "--direction", "1", "1"],
        vec!["frobnicate"],
        vec!["classify", "--direction", "1", "2", "--bogus"],
    ] {
        let out = infsurf(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn trace_reports_code() {
    let out = infsurf(&["trace", "--c", "1", "--start", "1/2", "3/4", "--direction", "0", "1", "--max-crossings", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let code: Vec<&str> = v["code"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(code, ["d1+", "s2+", "d2+", "s3+"]);
    assert_eq!(v["terminal"]["kind"], "crossing-budget-exhausted");
}

#[test]
fn rational_direction_trace() {
    let a = json(&infsurf(&["trace", "--start", "1/2", "3/4", "--direction-rational", "0", "1/3", "--max-crossings", "6"]));
    let b = json(&infsurf(&["trace", "--start", "1/2", "3/4", "--direction", "0", "1", "--max-crossings", "6"]));
    assert_eq!(a["code"], b["code"]);
}

#[test]
fn separatrix_hits_vertex() {
    // the horizontal from P_0 on S_1 runs along the boundary to another vertex
    let v = json(&infsurf(&["separatrix", "--c", "1", "--vertex", "-1", "--direction", "1", "0"]));
    assert_eq!(v["terminal"]["kind"], "hit-singularity");
}

#[test]
fn reduce_round_trip_shape() {
    let v = json(&infsurf(&["reduce", "--direction", "5", "-3"]));
    assert_eq!(v["base"], serde_json::json!([1, 1]));
    assert_eq!(v["class"], "slope-one-like");
    assert!(v["word"].as_str().is_some());
}

#[test]
fn compare_agrees() {
    let out = infsurf(&["compare", "--c", "5/4", "--word", "DE", "--base", "horizontal", "--max-crossings", "60"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["agree"], true);
    assert!(v["starts"].as_u64().unwrap() > 0);
}

#[test]
fn surface_json_is_deterministic() {
    let a = infsurf(&["surface", "--c", "5/4", "--window", "3"]);
    let b = infsurf(&["surface", "--c", "5/4", "--window", "3", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["singularities"]["classes"].as_array().unwrap().len(), 2);
    let vertices = v["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 8);
}

#[test]
fn render_to_file_and_stdout() {
    let dir = std::env::temp_dir().join(format!("infsurf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig.svg");
    let out = infsurf(&["render", "cylinders", "--c", "5/4", "--window", "4", "--svg", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("class=\"cylinder slope-one\"").count(), 8);
    let out = infsurf(&["render", "geodesic", "--start", "1/2", "3/4", "--direction", "1", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("class=\"geodesic\""));
    assert_eq!(infsurf(&["render", "geodesic"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
