//! Black-box matrix over the compiled binary: exit-code contract, output
//! schemas and determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_affine-focal")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("affine_focal_cli_tests").join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn json_of(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn planar_ellipse_constant_curvature() {
    let dir = scratch("planar_ellipse");
    let spec = write(&dir, "ellipse.json", r#"{"kind":"ellipse","a":2.0,"b":1.0}"#);
    let out_dir = dir.join("out");
    let out = run(&[
        "planar",
        "--spec",
        spec.to_str().unwrap(),
        "--samples",
        "257",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    let expect = (2.0_f64).powf(-2.0 / 3.0);
    let csv = std::fs::read_to_string(out_dir.join("invariants.csv")).unwrap();
    for line in csv.lines().skip(1) {
        let rho: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((rho - expect).abs() < 1e-6, "rho {rho} vs {expect}");
    }
}

#[test]
fn planar_oval_reports_six_vertices() {
    let dir = scratch("planar_oval");
    let spec = write(
        &dir,
        "oval.json",
        r#"{"kind":"fourier_oval","radial_coeffs":[1.0,0.0,0.0,0.1]}"#,
    );
    let out_dir = dir.join("out");
    let out = run(&[
        "planar",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    let report = json_of(&out_dir.join("vertex_report.json"));
    assert!(report["vertex_count"].as_u64().unwrap() >= 6);
    assert_eq!(report["degenerate_rho_prime"], false);
}

#[test]
fn malformed_json_exits_2_with_position() {
    let dir = scratch("bad_json");
    let spec = write(&dir, "bad.json", "{\"kind\": \"ellipse\",\n  \"a\": }");
    let out = run(&[
        "planar",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_exit(&out, 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line") && err.contains("column"), "stderr: {err}");
}

#[test]
fn darboux_latitude_fixture_degenerates() {
    let dir = scratch("darboux_latitude");
    let out_dir = dir.join("out");
    let out = run(&[
        "darboux",
        "--fixture",
        "latitude-sphere",
        "--samples",
        "257",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    let sidecar = json_of(&out_dir.join("labels.json"));
    for label in sidecar["labels"].as_array().unwrap() {
        assert_eq!(label["label"], "Degenerate");
    }
    let obj = std::fs::read_to_string(out_dir.join("focal.obj")).unwrap();
    assert!(obj.lines().any(|l| l.starts_with("l ")), "polyline records");
    assert!(!obj.lines().any(|l| l.starts_with("f ")), "no faces for a line sheet");
}

#[test]
fn darboux_graph_loop_has_cuspidal_edges() {
    let dir = scratch("darboux_graph");
    let out_dir = dir.join("out");
    let out = run(&[
        "darboux",
        "--fixture",
        "graph-loop",
        "--samples",
        "513",
        "--mesh-s",
        "33",
        "--s-min=-3",
        "--s-max=3",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    let sidecar = json_of(&out_dir.join("labels.json"));
    let labels: Vec<&str> = sidecar["labels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["label"].as_str().unwrap())
        .collect();
    assert!(labels.iter().any(|l| *l == "CuspidalEdge"), "no cuspidal edge found");
    assert!(labels.iter().any(|l| *l == "Smooth"));
}

#[test]
fn darboux_containment_violation_exits_3() {
    let dir = scratch("darboux_containment");
    let curve = write(&dir, "curve.json", r#"{"kind":"latitude","height":0.6}"#);
    let surface = write(&dir, "surface.json", r#"{"kind":"sphere","r":1.2}"#);
    let out = run(&[
        "darboux",
        "--curve",
        curve.to_str().unwrap(),
        "--surface",
        surface.to_str().unwrap(),
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_exit(&out, 3);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("containment"), "stderr: {err}");
}

#[test]
fn unknown_fixture_exits_2() {
    let dir = scratch("darboux_unknown");
    let out = run(&[
        "darboux",
        "--fixture",
        "moebius",
        "--out",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_exit(&out, 2);
}

#[test]
fn umbilic_sphere_and_paraboloid() {
    let dir = scratch("umbilic");
    let sphere = write(
        &dir,
        "sphere.json",
        r#"{"kind":"sphere_patch","r":1.0,"grid":[49,97]}"#,
    );
    let out_dir = dir.join("out_sphere");
    let out = run(&[
        "umbilic",
        "--surface",
        sphere.to_str().unwrap(),
        "--origin",
        "0,0,0",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    let report = json_of(&out_dir.join("verification.json"));
    assert_eq!(report["hyperplanar"], true);
    assert_eq!(report["proper_affine_sphere"], true);
    assert!(report["laplacian_residual"].as_str().unwrap().parse::<f64>().unwrap() < 1e-6);

    let parab = write(
        &dir,
        "paraboloid.json",
        r#"{"kind":"paraboloid","half_width":1.0,"n":49}"#,
    );
    let out_dir2 = dir.join("out_parab");
    let out2 = run(&[
        "umbilic",
        "--surface",
        parab.to_str().unwrap(),
        "--origin",
        "0,0,0",
        "--out",
        out_dir2.to_str().unwrap(),
    ]);
    assert_exit(&out2, 0);
    let report2 = json_of(&out_dir2.join("verification.json"));
    assert_eq!(report2["hyperplanar"], false);
    assert_eq!(report2["proper_affine_sphere"], false);
}

#[test]
fn umbilic_round_trip_through_files() {
    let dir = scratch("umbilic_roundtrip");
    let circle = write(
        &dir,
        "circle.json",
        r#"{"kind":"curve","spec":{"kind":"circle","r":1.0},"samples":257}"#,
    );
    let out_dir = dir.join("out");
    let out = run(&[
        "umbilic",
        "--surface",
        circle.to_str().unwrap(),
        "--origin",
        "0,0",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    let out2 = run(&[
        "umbilic-inverse",
        "--phi",
        out_dir.join("phi.csv").to_str().unwrap(),
        "--origin",
        "0,0",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_exit(&out2, 0);
    // recovered f is the unit circle
    let csv = std::fs::read_to_string(out_dir.join("recovered_f.csv")).unwrap();
    let mut worst = 0.0_f64;
    for line in csv.lines().skip(1) {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let r = (cells[1] * cells[1] + cells[2] * cells[2]).sqrt();
        worst = worst.max((r - 1.0).abs());
    }
    assert!(worst < 1e-6, "recovered radius deviation {worst}");
    let report = json_of(&out_dir.join("inverse_report.json"));
    assert!(report["conormal_residual"].as_str().unwrap().parse::<f64>().unwrap() < 1e-6);
}

#[test]
fn focal_umbilic_and_product_data() {
    let dir = scratch("focal");
    let umbilic = write(
        &dir,
        "umbilic.json",
        r#"{"n":2,"grid":[0.0],"mu":[-1.0,-1.0],"sigma":[[0.75,0.0],[0.0,0.75]],"h1":[[0.0,0.0],[0.0,0.0]]}"#,
    );
    let out_dir = dir.join("out_umbilic");
    let out = run(&[
        "focal",
        "--framedata",
        umbilic.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    let summary = json_of(&out_dir.join("summary.json"));
    assert_eq!(summary["per_sample"][0]["multiplicity"], 2);
    assert_eq!(summary["degree_bound_holds"], true);

    let product = write(
        &dir,
        "product.json",
        r#"{"n":2,"grid":[0.0],"mu":[-0.5,0.5],"sigma":[[1.0,0.0],[0.0,1.0]],"h1":[[0.5,0.0],[0.0,0.5]]}"#,
    );
    let out_dir2 = dir.join("out_product");
    let out2 = run(&[
        "focal",
        "--framedata",
        product.to_str().unwrap(),
        "--out",
        out_dir2.to_str().unwrap(),
    ]);
    assert_exit(&out2, 0);
    let summary2 = json_of(&out_dir2.join("summary.json"));
    let lines = summary2["per_sample"][0]["lines"].as_array().unwrap();
    assert_eq!(lines.len(), 2);
    assert_eq!(summary2["per_sample"][0]["commute"], true);
}

#[test]
fn spatial_helix_is_cylindrical() {
    let dir = scratch("spatial_helix");
    let spec = write(&dir, "helix.json", r#"{"kind":"helix"}"#);
    let out_dir = dir.join("out");
    let out = run(&[
        "spatial",
        "--spec",
        spec.to_str().unwrap(),
        "--samples",
        "257",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    let report = json_of(&out_dir.join("report.json"));
    assert_eq!(report["cylindrical"], true);
}

#[test]
fn outputs_are_deterministic() {
    let dir = scratch("determinism");
    let spec = write(
        &dir,
        "oval.json",
        r#"{"kind":"fourier_oval","radial_coeffs":[1.0,0.0,0.0,0.05]}"#,
    );
    let (a, b) = (dir.join("a"), dir.join("b"));
    for out_dir in [&a, &b] {
        let out = run(&[
            "planar",
            "--spec",
            spec.to_str().unwrap(),
            "--samples",
            "257",
            "--origin",
            "0.1,0.2",
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert_exit(&out, 0);
    }
    for name in ["invariants.csv", "evolute.csv", "support.csv", "vertex_report.json"] {
        let fa = std::fs::read(a.join(name)).unwrap();
        let fb = std::fs::read(b.join(name)).unwrap();
        assert_eq!(fa, fb, "{name} differs between runs");
    }
    // thread count does not change darboux outputs
    let (c, d) = (dir.join("c"), dir.join("d"));
    for (out_dir, threads) in [(&c, "1"), (&d, "4")] {
        let out = run(&[
            "darboux",
            "--fixture",
            "circle-on-cone",
            "--samples",
            "64",
            "--threads",
            threads,
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert_exit(&out, 0);
    }
    for name in ["frame.csv", "focal.obj", "labels.json"] {
        let fc = std::fs::read(c.join(name)).unwrap();
        let fd = std::fs::read(d.join(name)).unwrap();
        assert_eq!(fc, fd, "{name} differs across thread counts");
    }
}
