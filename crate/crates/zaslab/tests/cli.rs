//! End-to-end binary tests: exit codes, artifact layout, determinism, and
//! numeric round trips through both output formats.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn zaslab(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zaslab"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn write_file(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const NEG_MASS_SCENARIO: &str =
    r#"{"profile":{"kind":"negSchwarzschild","params":{"m":-1}},"command":"mass","params":{"r":1}}"#;

#[test]
fn mass_runs_are_byte_identical_and_correct() {
    let tmp = TempDir::new().unwrap();
    let scenario = write_file(tmp.path(), "scn.json", NEG_MASS_SCENARIO);

    for dir in ["a", "b"] {
        let out = zaslab(&["mass", "--scenario", &scenario, "--out", dir], tmp.path());
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(tmp.path().join("a/mass.json")).unwrap();
    let b = std::fs::read(tmp.path().join("b/mass.json")).unwrap();
    assert_eq!(a, b);

    let reports: serde_json::Value = serde_json::from_slice(&a).unwrap();
    let reports = reports.as_array().unwrap();
    let kinds: Vec<&str> = reports.iter().map(|m| m["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["hawking", "adm", "regular", "zas"]);
    for m in reports {
        let v = m["value"].as_f64().unwrap();
        assert!((v + 1.0).abs() < 1e-4, "{m}");
    }
}

#[test]
fn flow_emits_jump_sidecar_and_csv_round_trips_bitwise() {
    let tmp = TempDir::new().unwrap();
    let scenario = write_file(
        tmp.path(),
        "scn.json",
        r#"{"profile":{"kind":"posSchwarzschild","params":{"m":1}},"command":"flow","params":{"r0":0.3,"tMax":3,"nSamples":8}}"#,
    );

    // The trace's serialization is the CSV + sidecar pair in any format.
    for (dir, format) in [("csv", "csv"), ("json", "json")] {
        let out = zaslab(
            &["flow", "--scenario", &scenario, "--out", dir, "--format", format],
            tmp.path(),
        );
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(tmp.path().join(dir).join("flow_trace.csv").exists());
        assert!(tmp.path().join(dir).join("flow_jumps.json").exists());
    }
    let trace = std::fs::read_to_string(tmp.path().join("csv/flow_trace.csv")).unwrap();
    let mut lines = trace.lines();
    assert_eq!(lines.next(), Some("t,r,area,H,m_H"));
    assert!(!trace.contains('\r'));

    // 17 significant digits round-trip every f64 bit pattern: re-rendering
    // each parsed field must reproduce the file byte for byte.
    for line in lines {
        for field in line.split(',') {
            let v: f64 = field.parse().unwrap();
            assert_eq!(format!("{v:.16e}"), field);
        }
    }

    let jumps: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(tmp.path().join("csv/flow_jumps.json")).unwrap(),
    )
    .unwrap();
    let jumps = jumps.as_array().unwrap();
    assert_eq!(jumps.len(), 1);
    assert_eq!(jumps[0]["t"].as_f64(), Some(0.0));
    assert_eq!(jumps[0]["r_before"].as_f64(), Some(0.3));
    assert_eq!(jumps[0]["r_after"].as_f64(), Some(0.5));
}

#[test]
fn scenario_output_spec_applies_when_no_flags_given() {
    let tmp = TempDir::new().unwrap();
    let scenario = write_file(
        tmp.path(),
        "scn.json",
        r#"{"profile":{"kind":"negSchwarzschild","params":{"m":-1}},"command":"capacity","params":{"r":1},"output":{"path":"from-scenario","format":"csv"}}"#,
    );
    let out = zaslab(&["capacity", "--scenario", &scenario], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(tmp.path().join("from-scenario/capacity.csv")).unwrap();
    assert!(text.starts_with("quantity,r,value\n"));
    // Sphere capacity 4πc with c = r − 1/2: the r=1 row reads 2π.
    let surface: Vec<&str> =
        text.lines().find(|l| l.starts_with("surface")).unwrap().split(',').collect();
    let v: f64 = surface[2].parse().unwrap();
    assert!((v - 2.0 * std::f64::consts::PI).abs() < 1e-9);
    // Boundary capacity of this profile vanishes.
    let boundary: Vec<&str> =
        text.lines().find(|l| l.starts_with("boundary,")).unwrap().split(',').collect();
    assert_eq!(boundary[2].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn verify_penrose_passes_and_is_deterministic() {
    let tmp = TempDir::new().unwrap();
    for dir in ["a", "b"] {
        let out = zaslab(&["verify", "--suite", "penrose", "--out", dir], tmp.path());
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(tmp.path().join("a/verify_penrose.json")).unwrap();
    let b = std::fs::read(tmp.path().join("b/verify_penrose.json")).unwrap();
    assert_eq!(a, b);
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["overall"].as_bool(), Some(true));
    assert!(!report["cases"].as_array().unwrap().is_empty());
}

#[test]
fn verify_all_emits_every_suite() {
    let tmp = TempDir::new().unwrap();
    let out = zaslab(&["verify", "--suite", "all", "--out", "r", "--format", "csv"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for suite in ["penrose", "capacity", "resolution", "locality", "geroch", "hull"] {
        let path = tmp.path().join(format!("r/verify_{suite}.csv"));
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(
            text.starts_with("suite,profile,quantity,relation,lhs,rhs,margin,status\n"),
            "{suite}"
        );
        assert!(text.lines().count() > 1, "{suite} has no cases");
    }
}

#[test]
fn crushed_tolerances_turn_verification_into_exit_one() {
    let tmp = TempDir::new().unwrap();
    let out = zaslab(
        &["verify", "--suite", "resolution", "--tol-scale", "1e-12", "--out", "r"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(tmp.path().join("r/verify_resolution.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["overall"].as_bool(), Some(false));
}

#[test]
fn input_problems_exit_two() {
    let tmp = TempDir::new().unwrap();

    let unknown_key = write_file(
        tmp.path(),
        "unknown.json",
        r#"{"profile":{"kind":"flat"},"command":"mass","params":{"radius":1}}"#,
    );
    assert_eq!(zaslab(&["mass", "--scenario", &unknown_key], tmp.path()).status.code(), Some(2));

    let no_profile = write_file(tmp.path(), "noprof.json", r#"{"command":"flow"}"#);
    assert_eq!(zaslab(&["flow", "--scenario", &no_profile], tmp.path()).status.code(), Some(2));

    assert_eq!(zaslab(&["verify", "--suite", "bogus"], tmp.path()).status.code(), Some(2));

    // A scenario run through the wrong subcommand is rejected.
    let mass = write_file(tmp.path(), "mass.json", NEG_MASS_SCENARIO);
    let out = zaslab(&["flow", "--scenario", &mass], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mass"));

    assert_eq!(
        zaslab(&["mass", "--scenario", "does-not-exist.json"], tmp.path()).status.code(),
        Some(2)
    );
}

#[test]
fn custom_catalog_file_is_honored() {
    let tmp = TempDir::new().unwrap();
    let catalog = write_file(
        tmp.path(),
        "cat.json",
        r#"[{"id":"flat","profile":{"kind":"flat"},"flowStart":1.0}]"#,
    );
    let out = zaslab(
        &["verify", "--suite", "penrose", "--catalog", &catalog, "--out", "r"],
        tmp.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(tmp.path().join("r/verify_penrose.json")).unwrap(),
    )
    .unwrap();
    let cases = report["cases"].as_array().unwrap();
    assert!(cases.iter().all(|c| c["profile"] == "flat"));
}
