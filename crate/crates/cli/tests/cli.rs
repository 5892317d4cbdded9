use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motsplit"))
        .args(args)
        .env_remove("MOTSPLIT_FIXTURES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("motsplit-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn d2_json_lists_the_s1_expansion() {
    let o = run(&[
        "d2",
        "--p",
        "1",
        "--w",
        "0",
        "--max-shift",
        "6",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let cells: Vec<(i64, i64)> = v["d2"]["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["p"].as_i64().unwrap(), c["w"].as_i64().unwrap()))
        .collect();
    assert_eq!(cells, [(2, 1), (3, 1), (4, 2), (5, 2), (6, 3)]);
}

#[test]
fn gw_trace() {
    let o = run(&["gw", "trace"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "tr = ⟨2⟩ + ⟨-2⟩\n");
}

#[test]
fn vanish_reports_certificate() {
    let o = run(&[
        "vanish",
        "--i",
        "4",
        "--slope",
        "2/3",
        "--max-shift",
        "24",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["certificate"]["ok"], true);
    assert_eq!(v["certificate"]["min_slack"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["s-check", "--p", "5", "--w", "3", "--slope", "5/9"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["s-check", "--p", "5", "--w", "3"]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["divide", "--mbar", "0:1,1:1", "--abar", "0:1,1:2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["d2", "--p", "3", "--w", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["ei", "--i", "4", "--slope", "3/2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["mm-split", "--input", "non_surjective"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["nsym", "--max-i", "6", "--format", "json"][..],
        &["steenrod", "commute", "--n", "3", "--side", "left"],
        &["cor22", "--input", "cor22_module", "--trunc", "10"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn divide_recovers_a_quotient() {
    let o = run(&[
        "divide",
        "--mbar",
        "0:1,1:3,2:3,3:1",
        "--abar",
        "0:1,1:2,2:1",
        "--max-shift",
        "6",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["v"], serde_json::json!({"0": 1, "1": 1}));
}

#[test]
fn fixture_directory_override() {
    let dir = scratch("fixtures");
    std::fs::write(
        dir.join("dual_steenrod.json"),
        r#"{"label": "one exterior class", "generators": [{"name": "t", "kind": "exterior", "p": 2, "w": 1}]}"#,
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_motsplit"))
        .args([
            "divide",
            "--mbar",
            "0:1,1:1",
            "--max-shift",
            "4",
            "--format",
            "json",
        ])
        .env("MOTSPLIT_FIXTURES", &dir)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["abar_source"], "one exterior class");
    assert_eq!(v["v"], serde_json::json!({"0": 1}));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn malformed_structure_file_is_a_usage_error() {
    let dir = scratch("bad");
    let p = dir.join("bad.json");
    std::fs::write(&p, "{\"kind\": \"hopf\",\n \"spaces\": [").unwrap();
    let o = run(&["validate", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn validate_shipped_fixtures() {
    for name in ["exterior_t1", "planted", "cor22_exterior"] {
        assert!(
            run(&["validate", "--input", name]).status.success(),
            "{name}"
        );
    }
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify-all"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 13);
}
