use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn gridfloer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridfloer"))
        .args(args)
        .env_remove("GRIDFLOER_WORKERS")
        .output()
        .expect("binary runs")
}

fn grid_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is one JSON object")
}

#[test]
fn compute_trefoil_json() {
    let out = gridfloer(&["compute", "--builtin", "trefoil", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["genus"], 1);
    assert_eq!(v["fibered"], true);
    assert_eq!(v["symmetric"], true);
    assert_eq!(
        v["alexander"],
        serde_json::json!({"-1": 1, "0": -1, "1": 1})
    );
    assert_eq!(
        v["hfk"],
        serde_json::json!([[0, -1, 1], [1, 0, 1], [2, 1, 1]])
    );
    assert_eq!(v["grid"]["n"], 5);
    // stable key order
    let keys = [
        "\"grid\"",
        "\"gh_tilde\"",
        "\"hfk\"",
        "\"alexander\"",
        "\"genus\"",
        "\"fibered\"",
        "\"symmetric\"",
    ];
    let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn compute_figure8_text() {
    let out = gridfloer(&["compute", "--builtin", "figure8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("HFK total 5"), "{text}");
    assert!(text.contains("Alexander polynomial -t + 3 - t^-1"));
}

#[test]
fn compute_from_file() {
    let f = grid_file("# unknot\ngrid 2\nO 1 0\nX 0 1\n");
    let out = gridfloer(&[
        "compute",
        "--grid",
        f.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["gh_tilde"], serde_json::json!([[-1, -1, 1], [0, 0, 1]]));
    assert_eq!(v["hfk"], serde_json::json!([[0, 0, 1]]));
}

#[test]
fn verify_unknot_checks_pass() {
    let out = gridfloer(&["verify", "--builtin", "unknot2", "--checks", "dsq,vfactor"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dsq") && text.contains("PASS"));
}

#[test]
fn verify_records_seed_and_runs_all_checks() {
    let out = gridfloer(&[
        "verify",
        "--builtin",
        "trefoil",
        "--checks",
        "dsq,symmetry,moves,oracle,vfactor",
        "--moves",
        "3",
        "--seed",
        "42",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    assert_eq!(v["ok"], true);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 5);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn oracle_command_and_size_limit() {
    let out = gridfloer(&["oracle", "--builtin", "trefoil", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["gh_total"], 48);
    assert_eq!(v["genus"], 1);
    let out = gridfloer(&["oracle", "--builtin", "torus_2_5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "usage");
}

#[test]
fn library_command() {
    let out = gridfloer(&["library"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in gridfloer::library::names() {
        assert!(text.contains(name));
    }
    let out = gridfloer(&["library", "trefoil"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "grid 5\nO 0 1 2 3 4\nX 2 3 4 0 1\n"
    );
    assert_eq!(gridfloer(&["library", "nope"]).status.code(), Some(2));
}

#[test]
fn exit_codes_for_error_paths() {
    // usage
    assert_eq!(gridfloer(&[]).status.code(), Some(2));
    assert_eq!(gridfloer(&["compute"]).status.code(), Some(2));
    assert_eq!(gridfloer(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        gridfloer(&["verify", "--builtin", "trefoil"]).status.code(),
        Some(2)
    );

    // malformed files
    let bad = grid_file("grid 3\nO 0 1 x\nX 1 2 0\n");
    let out = gridfloer(&["compute", "--grid", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_json(&out);
    assert_eq!(err["error"], "parse");
    assert!(err["message"].as_str().unwrap().contains("line 2"));

    let overlap = grid_file("grid 2\nO 1 0\nX 1 0\n");
    let out = gridfloer(&["compute", "--grid", overlap.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "overlapping_marker");

    let missing = gridfloer(&["compute", "--grid", "/nonexistent/grid.txt"]);
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(stderr_json(&missing)["error"], "io");

    // a two-component link
    let link = grid_file("grid 4\nO 1 0 3 2\nX 0 1 2 3\n");
    for cmd in ["compute", "verify"] {
        let mut args = vec![cmd, "--grid", link.path().to_str().unwrap()];
        if cmd == "verify" {
            args.extend(["--checks", "dsq"]);
        }
        let out = gridfloer(&args);
        assert_eq!(out.status.code(), Some(1), "{cmd}");
        assert_eq!(stderr_json(&out)["error"], "not_a_knot");
    }
}

#[test]
fn json_identical_across_worker_counts() {
    let run = |workers: &str| {
        let out = gridfloer(&[
            "compute",
            "--builtin",
            "knot5_2",
            "--format",
            "json",
            "--workers",
            workers,
        ]);
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    let one = run("1");
    assert_eq!(one, run("2"));
    assert_eq!(one, run("4"));
    let env = Command::new(env!("CARGO_BIN_EXE_gridfloer"))
        .args(["compute", "--builtin", "knot5_2", "--format", "json"])
        .env("GRIDFLOER_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(env.stdout, one);
}
