use std::path::PathBuf;
use std::process::Command;

use morita_cli::demos::demo_file_stems;
use morita_cli::{generate_demo, report_json, run, CliError, Scenario};
use morita_core::Status;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_morita"))
}

fn demo_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../demos")
}

fn write_scenario(dir: &tempfile::TempDir, name: &str, json: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, json).unwrap();
    p
}

const BROKEN_INVOLUTION: &str = r#"{
  "algebras": [{"name": "M2", "full": 2}],
  "bimodules": [{"name": "X", "identity": "M2"}],
  "involutions": [{
    "name": "bad",
    "natural": {"bimodule": "X", "natural": {"realified": [
      [1,0,0,0,0,0,0,0],[0,1,0,0,0,0,0,0],[0,0,1,0,0,0,0,0],[0,0,0,1,0,0,0,0],
      [0,0,0,0,1,0,0,0],[0,0,0,0,0,1,0,0],[0,0,0,0,0,0,1,0],[0,0,0,0,0,0,0,1]
    ]}}
  }],
  "tasks": [{"id": "bad", "op": "verify_involutive", "involution": "bad"}]
}"#;

#[test]
fn bundled_group_algebra_z2_passes_with_index_two() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = bin()
        .arg("run")
        .arg(demo_dir().join("group_algebra_z2.scn"))
        .arg("--report")
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("watatani_index: 2"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["overall"], "pass");
    let idx = json["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["id"] == "index/watatani-index")
        .unwrap();
    assert_eq!(idx["message"], "watatani_index: 2");
    assert_eq!(idx["anchor"], "watatani-index");
}

#[test]
fn bundled_demo_files_match_the_generator() {
    for stem in demo_file_stems() {
        let path = demo_dir().join(format!("{stem}.scn"));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(Scenario::from_json(&text).unwrap(), generate_demo(&stem).unwrap(), "{stem}");
    }
}

#[test]
fn group_algebra_z3_reports_index_three() {
    let rep = run(&generate_demo("group_algebra(Z3)").unwrap(), None).unwrap();
    assert!(rep.passed(), "{rep}");
    assert_eq!(rep.get("index/watatani-index").unwrap().message, "watatani_index: 3");
}

#[test]
fn undefined_algebra_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_scenario(
        &dir,
        "undef.scn",
        r#"{"bimodules": [{"name": "X", "identity": "M7"}], "tasks": []}"#,
    );
    let out = bin().arg("run").arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("algebra `M7`"));
}

#[test]
fn malformed_json_and_unknown_fields_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("trunc.scn", r#"{"tasks": ["#),
        ("extra.scn", r#"{"tasks": [], "colour": 1}"#),
        ("ragged.scn", r#"{"algebras": [{"name": "A", "generated": {"n": 2, "generators": [[[1, 0], [0]]]}}], "tasks": []}"#),
    ] {
        let p = write_scenario(&dir, name, text);
        assert_eq!(bin().arg("run").arg(&p).output().unwrap().status.code(), Some(2), "{name}");
    }
    let missing = dir.path().join("absent.scn");
    assert_eq!(bin().arg("run").arg(&missing).output().unwrap().status.code(), Some(2));
}

#[test]
fn broken_involution_exits_one_with_failing_id() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_scenario(&dir, "broken.scn", BROKEN_INVOLUTION);
    let out = bin().arg("run").arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[fail] bad/conjugate-linear"));
}

#[test]
fn realified_adjoint_matches_the_builtin_adjoint() {
    // Listed basis E11, E12, E21, E22; the adjoint swaps E12 and E21 and conjugates.
    let sigma = [0, 2, 1, 3];
    let mut r = vec![vec![0.0; 8]; 8];
    for (j, &sj) in sigma.iter().enumerate() {
        r[sj][j] = 1.0;
        r[4 + sj][4 + j] = -1.0;
    }
    let json = serde_json::json!({
        "algebras": [{"name": "M2", "full": 2}],
        "bimodules": [{"name": "X", "span": {"left": "M2", "right": "M2", "rows": 2, "cols": 2, "basis": [
            [[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 1]]
        ]}}],
        "involutions": [
            {"name": "real", "natural": {"bimodule": "X", "natural": {"realified": r}}},
            {"name": "star", "natural": {"bimodule": "X", "natural": "adjoint"}}
        ],
        "tasks": [
            {"id": "real", "op": "verify_involutive", "involution": "real"},
            {"id": "link", "op": "linking", "involution": "real"}
        ]
    });
    let sc = Scenario::from_json(&json.to_string()).unwrap();
    let rep = run(&sc, None).unwrap();
    assert!(rep.passed(), "{rep}");
}

#[test]
fn core_errors_become_failing_records() {
    let sc = Scenario::from_json(
        r#"{"groups": [{"name": "Z3", "cyclic": 3}],
            "bundles": [{"name": "B", "group_algebra": "Z3"}],
            "tasks": [{"op": "extract", "bundle": "B"}, {"op": "verify_bundle", "bundle": "B"}]}"#,
    )
    .unwrap();
    let rep = run(&sc, None).unwrap();
    let rec = rep.get("001-extract/error").unwrap();
    assert_eq!(rec.status, Status::Fail);
    assert!(rec.message.contains("order 2"));
    assert!(rep.filtered("002-verify_bundle/").passed());
}

#[test]
fn unresolved_reference_in_task_is_malformed() {
    let sc = Scenario::from_json(r#"{"tasks": [{"op": "verify_bundle", "bundle": "nope"}]}"#).unwrap();
    assert!(matches!(run(&sc, None), Err(CliError::UnresolvedReference(_))));
}

#[test]
fn check_filter_and_unknown_demo() {
    let out = bin()
        .arg("run")
        .arg(demo_dir().join("group_algebra_z2.scn"))
        .args(["--check", "index/"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().filter(|l| l.starts_with('[')).all(|l| l.contains("] index/")));
    assert!(text.contains("2 checks, 0 failed"));
    assert_eq!(bin().args(["demo", "quaternions"]).output().unwrap().status.code(), Some(2));
}

#[test]
fn demo_command_writes_a_runnable_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("z3.scn");
    let out = bin().args(["demo", "group_algebra(Z3)", "--out"]).arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().arg("run").arg(&p).args(["--parallel", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("watatani_index: 3"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let sc = generate_demo("reconstruction_relabeled_z4").unwrap();
    let a = report_json(&run(&sc, None).unwrap());
    let b = report_json(&run(&sc, None).unwrap());
    assert_eq!(a, b);
    assert!(a.contains("f = [0, 3, 2, 1]"));
}
