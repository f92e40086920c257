//! End-to-end checks of the verify binary: exit codes, report files,
//! format switches, and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn verify_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_verify"))
}

fn model(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../models").join(name)
}

fn run(args: &[&str]) -> Output {
    verify_bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn passing_suite_exits_zero_with_text_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("axioms.txt");
    let out = run(&[
        "--model", model("2atom_int.json").to_str().unwrap(),
        "--suite", "axioms",
        "--seed", "7",
        "--budget", "200",
        "--bound", "4",
        "--report", report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("0 failures"));
    assert!(text.contains("verdict: pass"));
    assert!(text.contains("ering.i"), "law table missing: {text}");
}

#[test]
fn report_goes_to_stdout_without_a_path() {
    let out = run(&[
        "--model", model("2atom_int.json").to_str().unwrap(),
        "--suite", "lemmas",
        "--seed", "0",
        "--budget", "100",
        "--bound", "4",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("lemma.FF.iii"), "missing law tags in: {text}");
    assert!(text.contains("verdict: pass"));
}

#[test]
fn mutant_model_fails_with_counterexamples() {
    let out = run(&[
        "--model", model("mutant_cone_negatives.json").to_str().unwrap(),
        "--suite", "axioms",
        "--seed", "7",
        "--budget", "100",
        "--bound", "4",
        "--format", "json",
    ]);
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], "fail");
    let failures = report["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    // replayable payload: inputs plus expected/actual
    assert!(failures[0]["inputs"].as_array().is_some_and(|i| !i.is_empty()));
    assert!(failures[0]["expected"].is_string());
    assert!(failures[0]["case_id"].is_u64());
}

#[test]
fn other_mutants_are_killed_too() {
    for name in ["mutant_effect_set.json", "mutant_psd_indefinite.json"] {
        let out = run(&[
            "--model", model(name).to_str().unwrap(),
            "--suite", "axioms",
            "--seed", "7",
            "--budget", "100",
            "--bound", "4",
        ]);
        assert_eq!(code(&out), 1, "{name} not killed");
    }
}

#[test]
fn strict_flag_turns_undecided_into_exit_two() {
    // sampled coexistence hard pairs leave undecided entries on matrices
    let base = [
        "--model".to_string(),
        model("matrix2.json").to_str().unwrap().to_string(),
        "--suite".into(), "effects".into(),
        "--seed".into(), "11".into(),
        "--budget".into(), "80".into(),
        "--bound".into(), "4".into(),
    ];
    let lenient = verify_bin().args(&base).output().unwrap();
    assert_eq!(code(&lenient), 0);
    assert!(String::from_utf8_lossy(&lenient.stdout).contains("verdict: undecided"));

    let mut strict_args = base.to_vec();
    strict_args.push("--strict".into());
    let strict = verify_bin().args(&strict_args).output().unwrap();
    assert_eq!(code(&strict), 2);
}

#[test]
fn usage_problems_exit_three() {
    // unknown suite name
    let out = run(&[
        "--model", model("2atom_int.json").to_str().unwrap(),
        "--suite", "nonsense",
    ]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));

    // missing model file
    let out = run(&["--model", "/nonexistent/model.json", "--suite", "axioms"]);
    assert_eq!(code(&out), 3);

    // semantically empty model
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("empty_atoms.json");
    std::fs::write(&bad, r#"{ "kind": "function_ring", "atoms": [], "values": "int" }"#).unwrap();
    let out = run(&["--model", bad.to_str().unwrap(), "--suite", "axioms"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("at least one atom"));

    // malformed json gets a line/column diagnostic
    let mangled = dir.path().join("mangled.json");
    std::fs::write(&mangled, "{ \"kind\": \"matrix\",\n  \"dim\": }").unwrap();
    let out = run(&["--model", mangled.to_str().unwrap(), "--suite", "axioms"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn capability_mismatch_exits_four() {
    // the pointwise-lattice suite has nothing to say about matrices
    let out = run(&[
        "--model", model("matrix2.json").to_str().unwrap(),
        "--suite", "boolean",
        "--seed", "0",
        "--budget", "50",
        "--bound", "4",
    ]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("requires"));

    // the structure theorem needs all six conditions
    let out = run(&[
        "--model", model("2atom_rat_grid4.json").to_str().unwrap(),
        "--suite", "stone",
        "--seed", "0",
        "--budget", "50",
        "--bound", "4",
    ]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("failing"));
}

#[test]
fn bring_suite_passes_on_every_carrier_kind() {
    // all-false is as good as all-true: the equivalence is the claim
    for name in ["2atom_int.json", "2atom_rat_grid4.json", "matrix2.json", "product_int2_matrix2.json"] {
        let out = run(&[
            "--model", model(name).to_str().unwrap(),
            "--suite", "bring",
            "--seed", "5",
            "--budget", "60",
            "--bound", "4",
        ]);
        assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (r1, r2) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for path in [&r1, &r2] {
        let out = run(&[
            "--model", model("matrix2.json").to_str().unwrap(),
            "--suite", "effects",
            "--seed", "11",
            "--budget", "80",
            "--bound", "4",
            "--format", "json",
            "--report", path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
    }
    let a = std::fs::read(&r1).unwrap();
    let b = std::fs::read(&r2).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn json_schema_carries_the_documented_fields() {
    let out = run(&[
        "--model", model("3atom_int.json").to_str().unwrap(),
        "--suite", "projections",
        "--seed", "2",
        "--budget", "60",
        "--bound", "4",
        "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema_version"], 1);
    for field in ["model", "suite", "strategy", "cases_total", "failures", "undecided", "verdict"] {
        assert!(!report[field].is_null(), "missing field {field}");
    }
    assert_eq!(report["strategy"]["seed"], 2);
}

#[test]
fn all_suite_collates_applicable_suites_and_skips_the_rest() {
    let out = run(&[
        "--model", model("matrix2.json").to_str().unwrap(),
        "--suite", "all",
        "--seed", "3",
        "--budget", "40",
        "--bound", "4",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("ering.i"));
    assert!(text.contains("bring.agreement"));
    assert!(text.contains("skipped"), "expected skip notes in: {text}");
}
