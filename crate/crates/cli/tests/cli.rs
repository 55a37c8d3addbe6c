use std::path::PathBuf;
use std::process::{Command, Output};

use homdual::fixtures;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homdual")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let code = out.status.code().expect("exit code");
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\nstderr: {}", String::from_utf8_lossy(&out.stderr)));
    (code, v)
}

#[test]
fn branch_profile() {
    let (code, r) = report(&["profile", "--algebra", &fixture("branch_a3.alg")]);
    assert_eq!(code, 0);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["algebra"]["dim"], 5);
    let s = &r["results"][0];
    assert_eq!(s["id_left"], "1");
    assert_eq!(s["id_right"], "1");
    assert_eq!(s["fd_first_term_left"], "1");
    assert_eq!(s["fd_first_term_right"], "1");
    assert_eq!(s["one_gorenstein"], false);
    assert_eq!(s["auslander_gorenstein"], false);
    assert_eq!(s["left_quasi_auslander_gorenstein"], true);
    assert_eq!(s["right_quasi_auslander_gorenstein"], true);
}

#[test]
fn verify_all_on_a2() {
    let (code, r) = report(&["verify", "all", "--algebra", &fixture("a2.alg"), "--dim-cap", "4"]);
    assert_eq!(code, 0);
    let results = r["results"].as_array().unwrap();
    assert_eq!(results.len(), homdual::gorenstein::verifier_ids().len());
    assert!(results.iter().all(|v| v["status"] == "verified"));
}

#[test]
fn grade_of_simple_over_a2() {
    let (code, r) = report(&["grade", "--algebra", &fixture("a2.alg"), "--module", "S1"]);
    assert_eq!(code, 0);
    let g = &r["results"][0];
    assert_eq!(
        (g["grade"].as_str(), g["reduced_grade"].as_str(), g["strong_grade"].as_str()),
        (Some("1"), Some("1"), Some("1"))
    );
    assert_eq!(r["module"]["dim_vector"], serde_json::json!([1, 0]));
}

#[test]
fn every_fixture_file_verifies() {
    for name in
        ["semisimple.alg", "dual_numbers.alg", "dual_numbers_constants.alg", "a2.alg", "branch_a3.alg", "gldim2.alg"]
    {
        let (code, r) = report(&["verify", "all", "--algebra", &fixture(name)]);
        assert_eq!(code, 0, "{name}: {}", r["status"]);
    }
}

#[test]
fn fixture_files_match_library_fixtures() {
    let cases = [
        ("semisimple.alg", fixtures::semisimple()),
        ("dual_numbers.alg", fixtures::dual_numbers()),
        ("dual_numbers_constants.alg", fixtures::dual_numbers_constants()),
        ("a2.alg", fixtures::a2()),
        ("branch_a3.alg", fixtures::branch_a3()),
        ("gldim2.alg", fixtures::gldim2()),
    ];
    for (name, a) in cases {
        let (_, r) = report(&["dominant", "--algebra", &fixture(name)]);
        assert_eq!(r["algebra"]["digest"], a.digest(), "{name}");
        assert_eq!(r["algebra"]["dim"], a.dim(), "{name}");
    }
}

fn without_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

#[test]
fn reports_are_deterministic() {
    let a = fixture("gldim2.alg");
    let (_, one) = report(&["verify", "all", "--algebra", &a, "--seed", "7", "--jobs", "1"]);
    let (_, many) = report(&["verify", "all", "--algebra", &a, "--seed", "7", "--jobs", "4"]);
    let (_, again) = report(&["verify", "all", "--algebra", &a, "--seed", "7", "--jobs", "4"]);
    assert_eq!(one["results"], many["results"]);
    assert_eq!(without_time(many), without_time(again));
}

#[test]
fn exit_codes() {
    let a2 = fixture("a2.alg");
    // Caps too small to settle the grade.
    let (code, r) = report(&["grade", "--algebra", &fixture("gldim2.alg"), "--module", "S1", "--cap", "1"]);
    assert_eq!((code, r["status"].as_str()), (3, Some("inconclusive")));

    assert_eq!(run(&["grade", "--algebra", &a2]).status.code(), Some(1));
    assert_eq!(run(&["grade", "--algebra", &a2, "--module", "S7"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "nope", "--algebra", &a2]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["profile"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn parse_errors_are_positioned() {
    let path = std::env::temp_dir().join(format!("homdual-bad-{}.alg", std::process::id()));
    std::fs::write(&path, "field p = 2\nquiver\n  vertices: 1\n  a: 1 -> 2\nend\nnilpotency L = 2\n").unwrap();
    let out = run(&["profile", "--algebra", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("4:11: unknown vertex `2`"), "{err}");
}

#[test]
fn module_files_and_records() {
    let a = fixture("branch_a3.alg");
    let (_, t) = report(&["transpose", "--algebra", &a, "--module", "S1"]);
    let record = &t["results"][0]["transpose"]["record"];
    assert_eq!(record["opposite"], true);
    let path = std::env::temp_dir().join(format!("homdual-module-{}.json", std::process::id()));
    std::fs::write(&path, record.to_string()).unwrap();
    let (code, r) = report(&["purity", "--algebra", &a, "--module-file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(r["module"]["side"], "right");
    assert_eq!(r["module"]["dim_vector"], serde_json::json!([1, 1, 1]));
    // Tr S1 has the simple projective e1Λ as a submodule of smaller grade.
    assert_eq!(r["results"][0]["module"]["pure"], false);
}

#[test]
fn purity_question_has_counterexamples_over_branch_algebra() {
    let (code, r) = report(&["explore-purity-question", "--algebra", &fixture("branch_a3.alg")]);
    assert_eq!(code, 0);
    let e = &r["results"][0];
    assert_eq!(e["quasi_auslander_gorenstein"], true);
    assert!(!e["counterexamples"].as_array().unwrap().is_empty());
    let (_, r) = report(&["explore-purity-question", "--algebra", &fixture("a2.alg")]);
    assert!(r["results"][0]["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn module_commands_run() {
    let a = fixture("gldim2.alg");
    for (cmd, module) in [
        ("dims", "S1"),
        ("eval", "S2 + P1"),
        ("inj-res", "P1"),
        ("proj-res", "S1"),
        ("dclass", "P1"),
        ("transpose", "D(S3)"),
        ("purity", "syzygy(1, S1)"),
    ] {
        let (code, r) = report(&[cmd, "--algebra", &a, "--module", module]);
        assert_eq!(code, 0, "{cmd} {module}: {r}");
    }
    let (_, r) = report(&["proj-res", "--algebra", &a, "--module", "S1"]);
    assert_eq!(r["results"][0]["pd"], "2");
    for cmd in ["findim", "nakayama", "ideals", "dominant"] {
        let (code, _) = report(&[cmd, "--algebra", &a]);
        assert_eq!(code, 0, "{cmd}");
    }
}
