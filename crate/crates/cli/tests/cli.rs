use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lieposet"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

/// Compares against `tests/golden/<name>`; set `UPDATE_GOLDEN=1` to rewrite.
fn golden(name: &str, args: &[&str]) {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let got = stdout(&o);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(got, want, "output of {args:?} drifted from {name}");
}

#[test]
fn golden_poset() {
    golden("poset_sphere1.txt", &["poset", "--family", "sphere:1"]);
}

#[test]
fn golden_nerve() {
    golden("nerve_sphere2.txt", &["nerve", "--family", "sphere:2"]);
}

#[test]
fn golden_algebra() {
    golden("algebra_sl3.txt", &["algebra", "--poset", &data("sl3_example.json")]);
}

#[test]
fn golden_cohomology_chain3_trivial() {
    golden(
        "cohomology_chain3_trivial_fp5.txt",
        &["cohomology", "--family", "chain:3", "--module", "trivial", "--field", "fp:5"],
    );
}

#[test]
fn golden_cohomology_sphere1_adjoint() {
    golden("cohomology_sphere1_adjoint.txt", &["cohomology", "--family", "sphere:1"]);
}

#[test]
fn golden_verify() {
    golden("verify_sphere1.txt", &["verify", "--family", "sphere:1", "--field", "q"]);
}

#[test]
fn golden_deform_02() {
    golden("deform_sphere2_02.txt", &["deform", "--family", "sphere:2", "--type", "02", "--field", "q"]);
}

#[test]
fn golden_deform_20_specialized() {
    golden(
        "deform_sl3_20_t1.txt",
        &["deform", "--poset", &data("sl3_example.json"), "--type", "20", "--central", "1,2", "--specialize", "t=1"],
    );
}

#[test]
fn chain3_trivial_dims() {
    let o = run(&["cohomology", "--family", "chain:3", "--module", "trivial", "--field", "fp:5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dims: Vec<u64> =
        v["report"]["degrees"].as_array().unwrap().iter().map(|d| d["dim_h"].as_u64().unwrap()).collect();
    assert_eq!(&dims[..3], &[1, 2, 1]);
    assert!(dims[3..].iter().all(|&d| d == 0));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["cohomology", "--family", "sphere:2", "--max-degree", "3", "--json"];
    let one = bin().args(args).env("LIEPOSET_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("LIEPOSET_THREADS", "4").output().unwrap();
    let again = bin().args(args).env("LIEPOSET_THREADS", "4").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);
}

#[test]
fn poset_json_round_trips() {
    let first = run(&["poset", "--family", "sphere:2", "--json"]);
    let dir = std::env::temp_dir().join(format!("lieposet-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("sphere2.json");
    std::fs::write(&file, &first.stdout).unwrap();
    let second = run(&["poset", "--poset", file.to_str().unwrap(), "--json"]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn json_outputs_parse() {
    for args in [
        vec!["nerve", "--family", "chain:3", "--json"],
        vec!["algebra", "--family", "sphere:1", "--json"],
        vec!["verify", "--family", "chain:3", "--json", "--samples", "5"],
        vec!["deform", "--family", "sphere:1", "--type", "11", "--json"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn timings_only_when_requested() {
    let plain = stdout(&run(&["nerve", "--family", "sphere:1"]));
    assert!(!plain.contains("runtime"));
    let timed = stdout(&run(&["nerve", "--family", "sphere:1", "--timings"]));
    assert!(timed.contains("runtime:"));
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["cohomology"],
        &["cohomology", "--family", "chain:3", "--poset", "x.json"],
        &["cohomology", "--family", "chain:5", "--field", "fp:5"],
        &["cohomology", "--family", "chain:3", "--field", "fp:4"],
        &["cohomology", "--family", "hexagon:3"],
        &["deform", "--family", "chain:3", "--type", "20"],
        &["deform", "--family", "chain:3", "--type", "11", "--cochain", "1-2:1"],
        &["frobnicate"],
    ];
    for args in cases {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    let o = bin().args(["poset", "--family", "chain:3"]).env("LIEPOSET_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn small_characteristic_message_names_the_hypothesis() {
    let o = run(&["algebra", "--family", "sphere:1", "--field", "fp:3"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("greater than N"), "{err}");
}

#[test]
fn zero_xi_gives_undeformed_bracket() {
    let o = run(&["deform", "--family", "sphere:1", "--type", "11", "--xi", "0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("infinitesimal class: zero"));
}

#[test]
fn help_exits_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["deform", "--help"]).status.code(), Some(0));
}

#[test]
fn ideal_weight_zero_complex_matches_the_nerve() {
    let o = run(&["cohomology", "--family", "sphere:1", "--acting", "k", "--weight-zero", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dims: Vec<u64> =
        v["report"]["degrees"].as_array().unwrap().iter().map(|d| d["dim_h"].as_u64().unwrap()).collect();
    // reduced cohomology of a circle
    assert_eq!(dims, vec![0, 1, 0, 0, 0]);
    assert_eq!(v["report"]["euler_characteristic"], -1);
}
