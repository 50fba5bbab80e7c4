use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mols(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mols")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn identical_squares_are_not_orthogonal() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "twins.mols",
        "mols n=3 count=2\n1 2 3\n2 3 1\n3 1 2\n\n1 2 3\n2 3 1\n3 1 2\n",
    );
    let out = mols(&["verify-mols", &f]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("orthogonality"));
}

#[test]
fn non_latin_file_names_the_row() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.mols", "mols n=3 count=1\n1 2 3\n2 2 1\n3 1 2\n");
    let out = mols(&["verify-mols", &f, "--format", "json"]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let detail = v["violations"][0]["detail"].as_str().unwrap();
    assert!(detail.contains("row 2"), "{detail}");
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "x.mols", "mols n=3 count=1\n1 2 3\n2 3 1\n3 1 2");
    assert_eq!(code(&mols(&["verify-mols", &f])), 2);
    assert_eq!(code(&mols(&["verify-pa", "no-such-dataset"])), 2);
    assert_eq!(code(&mols(&["verify-pa", "n45-dm"])), 2);
    assert_eq!(code(&mols(&["datasets", "nope"])), 2);
    assert_eq!(code(&mols(&["frobnicate"])), 2);
}

#[test]
fn datasets_listing() {
    let out = mols(&["datasets", "--json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["n54-pa", "n96-pa", "n108-dm", "n45-dm"]);
    let out = mols(&["datasets", "n45-dm"]);
    assert_eq!(stdout(&out), mols_core::datasets::embedded_text("n45-dm").unwrap());
}

#[test]
fn json_reports_are_thread_count_invariant() {
    let one = mols(&["verify-pa", "n54-pa", "--build", "--format", "json", "--threads", "1"]);
    let four = mols(&["verify-pa", "n54-pa", "--build", "--format", "json", "--threads", "4"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    assert!(!stdout(&one).contains("wall"));
}

#[test]
fn build_output_round_trips_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    for (format, file) in [("mols", "a.mols"), ("json", "a.json")] {
        let path = dir.path().join(file);
        let p = path.to_str().unwrap();
        let out = mols(&["build-mols", "n54-pa", "--format", format, "--out", p]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let text = std::fs::read_to_string(&path).unwrap();
        if format == "mols" {
            assert!(text.starts_with("mols n=54 count=8\n"));
        }
        let check = mols(&["verify-mols", p]);
        assert_eq!(code(&check), 0);
    }
}

#[test]
fn deleted_representative_fails() {
    let dir = tempfile::tempdir().unwrap();
    let text = mols_core::datasets::embedded_text("n54-pa").unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let at = lines.iter().rposition(|l| l.starts_with("representative")).unwrap();
    lines.remove(at);
    while lines.get(at).is_some_and(|l| l.starts_with(' ')) {
        lines.remove(at);
    }
    let f = write(dir.path(), "short.txt", &(lines.join("\n") + "\n"));
    let out = mols(&["verify-pa", &f, "--format", "json"]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["facts"]["codeSize"], 405);
}

#[test]
fn unverified_output_is_never_written() {
    let dir = tempfile::tempdir().unwrap();
    let text = mols_core::datasets::embedded_text("n45-dm")
        .unwrap()
        .replacen("column (2,2,1)", "column (3,2,1)", 1);
    let f = write(dir.path(), "bad-dm.txt", &text);
    let target = dir.path().join("out.mols");
    let out = mols(&["build-mols", &f, "--out", target.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(!target.exists());

    let out = mols(&["verify-dm", &f]);
    assert_eq!(code(&out), 1);
    let report = stdout(&out);
    assert!(report.contains("occurs more than once"), "{report}");
    assert!(report.contains("transcription"));
}
