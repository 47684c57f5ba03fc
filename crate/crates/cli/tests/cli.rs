use std::fs;
use std::process::{Command, Output};

use modelcat::enumerate::{count_models, enumerate_models, shapiro_table};
use modelcat::io::model_to_json;

fn modelcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modelcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = modelcat(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

#[test]
fn counts() {
    assert_eq!(ok(&["count", "--n", "4", "--what", "models"]), "126\n");
    assert_eq!(ok(&["count", "--n", "0", "--what", "premodels"]), "1\n");
    assert_eq!(ok(&["count", "--n", "3", "--what", "transfer"]), "14\n");
    assert_eq!(ok(&["count", "--n", "5", "--what", "saturated"]), "32\n");
    assert_eq!(ok(&["count", "--n", "2", "--grid", "2", "--what", "saturated"]), "115\n");
}

#[test]
fn count_matches_library_for_large_n() {
    let printed = ok(&["count", "--n", "60", "--what", "models"]);
    assert_eq!(printed.trim(), count_models(60).to_string());
}

#[test]
fn triangle_final_column() {
    let text = ok(&["triangle", "--n", "5"]);
    assert_eq!(text, shapiro_table(5).to_string());
    let sums: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit('\t').next().unwrap())
        .collect();
    assert_eq!(sums, ["1", "3", "10", "35", "126", "462"]);
}

#[test]
fn worked_bijection_example() {
    let text = ok(&["bijection", "--n", "6", "--example", "fig3"]);
    assert!(text.contains("endo: 1,2,2,2,3,6,6"), "{text}");
    assert!(text.contains("path: NNENEEENENNNEE"));
    assert_eq!(ok(&["bijection", "--example", "worked"]), text);
}

#[test]
fn bijection_check_small() {
    let text = ok(&["bijection", "--n", "4", "--check"]);
    assert!(text.contains("126 structures, 126 endomorphisms, bijective"), "{text}");
}

#[test]
fn localize_all_on_one() {
    let text = ok(&["localize", "--n", "1", "--all"]);
    assert_eq!(text.lines().count(), 3);
    let words: Vec<&str> = text.lines().map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(words, ["L0", "R0", "id"]);
}

#[test]
fn localize_target_prints_shortest_word() {
    let dir = tempfile::tempdir().unwrap();
    let target = enumerate_models(3)
        .find(|m| m.w().iter().count() == 4 + 2 && !m.is_contractible())
        .unwrap();
    let path = dir.path().join("target.json");
    fs::write(&path, serde_json::to_string(&model_to_json(&target)).unwrap()).unwrap();
    let word = ok(&["localize", "--n", "3", "--target", path.to_str().unwrap()]);
    let expected = modelcat::localize::zigzag_from_trivial(&target).unwrap();
    assert_eq!(word.trim(), expected.to_string());
}

#[test]
fn enumerate_output_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let text = ok(&["enumerate", "--n", "2"]);
    assert_eq!(text.lines().count(), 10);
    for (i, line) in text.lines().enumerate() {
        let path = dir.path().join(format!("{i}.json"));
        fs::write(&path, line).unwrap();
        let report = ok(&["verify", path.to_str().unwrap()]);
        assert!(report.starts_with("VALID\n"), "{report}");
    }
}

#[test]
fn verify_classifies_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trivial.json");
    fs::write(
        &path,
        r#"{"lattice":{"kind":"chain","n":2},"weq":[],"cof":[[0,1],[0,2],[1,2]],"fib":[[0,1],[0,2],[1,2]]}"#,
    )
    .unwrap();
    let report = ok(&["verify", path.to_str().unwrap()]);
    assert_eq!(report, "VALID\nclass: trivial\nhomotopy: [2]\n");
}

#[test]
fn premodel_failing_two_of_three_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cell.json");
    fs::write(
        &path,
        r#"{"lattice":{"kind":"chain","n":2},"weq":[[0,2],[1,2]],"cof":[[0,1],[0,2],[1,2]],"fib":[[0,1]]}"#,
    )
    .unwrap();
    let out = modelcat(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("axiom: 2-out-of-3"), "{text}");
    assert!(text.contains("witness: 0->1 1->2 0->2"), "{text}");
}

#[test]
fn malformed_json_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\"lattice\": ").unwrap();
    assert_eq!(modelcat(&["verify", path.to_str().unwrap()]).status.code(), Some(2));
    fs::write(&path, r#"{"lattice":{"kind":"chain","n":1},"weq":[[1,0]],"cof":[],"fib":[]}"#).unwrap();
    assert_eq!(modelcat(&["verify", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(modelcat(&["count", "--n", "2"]).status.code(), Some(2));
    assert_eq!(modelcat(&["count", "--what", "models"]).status.code(), Some(2));
    assert_eq!(modelcat(&["count", "--n", "x", "--what", "models"]).status.code(), Some(2));
    assert_eq!(modelcat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(modelcat(&["triangle", "--n", "3", "--format", "dot"]).status.code(), Some(2));
}

#[test]
fn graph_on_two_has_ten_nodes() {
    let dot = ok(&["graph", "--n", "2", "--format", "dot"]);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=\"") && !l.contains("->")).count(), 10);
    let quillen = ok(&["graph", "--n", "2", "--quillen"]);
    assert!(quillen.contains("dashed"));
}

#[test]
fn export_writes_one_file_per_structure() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("diagrams");
    let text = ok(&["export", "--n", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(text, "126\n");
    assert_eq!(fs::read_dir(&out).unwrap().count(), 126);
    let again = dir.path().join("again");
    ok(&["export", "--n", "4", "--out", again.to_str().unwrap()]);
    for entry in fs::read_dir(&out).unwrap() {
        let entry = entry.unwrap();
        let other = fs::read(again.join(entry.file_name())).unwrap();
        assert_eq!(fs::read(entry.path()).unwrap(), other);
    }
}

#[test]
fn export_trivial_has_no_highlighted_edges() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trivial.json");
    fs::write(
        &path,
        r#"{"lattice":{"kind":"chain","n":2},"weq":[],"cof":[[0,1],[0,2],[1,2]],"fib":[[0,1],[0,2],[1,2]]}"#,
    )
    .unwrap();
    let dot = ok(&["export", "--input", path.to_str().unwrap()]);
    assert!(!dot.contains("orange"), "{dot}");
}

#[test]
fn export_to_unwritable_target_fails() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let out = modelcat(&["export", "--n", "1", "--out", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_agrees_with_enumeration() {
    assert_eq!(ok(&["oracle", "--n", "3"]), "35\n");
    assert_eq!(ok(&["oracle", "--n", "1", "--grid", "1"]), "23\n");
    assert_eq!(ok(&["oracle", "--n", "4", "--wfs"]), "42\n");
    assert_eq!(modelcat(&["oracle", "--n", "5", "--cap", "4"]).status.code(), Some(1));
}

#[test]
fn jobs_flag_is_accepted() {
    assert_eq!(ok(&["--jobs", "2", "count", "--n", "3", "--what", "models"]), "35\n");
}
