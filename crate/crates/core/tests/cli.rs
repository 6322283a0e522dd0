use std::process::{Command, Output};

use schubert_atlas::oracle::{ConjectureReport, Verdict};
use schubert_atlas::report::{report_from_json, rows_from_csv, to_json};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_schubert-atlas"));
    c.env_remove("SCHUBERT_ATLAS_JOBS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn classify_g2_json() {
    let o = run(&["classify", "--type", "G2", "--word", "2 1 2", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["factorial"], false);
    assert_eq!(v["q_factorial"], true);
    assert_eq!(v["gorenstein"], "no");
    assert_eq!(v["c1"], serde_json::json!(["2/3", "2"]));
}

#[test]
fn json_output_round_trips_byte_identical() {
    for (t, p, w) in [("G2", "", "2 1 2"), ("A4", "4", "3 4 1 2 3"), ("D5", "", "2 3 1 2 3 4 5 3"), ("B3", "1", "1 2 3")] {
        let o = run(&["classify", "--type", t, "--parabolic", p, "--word", w]);
        assert_eq!(code(&o), 0, "{t} {w}: {}", stderr(&o));
        let text = stdout(&o);
        let parsed = report_from_json(&text).unwrap();
        assert_eq!(to_json(&parsed).unwrap(), text);
    }
}

#[test]
fn classify_a4_parabolic_table() {
    let o = run(&["classify", "--type", "A4", "--parabolic", "4", "--word", "3 4 1 2 3", "--format", "table"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("gorenstein      yes"), "{s}");
    assert!(s.contains("fano            no"), "{s}");
    assert!(s.contains("I^P {1 2 3}"), "{s}");
}

#[test]
fn classify_a1_is_projective_line() {
    let o = run(&["classify", "--type", "A1", "--word", "1", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let rows = rows_from_csv(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].c1, "2w1");
    assert!(rows[0].factorial);
}

#[test]
fn non_reduced_word_is_rejected() {
    let o = run(&["classify", "--type", "A2", "--word", "1 1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("word not reduced"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn element_outside_coset_names_index() {
    let o = run(&["classify", "--type", "A3", "--parabolic", "1", "--word", "1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("1 in I_P"), "{}", stderr(&o));
}

#[test]
fn coerce_replaces_with_coset_rep() {
    let o = run(&["classify", "--type", "A3", "--parabolic", "1", "--word", "2 1", "--coerce", "--format", "csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = rows_from_csv(&stdout(&o)).unwrap();
    assert_eq!(rows[0].word, "2");
    let o = run(&["classify", "--type", "A2", "--word", "1 2 2", "--coerce", "--format", "csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(rows_from_csv(&stdout(&o)).unwrap()[0].word, "1");
}

#[test]
fn bad_inputs_exit_two() {
    for args in [
        &["classify", "--type", "Z3", "--word", "1"][..],
        &["classify", "--type", "A3", "--word", "1 x"],
        &["classify", "--type", "A3", "--word", "5"],
        &["classify", "--type", "A3", "--parabolic", "0", "--word", "1"],
        &["classify", "--type", "A2", "--parabolic", "1 2", "--word", ""],
        &["survey", "--type", "E9"],
        &["conjectures", "--type", "B3", "--which", "1"],
        &["conjectures", "--type", "A3", "--which", "7"],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error: "), "{args:?}");
    }
}

#[test]
fn output_file_and_jobs_env() {
    let dir = std::env::temp_dir().join(format!("schubert-atlas-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g2.csv");
    let o = bin()
        .env("SCHUBERT_ATLAS_JOBS", "2")
        .args(["survey", "--type", "G2", "--format", "csv", "-o"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let from_file = std::fs::read_to_string(&path).unwrap();
    let single = stdout(&run(&["--jobs", "1", "survey", "--type", "G2", "--format", "csv"]));
    assert_eq!(from_file, single);
    assert_eq!(rows_from_csv(&single).unwrap().len(), 12);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn a1_survey_has_one_non_identity_row() {
    let o = run(&["survey", "--type", "A1", "--format", "csv"]);
    let rows = rows_from_csv(&stdout(&o)).unwrap();
    assert_eq!(rows.iter().filter(|r| r.length > 0).count(), 1);
}

#[test]
fn g2_survey_non_factorial_rows() {
    let o = run(&["survey", "--type", "G2", "--format", "csv"]);
    let bad: Vec<String> = rows_from_csv(&stdout(&o))
        .unwrap()
        .into_iter()
        .filter(|r| !r.factorial)
        .map(|r| r.word)
        .collect();
    assert_eq!(bad, ["2 1 2", "1 2 1 2", "2 1 2 1", "2 1 2 1 2"]);
    let o = run(&["survey", "--type", "G2", "--parabolic", "2", "--format", "csv"]);
    let bad: Vec<String> = rows_from_csv(&stdout(&o))
        .unwrap()
        .into_iter()
        .filter(|r| !r.factorial)
        .map(|r| r.word)
        .collect();
    assert_eq!(bad, ["2 1", "1 2 1", "2 1 2 1"]);
}

#[test]
fn survey_max_length_and_table() {
    let o = run(&["survey", "--type", "A3", "--max-length", "2", "--format", "csv"]);
    assert_eq!(rows_from_csv(&stdout(&o)).unwrap().len(), 9);
    let o = run(&["survey", "--type", "A2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1 + 6);
}

fn conjectures(args: &[&str]) -> (i32, Vec<ConjectureReport>) {
    let mut all = vec!["conjectures"];
    all.extend_from_slice(args);
    let o = run(&all);
    (code(&o), serde_json::from_str(&stdout(&o)).expect("conjecture json"))
}

#[test]
fn conjecture_scans_verify() {
    for (t, w) in [("A3", "2"), ("D4", "3"), ("A2", "1")] {
        let (c, reports) = conjectures(&["--type", t, "--which", w]);
        assert_eq!(c, 0, "{t} {w}");
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].verdict, Verdict::Verified);
        assert!(reports[0].counterexamples.is_empty());
    }
}

#[test]
fn conjecture_defaults_follow_type() {
    let (c, reports) = conjectures(&["--type", "A3"]);
    assert_eq!(c, 0);
    assert_eq!(reports.iter().map(|r| r.conjecture).collect::<Vec<_>>(), [1, 2, 3]);
    let (_, reports) = conjectures(&["--type", "B3"]);
    assert_eq!(reports.iter().map(|r| r.conjecture).collect::<Vec<_>>(), [2]);
}

#[test]
fn b3_coxeter_deletion_counterexample_exits_one() {
    let (c, reports) = conjectures(&["--type", "B3", "--which", "2"]);
    assert_eq!(c, 1);
    assert_eq!(reports[0].verdict, Verdict::Counterexample);
    assert_eq!(reports[0].counterexamples.len(), 1);
}

#[test]
fn word_cap_truncation_exits_three() {
    let (c, reports) = conjectures(&["--type", "A3", "--which", "2", "--word-cap", "1"]);
    assert_eq!(c, 3);
    assert!(reports[0].truncated);
    assert_eq!(reports[0].verdict, Verdict::VerifiedUpToCap);
}
