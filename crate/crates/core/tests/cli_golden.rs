//! CLI integration tests beyond the acceptance goldens: the remaining verbs,
//! JSON/table agreement, and diagnostics. Golden files live in
//! `tests/golden/`; fixtures in `tests/fixtures/`.

use std::path::PathBuf;

use fuzzy_evidence::{belief, cli, legacy, Bpa, Frame, FuzzySet};

fn path(relative: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join(relative)
        .to_str()
        .unwrap()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(args.iter().map(|s| s.to_string()), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn run_ok(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "cli failed: {err}");
    out
}

fn golden(relative: &str) -> String {
    std::fs::read_to_string(path(relative)).unwrap()
}

#[test]
fn combine_textbook_pair_matches_goldens_in_both_formats() {
    let left = path("tests/fixtures/textbook_m1.json");
    let right = path("tests/fixtures/textbook_m2.json");
    let json = run_ok(&["fe", "combine", "--left", &left, "--right", &right]);
    assert_eq!(json, golden("tests/golden/combine_textbook.json"));
    // The spec'd hand values print exactly: products of grid masses 0.6*0.5
    // and 0.4*0.5 are exact in binary, and the conflict is exactly zero.
    assert!(json.contains("\"mass\":0.3") && json.contains("\"mass\":0.2"));
    assert!(json.contains("\"conflict_mass\":0.0"));

    let table = run_ok(&[
        "fe", "combine", "--left", &left, "--right", &right, "--format", "table",
    ]);
    assert_eq!(table, golden("tests/golden/combine_textbook.txt"));
}

#[test]
fn interval_on_vacuous_bpa_is_the_unit_interval() {
    let bpa = path("tests/fixtures/vacuous.json");
    let query = path("tests/fixtures/query_b.json");
    let json = run_ok(&["fe", "interval", "--bpa", &bpa, "--query", &query]);
    assert_eq!(json, "{\"bel\":0.0,\"pls\":1.0}\n");
    let table = run_ok(&[
        "fe", "interval", "--bpa", &bpa, "--query", &query, "--format", "table",
    ]);
    assert_eq!(table, golden("tests/golden/interval_vacuous.txt"));
    assert_eq!(table, "[0.00, 1.00]\n");
}

#[test]
fn induce_matches_golden_and_masses_follow_the_distribution() {
    let dist = path("tests/fixtures/dist.json");
    let relation = path("tests/fixtures/relation.json");
    let table = run_ok(&[
        "fe",
        "induce",
        "--dist",
        &dist,
        "--relation",
        &relation,
        "--format",
        "table",
    ]);
    assert_eq!(table, golden("tests/golden/induce.txt"));

    let json = run_ok(&["fe", "induce", "--dist", &dist, "--relation", &relation]);
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    let masses: Vec<f64> = parsed["focals"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["mass"].as_f64().unwrap())
        .collect();
    assert_eq!(masses, vec![0.5, 0.3, 0.2]);
}

/// `compare` output is checked against the library, not against stored bytes:
/// the earlier proposals it reports are reimplementations kept for side-by-side
/// reading, so the table's authority is the library itself.
#[test]
fn compare_reports_all_five_measures_consistently() {
    let bpa_path = path("tests/fixtures/ex441_bpa.json");
    let query_path = path("tests/fixtures/query_b.json");
    let json = run_ok(&["fe", "compare", "--bpa", &bpa_path, "--query", &query_path]);
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();

    let frame = Frame::new((1..=10).map(|i| i.to_string())).unwrap();
    let a = FuzzySet::from_grades(
        frame.clone(),
        &[
            ("1", 0.25),
            ("2", 0.5),
            ("3", 0.75),
            ("4", 1.0),
            ("5", 1.0),
            ("6", 0.75),
            ("7", 0.5),
            ("8", 0.25),
        ],
    )
    .unwrap();
    let c = FuzzySet::from_grades(
        frame.clone(),
        &[("5", 0.5), ("6", 1.0), ("7", 0.8), ("8", 0.4)],
    )
    .unwrap();
    let b = FuzzySet::from_grades(
        frame.clone(),
        &[
            ("2", 0.5),
            ("3", 1.0),
            ("4", 1.0),
            ("5", 1.0),
            ("6", 0.9),
            ("7", 0.6),
            ("8", 0.3),
        ],
    )
    .unwrap();
    let m = Bpa::new(frame, vec![(a, 0.5), (c, 0.5)]).unwrap();

    let close = |key: &str, want: f64| {
        let got = parsed[key]
            .as_f64()
            .unwrap_or_else(|| panic!("missing key {key}"));
        assert!((got - want).abs() < 1e-9, "{key}: {got} vs {want}");
    };
    close("yen", belief::bel(&m, &b).unwrap());
    close("zadeh_EC", legacy::expected_certainty(&m, &b).unwrap());
    close(
        "ishizuka",
        legacy::bel_via_inclusion(legacy::MeasureKind::Ishizuka, &m, &b).unwrap(),
    );
    close(
        "yager",
        legacy::bel_via_inclusion(legacy::MeasureKind::Yager, &m, &b).unwrap(),
    );
    close(
        "ogawa",
        legacy::bel_via_inclusion(legacy::MeasureKind::Ogawa, &m, &b).unwrap(),
    );
    // The generalized value on the worked instance, for orientation.
    close("yen", 0.57);

    let table = run_ok(&[
        "fe",
        "compare",
        "--bpa",
        &bpa_path,
        "--query",
        &query_path,
        "--format",
        "table",
    ]);
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("measure   bel"));
    let names: Vec<&str> = lines
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(names, ["yen", "zadeh_EC", "ishizuka", "yager", "ogawa"]);
}

#[test]
fn json_and_table_modes_agree_before_rounding() {
    let bpa = path("tests/fixtures/ex441_bpa.json");
    let query = path("tests/fixtures/query_b.json");
    let json = run_ok(&["fe", "bel", "--bpa", &bpa, "--query", &query]);
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    let value = parsed["bel"].as_f64().unwrap();
    let table = run_ok(&[
        "fe", "bel", "--bpa", &bpa, "--query", &query, "--format", "table", "--digits", "12",
    ]);
    assert_eq!(table.trim_end(), format!("{value:.12}"));
}

#[test]
fn decompose_json_lists_the_levels() {
    let set = path("tests/fixtures/set_c.json");
    let json = run_ok(&["fe", "decompose", "--set", &set]);
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    let levels = parsed["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 4);
    assert_eq!(levels[0]["cut"].as_array().unwrap().len(), 4);
    assert_eq!(levels[3]["alpha"].as_f64().unwrap(), 1.0);
    assert_eq!(levels[3]["cut"][0], "6");
}

#[test]
fn invalid_inputs_name_the_violated_invariant() {
    let dir = std::env::temp_dir().join(format!("fe-golden-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let bad_grade = dir.join("bad_grade.json");
    std::fs::write(&bad_grade, r#"{"frame": ["a"], "grades": {"a": 1.5}}"#).unwrap();
    let bpa = path("tests/fixtures/vacuous.json");
    let (code, _, err) = run(&["fe", "decompose", "--set", bad_grade.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("grade"), "diagnostic: {err}");

    let subnormal = dir.join("subnormal_bpa.json");
    std::fs::write(
        &subnormal,
        r#"{"frame": ["a", "b"], "focals": [{"grades": {"a": 0.5}, "mass": 1.0}]}"#,
    )
    .unwrap();
    let query = path("tests/fixtures/query_b.json");
    let (code, _, err) = run(&[
        "fe",
        "bel",
        "--bpa",
        subnormal.to_str().unwrap(),
        "--query",
        &query,
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("must be normal"), "diagnostic: {err}");

    // Frame mismatch between bpa and query.
    let (code, _, err) = run(&[
        "fe",
        "bel",
        "--bpa",
        &bpa,
        "--query",
        bad_grade.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(
        err.contains("grade") || err.contains("frame"),
        "diagnostic: {err}"
    );
}

#[test]
fn oracle_verb_reports_agreement_with_samples() {
    let bpa = path("tests/fixtures/ex441_bpa.json");
    let query = path("tests/fixtures/query_b.json");
    let json = run_ok(&[
        "fe",
        "oracle",
        "--bpa",
        &bpa,
        "--query",
        &query,
        "--samples",
        "64",
        "--seed",
        "3",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed["agree"], true);
    assert_eq!(parsed["samples"], 64);
    assert_eq!(parsed["samples_in_bounds"], 64);
    assert!((parsed["oracle_bel"].as_f64().unwrap() - 0.57).abs() < 1e-9);

    // Without --samples the sampling keys stay absent.
    let json = run_ok(&["fe", "oracle", "--bpa", &bpa, "--query", &query]);
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(parsed.get("samples").is_none());
}
