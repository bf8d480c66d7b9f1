use std::fs;
use std::path::{Path, PathBuf};

use pushout::corpus::{self, CorpusCase};
use pushout::{run, EXIT_DISCREPANCY, EXIT_INPUT, EXIT_OK};
use pushout_core::analyzer::{Criterion, DecompositionReport};
use pushout_core::metric::{Distance, DistanceSpace};

fn corpus_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(format!("{name}.csv"))
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["pushout"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write_cover(dir: &Path, case: &CorpusCase) -> PathBuf {
    let path = dir.join(format!("{}-cover.json", case.name));
    let json = serde_json::json!({ "X": case.cover.x, "Y": case.cover.y });
    fs::write(&path, json.to_string()).unwrap();
    path
}

fn decompose(case: &CorpusCase, dir: &Path, format: &str) -> (i32, String) {
    let cover = write_cover(dir, case);
    let input = corpus_file(case.name);
    let r = case.radius.to_string();
    let (code, out, err) = invoke(&[
        "decompose",
        input.to_str().unwrap(),
        "-r",
        &r,
        "--cover",
        cover.to_str().unwrap(),
        "--field",
        "q",
        "--field",
        "zp:2",
        "--field",
        "z",
        "--format",
        format,
    ]);
    assert!(err.is_empty(), "{err}");
    (code, out)
}

/// Status words per criterion id, read back from the text rendering.
fn text_verdicts(text: &str) -> Vec<(String, String)> {
    let start = text.find("\nverdicts\n").unwrap();
    text[start..]
        .lines()
        .skip(2)
        .take_while(|l| l.starts_with("  "))
        .filter(|l| !l.starts_with("        "))
        .map(|l| {
            let mut parts = l.split_whitespace();
            let status = parts.next().unwrap().to_string();
            let id = parts.next().unwrap().to_string();
            (id, status)
        })
        .collect()
}

#[test]
fn json_report_round_trips_and_matches_text() {
    let dir = tempfile::tempdir().unwrap();
    for case in corpus::cases() {
        let (code, json) = decompose(&case, dir.path(), "json");
        assert_eq!(code, EXIT_OK, "{}", case.name);
        let report: DecompositionReport = serde_json::from_str(&json).unwrap();
        let again = serde_json::to_string_pretty(&report).unwrap();
        assert_eq!(
            serde_json::from_str::<DecompositionReport>(&again).unwrap(),
            report
        );
        assert_eq!(report.verdicts.len(), Criterion::ALL.len());

        let (_, text) = decompose(&case, dir.path(), "text");
        let from_json: Vec<(String, String)> = report
            .verdicts
            .iter()
            .map(|v| {
                (
                    v.criterion.id().to_string(),
                    pushout::render::status_word(&v.hypothesis).to_string(),
                )
            })
            .collect();
        assert_eq!(text_verdicts(&text), from_json, "{}", case.name);
    }
}

#[test]
fn corpus_runs_clean() {
    let (code, out, _) = invoke(&["corpus", "run"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("6 of 6 cases passed"));
    let (code, out, _) = invoke(&["corpus", "list", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let names: Vec<String> = serde_json::from_str(&out).unwrap();
    assert_eq!(names.len(), 6);
}

fn with_distance(space: &DistanceSpace, a: &str, b: &str, d: Distance) -> DistanceSpace {
    let i = space.index_of(a).unwrap() as usize;
    let j = space.index_of(b).unwrap() as usize;
    let mut m = space.matrix().to_vec();
    m[i][j] = d.clone();
    m[j][i] = d;
    DistanceSpace::new(space.labels().to_vec(), m).unwrap()
}

#[test]
fn corrupted_distance_is_caught() {
    let mut case = corpus::find("eight-pt-s3").unwrap();
    case.space = with_distance(&case.space, "a11", "a22", Distance::from_integer(9));
    let outcome = corpus::run_case(&case);
    assert!(!outcome.passed());
    assert!(
        outcome
            .failures
            .iter()
            .any(|f| f.starts_with("homology mismatch")),
        "{:?}",
        outcome.failures
    );
}

#[test]
fn exit_codes() {
    let nine = corpus_file("nine-pt-circle");
    let nine = nine.to_str().unwrap();
    let (code, _, err) = invoke(&["decompose", nine, "-r", "3"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("cover"));
    let (code, _, _) = invoke(&["vr", "/nonexistent/input.csv", "-r", "1"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = invoke(&["vr", nine]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = invoke(&["homology", nine, "-r", "3", "--field", "zp:4"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = invoke(&["frobnicate"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    assert_ne!(EXIT_DISCREPANCY, EXIT_OK);
}

#[test]
fn cover_naming_an_unknown_point_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let cover = dir.path().join("cover.json");
    fs::write(&cover, r#"{"X":["z1","zz"],"Y":["z1"]}"#).unwrap();
    let input = corpus_file("nine-pt-circle");
    let (code, _, err) = invoke(&[
        "decompose",
        input.to_str().unwrap(),
        "-r",
        "3",
        "--cover",
        cover.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("zz"), "{err}");
}

fn vr_counts(file: &Path, r: &str) -> Vec<usize> {
    let (code, out, err) = invoke(&["vr", file.to_str().unwrap(), "-r", r, "--format", "json"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    serde_json::from_value(v["counts"].clone()).unwrap()
}

#[test]
fn vr_counts_on_the_circle() {
    let nine = corpus_file("nine-pt-circle");
    assert_eq!(&vr_counts(&nine, "1")[..2], &[9, 9]);
    assert_eq!(&vr_counts(&nine, "0")[..2], &[9, 0]);
    assert_eq!(&vr_counts(&nine, "4")[..2], &[9, 36]);
    assert_eq!(vr_counts(&nine, "3"), vec![9, 27, 30, 9, 0]);
}

fn betti(file: &Path, r: Option<&str>, field: &str) -> Vec<usize> {
    let mut args = vec![
        "homology",
        file.to_str().unwrap(),
        "--field",
        field,
        "--format",
        "json",
    ];
    if let Some(r) = r {
        args.extend(["-r", r]);
    }
    let (code, out, err) = invoke(&args);
    assert_eq!(code, EXIT_OK, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    v["profiles"][0]["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["rank"].as_u64().unwrap() as usize)
        .collect()
}

#[test]
fn homology_subcommand() {
    let nine = corpus_file("nine-pt-circle");
    assert_eq!(betti(&nine, Some("3"), "q"), vec![0, 0, 2, 0, 0]);
    let eight = corpus_file("eight-pt-s3");
    assert_eq!(betti(&eight, Some("8"), "zp:2")[..4], [0, 0, 0, 1]);

    let dir = tempfile::tempdir().unwrap();
    let sphere = dir.path().join("sphere.json");
    fs::write(&sphere, r#"{"facets":[[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#).unwrap();
    assert_eq!(betti(&sphere, None, "z"), vec![0, 0, 1, 0, 0]);
    let (_, text, _) = invoke(&["homology", sphere.to_str().unwrap(), "--field", "zp:3"]);
    assert!(text.contains("(0, 0, 1, 0, 0)"), "{text}");
}

#[test]
fn decompose_reads_cover_and_radius_from_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("square.json");
    fs::write(
        &doc,
        r#"{"points":["x","a","b","y"],
            "distances":[[0,1,1,2],[1,0,2,1],[1,2,0,1],[2,1,1,0]],
            "radius":1,
            "cover":{"X":["x","a","b"],"Y":["a","b","y"]}}"#,
    )
    .unwrap();
    let (code, out, err) = invoke(&["decompose", doc.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let report: DecompositionReport = serde_json::from_str(&out).unwrap();
    assert!(report
        .verdict(Criterion::EdgeIntersection)
        .unwrap()
        .hypothesis
        .holds());
    assert_eq!(report.cover.radius.as_deref(), Some("1"));
}

#[test]
fn facet_input_with_a_cover() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("k.json");
    fs::write(
        &doc,
        r#"{"facets":[["p","q","s"],["q","s","t"]],"cover":{"X":["p","q","s"],"Y":["q","s","t"]}}"#,
    )
    .unwrap();
    let (code, out, err) = invoke(&["decompose", doc.to_str().unwrap(), "--no-verify"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("cross simplices (complete): none"), "{out}");
    assert!(!out.contains("verification"));
}
