use std::fs;
use std::path::Path;

use serde_json::Value;
use vicalign_cli::run;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("vicalign").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

const DOC: &str =
    "A title line\n\nThe cat sat on the mat.\nIt was warm.\n\nRain fell in the night.\n";

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn data_lines(s: &str) -> Vec<&str> {
    s.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn identical_documents_align_to_identity() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", DOC);
    let (code, out, _) = invoke(&["align", "--src", &a, "--tgt", &a]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# src_par\tsrc_sent\ttgt_par\ttgt_sent\tscore\n"));
    assert_eq!(
        data_lines(&out),
        [
            "1\t1\t1\t1\t1.000000",
            "2\t1\t2\t1\t1.000000",
            "2\t2\t2\t2\t1.000000",
            "3\t1\t3\t1\t1.000000"
        ]
    );
}

#[test]
fn out_of_range_alpha_is_a_usage_error_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", DOC);
    let out_path = dir.path().join("out.tsv");
    let (code, out, err) = invoke(&[
        "align",
        "--src",
        &a,
        "--tgt",
        &a,
        "--alpha-sentence",
        "1.5",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("1.5"), "{err}");
    assert!(!out_path.exists());
}

#[test]
fn missing_input_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", DOC);
    let missing = dir.path().join("nope.txt");
    let out_path = dir.path().join("out.tsv");
    let (code, _, err) = invoke(&[
        "align",
        "--src",
        &a,
        "--tgt",
        missing.to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: reading"), "{err}");
    assert!(!out_path.exists());
}

#[test]
fn empty_document_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", DOC);
    let e = write(dir.path(), "e.txt", "\n\n");
    let (code, _, _) = invoke(&["align", "--src", &a, "--tgt", &e]);
    assert_eq!(code, 2);
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(invoke(&["--help"]).0, 0);
    assert_eq!(invoke(&["--version"]).0, 0);
    assert_eq!(invoke(&[]).0, 1);
}

#[test]
fn eval_reports_half_precision_and_recall() {
    let dir = tempfile::tempdir().unwrap();
    let pred = write(dir.path(), "pred.tsv", "1\t1\t1\t1\n1\t2\t1\t2\n");
    let gold = write(dir.path(), "gold.tsv", "# header\n1\t1\t1\t1\n2\t1\t2\t1\n");
    let (code, out, _) = invoke(&["eval", "--pred", &pred, "--gold", &gold]);
    assert_eq!(code, 0);
    assert!(
        out.starts_with("precision\t0.500000\nrecall\t0.500000\nf1\t0.500000\n"),
        "{out}"
    );

    let (_, json, _) = invoke(&["eval", "--pred", &pred, "--gold", &gold, "--format", "json"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["f1"], 0.5);
    assert_eq!(v["true_positives"], 1);
}

#[test]
fn tsv_and_json_carry_the_same_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = invoke(&["synth", "--seed", "3", "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let src = dir.path().join("source.txt");
    let tgt = dir.path().join("target.txt");
    let (s, t) = (src.to_str().unwrap(), tgt.to_str().unwrap());
    let (_, tsv, _) = invoke(&["align", "--src", s, "--tgt", t]);
    let (_, json, _) = invoke(&["align", "--src", s, "--tgt", t, "--format", "json"]);

    let v: Value = serde_json::from_str(&json).unwrap();
    let mut from_json = Vec::new();
    for g in v["groups"].as_array().unwrap() {
        for p in g["pairs"].as_array().unwrap() {
            from_json.push(format!(
                "{}\t{}\t{}\t{}\t{:.6}",
                p["src_par"],
                p["src_sent"],
                p["tgt_par"],
                p["tgt_sent"],
                p["score"].as_f64().unwrap()
            ));
        }
    }
    assert!(!from_json.is_empty());
    assert_eq!(data_lines(&tsv), from_json);
}

#[test]
fn synth_writes_three_files_and_gold_parses() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("nested/out");
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"split_rate": 0.5, "merge_rate": 0.0}"#,
    );
    let (code, out, _) = invoke(&[
        "synth",
        "--seed",
        "9",
        "--spec",
        &spec,
        "-o",
        target.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
    for name in ["source.txt", "target.txt", "gold.tsv"] {
        assert!(target.join(name).is_file(), "{name}");
    }
    let gold = target.join("gold.tsv");
    let (code, out, _) = invoke(&[
        "eval",
        "--pred",
        gold.to_str().unwrap(),
        "--gold",
        gold.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("f1\t1.000000"));

    let bad = write(dir.path(), "bad.json", r#"{"split_rat": 0.5}"#);
    assert_eq!(
        invoke(&["synth", "--spec", &bad, "-o", target.to_str().unwrap()]).0,
        2
    );
}

#[test]
fn dump_matrices_lists_every_cell() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", DOC);
    let dump = dir.path().join("m.tsv");
    let (code, _, _) = invoke(&[
        "align",
        "--src",
        &a,
        "--tgt",
        &a,
        "--dump-matrices",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&dump).unwrap();
    assert!(text.starts_with("# paragraph matrix\n"));
    assert_eq!(text.matches("# sentence matrix").count(), 3);
    // 3x3 paragraph cells, then 1 + 4 + 1 sentence cells
    assert_eq!(data_lines(&text).len(), 9 + 6);
    assert!(data_lines(&text).contains(&"2\t2\t1.000000"));
}

#[test]
fn paragraph_groups_and_baseline() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", DOC);
    let (code, out, _) = invoke(&["align-paragraphs", "--src", &a, "--tgt", &a]);
    assert_eq!(code, 0);
    assert_eq!(
        data_lines(&out),
        [
            "1\t1\t1\t1\t1-1\t1.000000",
            "2\t2\t2\t2\t1-1\t1.000000",
            "3\t3\t3\t3\t1-1\t1.000000"
        ]
    );

    let (code, out, _) = invoke(&[
        "baseline-jaccard",
        "--src",
        &a,
        "--tgt",
        &a,
        "--threshold",
        "0.99",
    ]);
    assert_eq!(code, 0);
    assert_eq!(data_lines(&out).len(), 4);
}
