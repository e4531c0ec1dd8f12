//! The command-line front end: exit codes, formats, schema and determinism.

use std::io::Write;

use serde_json::Value;
use tetratile::cli::{self, Output};

fn run(args: &[&str]) -> Output {
    let mut argv = vec!["tetratile"];
    argv.extend_from_slice(args);
    cli::run(argv)
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/report.schema.json");
    let value: Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::compile(&value).expect("schema compiles")
}

fn assert_valid(out: &Output) {
    let v = json(out);
    let s = schema();
    let msgs: Vec<String> = match s.validate(&v) {
        Ok(()) => vec![],
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    assert!(msgs.is_empty(), "report violates schema: {msgs:?}");
}

#[test]
fn quarter_member_is_ruled_out_by_the_lp() {
    let out = run(&["analyze", "--angles", "7/12,5/12,5/12,5/12,1/4,1/4"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    let e = &v["entries"][0];
    assert_eq!(e["aggregate"]["verdict"], "DoesNotTile");
    assert!(e["aggregate"]["reasons"]
        .as_array()
        .unwrap()
        .contains(&Value::from("crtl")));
    let y: Vec<&str> = e["crtl"]["certificate"]["y"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    assert_eq!(y.len(), 6);
    assert_valid(&out);
}

#[test]
fn third_member_is_inconclusive() {
    let out = run(&["analyze", "--angles", "1/2,1/2,1/3,1/3,1/3,1/3"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        json(&out)["entries"][0]["aggregate"]["verdict"],
        "Inconclusive"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["analyze", "--angles", "1/2,1/2,1/2,1/2,1/2,1/2"]).code,
        3
    );
    assert_eq!(run(&["analyze", "--angles", "1/2,1/2"]).code, 2);
    assert_eq!(
        run(&["analyze", "--angles", "1/2,1/2,1/3,1/3,1/3,x"]).code,
        2
    );
    assert_eq!(
        run(&["analyze", "--angles", "3/2,1/2,1/3,1/3,1/3,1/3"]).code,
        2
    );
    assert_eq!(run(&["--precision", "8", "families", "gen"]).code, 2);
    assert_eq!(run(&["--format", "xml", "families", "gen"]).code, 2);
    assert_eq!(run(&["catalog", "/nonexistent/catalog.json"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn builtin_catalogs() {
    let a40 = run(&["catalog", "A40"]);
    assert_eq!(a40.code, 0);
    assert_eq!(json(&a40)["summary"]["inconclusive"], 40);
    assert_valid(&a40);

    let extra = run(&["catalog", "extra2"]);
    assert_eq!(extra.code, 0);
    let v = json(&extra);
    assert_eq!(v["summary"]["does_not_tile"], 2);
    assert_eq!(v["summary"]["crtl_only"], 2);
    assert_valid(&extra);
}

#[test]
fn summary_matches_entries() {
    let out = run(&["catalog", "SPECIFIC23"]);
    let v = json(&out);
    let entries = v["entries"].as_array().unwrap();
    let dnt = entries
        .iter()
        .filter(|e| e["aggregate"]["verdict"] == "DoesNotTile")
        .count();
    assert_eq!(v["summary"]["total"], entries.len());
    assert_eq!(v["summary"]["does_not_tile"], dnt);
    assert_eq!(v["summary"]["inconclusive"], entries.len() - dnt);
    let mismatched: Vec<&str> = entries
        .iter()
        .filter(|e| e["matches_expected"] == false)
        .map(|e| e["id"].as_str().unwrap())
        .collect();
    let listed: Vec<&str> = v["summary"]["mismatches"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    assert_eq!(mismatched, listed);
    assert_eq!(out.code, if listed.is_empty() { 0 } else { 1 });
    assert_valid(&out);
}

#[test]
fn family_commands() {
    let gen = run(&["families", "gen"]);
    assert_eq!(gen.code, 0);
    assert_eq!(json(&gen)["combinations"].as_array().unwrap().len(), 3);
    assert_valid(&gen);

    let spe = run(&["families", "spe"]);
    assert_eq!(spe.code, 0);
    assert_eq!(json(&spe)["specific"].as_array().unwrap().len(), 23);
    assert_valid(&spe);

    let scan = run(&[
        "families",
        "scan",
        "--samples",
        "5",
        "--seed",
        "3",
        "--f1-samples",
        "3",
    ]);
    assert_eq!(scan.code, 0);
    let v = json(&scan);
    assert_eq!(v["summary"]["does_not_tile"], 5);
    assert_eq!(v["summary"]["inconclusive"], 3);
    assert_valid(&scan);
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        &["catalog", "EXTRA2"][..],
        &[
            "families",
            "scan",
            "--samples",
            "6",
            "--seed",
            "9",
            "--f1-samples",
            "2",
        ][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
    let a = run(&[
        "families",
        "scan",
        "--samples",
        "6",
        "--seed",
        "9",
        "--f1-samples",
        "0",
    ])
    .stdout;
    let b = run(&[
        "families",
        "scan",
        "--samples",
        "6",
        "--seed",
        "10",
        "--f1-samples",
        "0",
    ])
    .stdout;
    assert_ne!(a, b);
}

#[test]
fn timings_only_on_request() {
    assert!(json(&run(&["families", "gen"])).get("timings").is_none());
    let out = run(&["--timings", "families", "gen"]);
    assert!(json(&out)["timings"]["total_ms"].is_number());
    assert_valid(&out);
}

#[test]
fn csv_and_markdown() {
    let csv = run(&["--format", "csv", "catalog", "EXTRA2"]);
    assert_eq!(csv.code, 0);
    let mut rows = csv::Reader::from_reader(csv.stdout.as_bytes());
    let headers = rows.headers().unwrap().clone();
    let verdict = headers.iter().position(|h| h == "verdict").unwrap();
    let records: Vec<csv::StringRecord> = rows.records().map(|r| r.unwrap()).collect();
    assert_eq!(records.len(), 2);
    assert!(records.iter().all(|r| &r[verdict] == "DoesNotTile"));

    let md = run(&["--format", "md", "catalog", "EXTRA2"]);
    assert!(md.stdout.contains("| EXTRA2-01 |"));
    assert!(md.stdout.contains("2 do not tile"));
}

#[test]
fn catalog_files_with_bad_entries() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"[
  {{"id": "quarter", "angles": [[7,12],[5,12],[5,12],[5,12],[1,4],[1,4]], "expected": "DoesNotTile"}},
  {{"id": "cube", "angles": [[1,2],[1,2],[1,2],[1,2],[1,2],[1,2]]}},
  {{"id": "quarter-again", "angles": [[5,12],[7,12],[5,12],[5,12],[1,4],[1,4]]}}
]"#
    )
    .unwrap();
    let path = f.path().to_str().unwrap();
    let out = run(&["catalog", path]);
    assert_eq!(out.code, 3);
    let v = json(&out);
    assert_eq!(v["summary"]["skipped"][0]["id"], "cube");
    assert_eq!(v["summary"]["duplicates"][0]["second"], "quarter-again");
    assert_eq!(v["entries"][0]["matches_expected"], true);
    assert_valid(&out);

    let analyzed = run(&["analyze", "--file", path]);
    assert_eq!(analyzed.code, 3);
    assert_eq!(json(&analyzed)["entries"].as_array().unwrap().len(), 2);

    let mut g = tempfile::NamedTempFile::new().unwrap();
    write!(g, "[{{\"id\": 1}}]").unwrap();
    assert_eq!(run(&["catalog", g.path().to_str().unwrap()]).code, 2);
}

#[test]
fn flags_reach_the_report() {
    let out = run(&[
        "--precision",
        "96",
        "--max-precision",
        "512",
        "--crtn-mode",
        "strict",
        "--normalization",
        "unit-volume",
        "--lp-round-denominator",
        "1000",
        "analyze",
        "--angles",
        "7/12,5/12,5/12,5/12,1/4,1/4",
    ]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    let s = &v["settings"];
    assert_eq!(s["precision"], 96);
    assert_eq!(s["max_precision"], 512);
    assert_eq!(s["crtn_mode"], "strict");
    assert_eq!(s["normalization"], "unit-volume");
    assert_eq!(s["lp_round_denominator"], 1000);
    assert_eq!(v["entries"][0]["normalization"], "unit-volume");
    assert_valid(&out);
}

#[test]
fn strict_numerics_turns_exhaustion_into_exit_4() {
    // a 16-bit cap cannot settle existence for most of these members
    let loose = run(&[
        "--precision",
        "16",
        "--max-precision",
        "16",
        "catalog",
        "SPECIFIC23",
    ]);
    assert_eq!(loose.code, 3);
    let v = json(&loose);
    assert!(v["summary"]["precision_exhausted"].as_u64().unwrap() > 0);
    assert_valid(&loose);
    let strict = run(&[
        "--precision",
        "16",
        "--max-precision",
        "16",
        "--strict-numerics",
        "catalog",
        "SPECIFIC23",
    ]);
    assert_eq!(strict.code, 4);
    let single = run(&[
        "--precision",
        "16",
        "--max-precision",
        "16",
        "--strict-numerics",
        "analyze",
        "--angles",
        "7/12,5/12,5/12,5/12,1/4,1/4",
    ]);
    assert_eq!(single.code, 4);
}
