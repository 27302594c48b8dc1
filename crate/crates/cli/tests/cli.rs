use std::path::PathBuf;
use std::process::Command;

use mdperm_cli::{run, Outcome};
use serde_json::Value;

fn mdperm(args: &[&str]) -> Outcome {
    run(std::iter::once("mdperm").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = mdperm(&all);
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    (out.code, serde_json::from_str(&out.stdout).unwrap())
}

fn values(v: &Value) -> Vec<String> {
    v["items"].as_array().unwrap().iter().map(|i| i["value"].as_str().unwrap().to_string()).collect()
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/bfiles")
}

#[test]
fn springer_sequence_as_json() {
    let (code, v) = json(&["seq", "springer", "--n-max", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "seq");
    assert_eq!(values(&v), ["1", "1", "3", "11", "57", "361", "2763", "24611", "250737"]);
    for item in v["items"].as_array().unwrap() {
        assert_eq!(item["provenance"], "formula");
    }
    assert_eq!(v["params"]["n_max"], 8);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn routes_agree_on_small_sequences() {
    for name in ["springer", "unimodal"] {
        let (_, f) = json(&["seq", name, "--n-min", "1", "--n-max", "5"]);
        let (_, s) = json(&["seq", name, "--n-min", "1", "--n-max", "5", "--route", "series"]);
        let (_, b) = json(&["seq", name, "--n-max", "5", "--route", "brute"]);
        assert_eq!(values(&f), values(&s), "{name}");
        assert_eq!(values(&f), values(&b), "{name}");
        assert_eq!(b["items"][0]["provenance"], "brute");
    }
    let (_, f) = json(&["seq", "hoe", "--d", "4", "--n-max", "4"]);
    let (_, b) = json(&["seq", "hoe", "--d", "4", "--n-max", "4", "--route", "brute"]);
    assert_eq!(values(&f), values(&b));
    let (_, f) = json(&["seq", "c-bounded", "2", "--canonical", "--n-max", "6"]);
    let (_, b) = json(&["seq", "c-bounded", "2", "--canonical", "--n-max", "6", "--route", "brute"]);
    assert_eq!(values(&f), values(&b));
    assert_eq!(values(&f), ["6", "18", "54", "162"]);
}

#[test]
fn plateau_and_ascent_totals() {
    let (_, v) = json(&["seq", "total-plateaux", "--n-max", "5"]);
    assert_eq!(values(&v)[1], "20");
    let (_, s) = json(&["seq", "total-plateaux", "--n-max", "5", "--kind", "sum", "--route", "brute"]);
    assert_eq!(values(&s), values(&v));
    let (_, v) = json(&["seq", "total-plateaux", "--d", "4", "--n-max", "4"]);
    assert_eq!(values(&v), ["48", "2688"]);
    let (_, v) = json(&["seq", "total-ascents", "--n-max", "3"]);
    assert_eq!(values(&v), ["1", "26"]);
}

#[test]
fn r_table_three_routes() {
    let (_, f) = json(&["table", "r", "--n-max", "6"]);
    let (_, s) = json(&["table", "r", "--n-max", "6", "--route", "series"]);
    let (_, b) = json(&["table", "r", "--n-max", "6", "--route", "brute"]);
    assert_eq!(values(&f), values(&s));
    assert_eq!(values(&f), values(&b));
    assert_eq!(f["items"][4]["key"], "R(3,0)");
}

#[test]
fn verify_suites_pass_with_two_routes() {
    for suite in [
        "r-triangle",
        "wi-identities",
        "pde-residual",
        "real-rooted",
        "minimal-sets",
        "complement-bijection",
        "element-uniformity",
        "plateau-totals",
        "shiftform",
    ] {
        let (code, v) = json(&["verify", suite]);
        assert_eq!(code, 0, "{suite}");
        let items = v["items"].as_array().unwrap();
        assert!(!items.is_empty());
        for item in items {
            assert_eq!(item["status"], "pass", "{suite}: {item}");
            assert!(item["provenance"].as_str().unwrap().contains('+'), "{suite}: {item}");
        }
    }
    let (code, v) = json(&["verify", "interlacing", "--n-max", "12"]);
    assert_eq!(code, 0);
    assert_eq!(v["items"].as_array().unwrap().len(), 12);
}

#[test]
fn minimal_witness() {
    let (code, v) = json(&["construct", "minimal", "--d", "4", "--n", "5"]);
    assert_eq!(code, 0);
    let items = v["items"].as_array().unwrap();
    let report = items.iter().find(|i| i["key"] == "level report").unwrap();
    assert_eq!(report["value"], "all columns at 6");
    let check = items.iter().find(|i| i["key"] == "minimal").unwrap();
    assert_eq!(check["status"], "pass");
}

#[test]
fn shift_form_witness() {
    let out = mdperm(&["construct", "shiftform", "--n", "5", "--shifts", "1,2,2", "--last", "4,0,2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("2 4 1 3 0"));
    assert!(out.stdout.contains("all columns at 6"));
}

#[test]
fn enumerate_counts_and_lists() {
    let (_, v) = json(&["enumerate", "--d", "3", "--n", "4", "--filter", "weakly-increasing"]);
    assert_eq!(v["items"][0]["value"], "57");
    let (_, v) = json(&["enumerate", "--d", "3", "--n", "3", "--filter", "avoids:c:21", "--list"]);
    let items = v["items"].as_array().unwrap();
    assert_eq!(items[0]["value"], "11");
    assert_eq!(items.len(), 12);
    let (_, v) = json(&["enumerate", "--d", "4", "--n", "3", "--filter", "minimal"]);
    let (_, w) = json(&["enumerate", "--d", "4", "--n", "3", "--filter", "maximal"]);
    assert_eq!(v["items"][0]["value"], w["items"][0]["value"]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["seq", "r-column"][..],
        &["seq", "springer", "--max-states", "lots"],
        &["seq", "springer", "--kind", "sum"],
        &["seq", "hoe", "--n-min", "1"],
        &["table", "e-levels"],
        &["verify", "r-triangle", "--d", "3"],
        &["construct", "minimal", "--d", "4"],
        &["oeis-check", "--id", "A999999", "--bfile", "nowhere.txt"],
        &["bogus"],
    ] {
        let out = mdperm(args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let out = mdperm(&["seq", "springer", "--max-states", "lots"]);
    assert!(out.stderr.contains("--max-states"));
}

#[test]
fn guard_is_an_error_not_a_truncation() {
    let out = mdperm(&["enumerate", "--d", "3", "--n", "6", "--max-states", "1000"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("--max-states"), "{}", out.stderr);
    let out = mdperm(&["enumerate", "--d", "3", "--n", "6", "--max-states", "1_000_000"]);
    assert_eq!(out.code, 0);
}

#[test]
fn oeis_check_reads_env_directory() {
    let out = Command::new(env!("CARGO_BIN_EXE_mdperm"))
        .args(["oeis-check", "--id", "A001586"])
        .env("MDPERM_BFILE_DIR", fixtures())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("A001586: 10 compared, 0 mismatches"));

    let out = Command::new(env!("CARGO_BIN_EXE_mdperm"))
        .args(["oeis-check", "--id", "A001586"])
        .env_remove("MDPERM_BFILE_DIR")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("MDPERM_BFILE_DIR"));
}

#[test]
fn oeis_check_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b001586.txt");
    std::fs::write(&path, "0 1\n1 1\n2 3\n3 12\n").unwrap();
    let out = mdperm(&["oeis-check", "--id", "A001586", "--bfile", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["items"][3]["status"], "fail");
    assert_eq!(v["items"][3]["detail"], "computed 11");
    assert_eq!(v["params"]["pass"], false);

    std::fs::write(&path, "1 1\n2 3\n").unwrap();
    let out = mdperm(&["oeis-check", "--id", "A001586", "--bfile", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("offset"), "{}", out.stderr);
}

#[test]
fn oeis_check_all_and_provisional() {
    let dir = fixtures();
    let out = mdperm(&["oeis-check", "--all", "--dir", dir.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("12 of 12 sequences reconciled"));

    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("b002047.txt");
    std::fs::write(&path, "0 1\n1 2\n2 6\n").unwrap();
    let (code, v) = json(&["oeis-check", "--id", "A002047", "--bfile", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["params"]["provisional"], true);
    assert_eq!(v["items"][2]["provenance"], "bfile+brute");
}

#[test]
fn csv_and_text_formats() {
    let out = mdperm(&["seq", "hoe", "--n-max", "4", "--format", "csv"]);
    assert_eq!(out.stdout, "key,value,status,provenance,detail\n2,1,,formula,\n3,4,,formula,\n4,13,,formula,\n");
    let out = mdperm(&["seq", "hoe", "--n-max", "4"]);
    assert_eq!(out.stdout, "2  1   formula\n3  4   formula\n4  13  formula\n");
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut v: Value| {
        v["elapsed_ms"] = Value::Null;
        v
    };
    let (_, a) = json(&["verify", "minimal-sets", "--d", "4"]);
    let (_, b) = json(&["verify", "minimal-sets", "--d", "4"]);
    assert_eq!(strip(a), strip(b));
}

#[test]
fn binary_help_and_exit_codes() {
    let out = Command::new(env!("CARGO_BIN_EXE_mdperm")).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("oeis-check"));
    let out = Command::new(env!("CARGO_BIN_EXE_mdperm")).args(["seq", "springer", "--n-max", "x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--n-max"));
}
