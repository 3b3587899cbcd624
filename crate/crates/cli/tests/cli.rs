use std::process::{Command, Output};

use moonshine_cli::commands::table_checksum;
use moonshine_cli::{run, Format, RunConfig, Verb};
use moonshine_core::qseries::exponent;
use serde_json::Value;

fn moonshine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moonshine"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn hg_series_for_2a() {
    let out = moonshine(&["hg", "--class", "2A", "--order", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rec = &v["records"][0];
    assert_eq!(rec["op"], "hg");
    assert_eq!(rec["params"]["class"], "2A");
    for key in ["op", "params", "reference", "value", "pass"] {
        assert!(rec.get(key).is_some(), "missing {key}");
    }
    let terms = rec["value"]["terms"].as_array().unwrap();
    // exponents are numerators over the series denominator
    let denom = rec["value"]["denom"].as_i64().unwrap();
    let coeff = |num: i64| {
        terms
            .iter()
            .find(|t| t[0].as_i64() == Some(num * denom / 8))
            .map(|t| t[1].as_str().unwrap().to_string())
    };
    assert_eq!(coeff(-1).as_deref(), Some("-2"));
    assert_eq!(coeff(7).as_deref(), Some("-6"));
}

#[test]
fn cusp_table_for_11a_reports_the_witness() {
    let out = moonshine(&["table2", "--class", "11A"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let records = v["records"].as_array().unwrap();
    assert!(records.iter().filter(|r| r["op"] == "cusp-table").all(|r| r["pass"] == true));
    let check = records.iter().find(|r| r["op"] == "zg-cusp-check").unwrap();
    assert_eq!(check["value"]["holds"], false);
    assert_eq!(check["value"]["witness"]["exponent"], "2/11");
}

#[test]
fn exit_codes() {
    assert_eq!(moonshine(&["classes"]).status.code(), Some(0));
    assert_eq!(moonshine(&["nonsense"]).status.code(), Some(2));
    assert_eq!(moonshine(&["hg"]).status.code(), Some(2));
    assert_eq!(moonshine(&["hg", "--class", "99Z"]).status.code(), Some(2));
    assert_eq!(moonshine(&["hg", "--class", "2A", "--order", "x/y"]).status.code(), Some(2));
    assert_eq!(moonshine(&["dedekind", "--a", "2", "--c", "4"]).status.code(), Some(2));
    assert_eq!(moonshine(&["tg", "--class", "2A", "--format", "csv"]).status.code(), Some(0));
    assert_eq!(moonshine(&["gauss", "--a", "1", "--b", "0", "--c", "8", "--format", "csv"]).status.code(), Some(2));
    // the 10A row of the cusp table fails, so the table run reports failure
    assert_eq!(moonshine(&["table2", "--class", "10A"]).status.code(), Some(1));
}

#[test]
fn precision_variable_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_moonshine"))
        .args(["classes"])
        .env("MOONSHINE_PRECISION_BITS", "12")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn checksum_pins_the_class_table() {
    let out = moonshine(&["classes", "--checksum", "--format", "text"]);
    let printed = String::from_utf8(out.stdout).unwrap();
    assert_eq!(printed.trim(), table_checksum());
    assert_eq!(
        table_checksum(),
        "abe0ea60bbda22cd35ae8de8e17631ef087d3a739c0abc0233a4648bca0a4ab1"
    );
}

#[test]
fn reports_are_byte_identical() {
    let mut poincare = RunConfig::new(Verb::Poincare).with_class("2A");
    poincare.cmax = Some(120);
    poincare.audit = true;
    let mut gauss = RunConfig::new(Verb::VerifyGauss);
    gauss.fast = true;
    gauss.cmax = Some(30);
    for cfg in [
        RunConfig::new(Verb::Phig).with_class("3A").with_order(exponent(3, 1)),
        poincare,
        gauss,
    ] {
        for format in [Format::Json, Format::Text] {
            let a = run(&cfg).unwrap().render(format).unwrap();
            let b = run(&cfg).unwrap().render(format).unwrap();
            assert_eq!(a, b, "{:?}", cfg.verb);
        }
    }
    let a = moonshine(&["kloosterman", "--class", "4C", "--c", "8", "--n", "2", "--r", "-1"]);
    let b = moonshine(&["kloosterman", "--class", "4C", "--c", "8", "--n", "2", "--r", "-1"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn fast_verification_flags_only_the_10a_row() {
    let out = moonshine(&["verify-all", "--fast"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let failing: Vec<&Value> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .collect();
    assert_eq!(failing.len(), 1);
    assert_eq!(failing[0]["op"], "suite/cusp-table");
    let rows = failing[0]["value"]["failures"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["params"]["class"], "10A");
    assert_eq!(rows[0]["params"]["cusp"], "0");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("moonshine-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.csv");
    let out = moonshine(&["h", "--order", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("exponent,re,im\n-1/8,-2,0\n7/8,90,0\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}
