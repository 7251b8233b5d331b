use std::process::{Command, Output};

use serde_json::Value;

fn kummer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = kummer(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_eleven_fold_cover() {
    let v = json(&[
        "analyze",
        "--p",
        "13",
        "--ext",
        "1",
        "--n",
        "11",
        "--f",
        "x^2*(x+1)",
    ]);
    assert_eq!(v["genus"], 5);
    assert_eq!(v["a_number"], 1);
    assert_eq!(v["p_rank"], 0);
    assert_eq!(v["rank"], 4);
    assert_eq!(v["input"]["f"], "x^3+x^2");
    assert_eq!(v["oracles"]["agreement"], true);
}

#[test]
fn analyze_sixfold_cover() {
    let v = json(&["analyze", "--p", "5", "--n", "6", "--f", "x^3+x^2+1"]);
    assert_eq!(v["genus"], 4);
    assert_eq!(v["a_number"], 3);
    assert_eq!(v["p_rank"], 1);
    assert_eq!(v["orbits"], serde_json::json!([[1, 5], [2, 4], [3]]));
}

#[test]
fn invalid_curve_exits_with_two() {
    let out = kummer(&["analyze", "--p", "5", "--ext", "1", "--n", "10", "--f", "x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("characteristic 5 divides"));

    let out = kummer(&["analyze", "--p", "5", "--n", "3", "--f", "x^2+"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 4"));

    let out = kummer(&["analyze", "--p", "6", "--n", "3", "--f", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_and_json_agree() {
    let args = ["analyze", "--p", "7", "--n", "3", "--f", "x^5+3*x+1"];
    let v = json(&args);
    let text = stdout(&kummer(&[&args[..], &["--text"]].concat()));
    for key in ["genus", "rank", "a_number", "p_rank", "index"] {
        assert!(text.contains(&format!("{key}: {}\n", v[key])), "{key}");
    }
    for key in ["a_lower", "a_upper", "f_upper", "f_upper_weighted"] {
        assert!(
            text.contains(&format!("{key}: {}\n", v["bounds"][key])),
            "{key}"
        );
    }
}

#[test]
fn json_is_reproducible() {
    let args = [
        "analyze",
        "--p",
        "3",
        "--ext",
        "2",
        "--n",
        "4",
        "--f",
        "x^3+w*x+1",
    ];
    assert_eq!(kummer(&args).stdout, kummer(&args).stdout);
}

#[test]
fn char2_genus_two() {
    let v = json(&["char2", "--ext", "1", "--g", "2", "--Q", "1", "--P", "x^5"]);
    assert_eq!(v["nilpotent"], true);
    assert_eq!(v["a_number"], 1);
    let out = kummer(&["char2", "--g", "1", "--Q", "x", "--P", "x^3+x^2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_of_sixfold_cover() {
    let v = json(&["bounds", "--p", "5", "--n", "6", "--f", "x^3+x^2+1"]);
    assert_eq!(v["a_lower"], 3);
    assert_eq!(v["f_upper"], 1);
}

#[test]
fn search_for_superspecial_genus_two() {
    let args = [
        "search",
        "--p",
        "5",
        "--n",
        "2",
        "--deg",
        "5",
        "--filter",
        "superspecial",
        "--out",
        "witnesses",
    ];
    let out = kummer(&args);
    assert_eq!(out.status.code(), Some(0));
    let witnesses = stdout(&out);
    assert!(witnesses.lines().any(|l| l == "x^5+4*x"));
    for line in witnesses.lines() {
        let v = json(&["analyze", "--p", "5", "--n", "2", "--f", line]);
        assert_eq!(v["superspecial"], true, "{line}");
        assert_eq!(v["genus"], 2, "{line}");
    }
    assert_eq!(kummer(&args).stdout, out.stdout);
}

#[test]
fn search_csv() {
    let out = kummer(&[
        "search", "--p", "5", "--n", "2", "--deg", "3", "--fix", "2=0",
    ]);
    let csv = stdout(&out);
    assert_eq!(csv.lines().next(), Some("genus,a_number,p_rank,count"));
    let total: u64 = csv
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 20);
}

#[test]
fn selftest_reports_each_check() {
    let out = kummer(&["selftest"]);
    let text = stdout(&out);
    assert!(text.contains("PASS y^11 = x^2(x+1) over F_13"));
    assert!(text.contains("PASS y^6 = x^3+x^2+1 over F_5"));
    assert!(text.contains("PASS y^2 + y = x^5 over F_2"));
    assert!(text.contains("PASS genus 4, p = 11: no F_11-rational superspecial model"));
    let failing = text.lines().filter(|l| l.starts_with("FAIL")).count();
    assert_eq!(out.status.code(), Some(if failing == 0 { 0 } else { 1 }));
}
