//! The binary end to end: exit codes, JSON determinism, examples.

use std::process::{Command, Output};

use serde_json::Value;

fn maxind(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxind")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = maxind(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn analyze_s4() {
    let r = json(&["analyze", "sym:4"]);
    assert_eq!(r["profile"]["order"], "24");
    assert_eq!(r["profile"]["lambda"], 3);
    assert_eq!(r["profile"]["script_M"]["value"], 1.0);
    assert_eq!(r["nu"]["nu_exact"], 2);
    assert!(r["provenance"]["limits"]["lattice_limit"].is_u64());
}

#[test]
fn exact_nu_of_a5() {
    let r = json(&["nu", "alt:5"]);
    assert_eq!(r["nu"]["nu_exact"], 2);
    assert_eq!(r["nu"]["probabilities"][1]["exact"], "19/30");
}

#[test]
fn monte_carlo_nu_of_a5() {
    let r = json(&["--trials", "4000", "nu", "alt:5", "--mode", "mc"]);
    let est = &r["nu"]["estimate"];
    assert!(est["low"].as_u64().unwrap() <= 2 && 2 <= est["high"].as_u64().unwrap());
}

#[test]
fn constructions_report_orders() {
    let r = json(&["construct", "lk:sym:4,3"]);
    assert_eq!(r["construction"]["kind"], "tower");
    assert_eq!(r["construction"]["order"], "384");
    let r = json(&["construct", "hat:sym:3;2"]);
    assert_eq!(r["construction"]["census"]["orbit_count"], 3);
    let r = json(&["construct", "dp:sym:3+cyc:5"]);
    assert_eq!(r["construction"]["order"], "30");
    let r = json(&["construct", "sub:sym:4[(1,2);(1,2,3,4)]+cyc:2[(1,2);(1,2)]"]);
    assert_eq!(r["construction"]["order"], "24");
}

#[test]
fn bounds_at_given_indices() {
    let r = json(&["bounds", "sym:4", "--n", "3,4"]);
    let rows = r["bounds"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["n"], 3);
    assert_eq!(rows[0]["m_exact"], 3);
    assert_eq!(rows[1]["m_exact"], 4);
    for row in rows {
        assert!(row["violations"].as_array().unwrap().is_empty());
    }
}

#[test]
fn json_is_byte_identical_across_runs() {
    for args in [
        &["--json", "analyze", "dih:6"][..],
        &["--json", "--seed", "9", "--trials", "2000", "nu", "sym:4", "--mode", "mc"],
        &["--json", "construct", "hat:cyc:3;2"],
    ] {
        let a = maxind(args);
        let b = maxind(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn markdown_is_the_default() {
    let out = maxind(&["analyze", "cyc:6"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# cyc:6"));
    assert!(text.contains("## Bounds on m_n"));
}

#[test]
fn refusal_exits_2() {
    let out = maxind(&["nu", "sym:8", "--table-limit", "100"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
}

#[test]
fn bad_input_exits_1() {
    let out = maxind(&["analyze", "sym:"]);
    assert_eq!(out.status.code(), Some(1));
    let out = maxind(&["analyze", "nosuch:3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn corpus_manifest() {
    let dir = std::env::temp_dir().join(format!("maxind-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("manifest.txt");
    std::fs::write(&path, "# small\nsym:3\ndih:5  # D10\nsym:8\n").unwrap();
    let out = maxind(&["--json", "--lattice-limit", "1000", "corpus", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["summary"]["groups"], 3);
    assert_eq!(r["summary"]["refused"], 1);
    assert_eq!(r["summary"]["violations"], 0);
    std::fs::remove_dir_all(&dir).ok();
}
