use std::process::{Command, Output};

use basketry::WeightedBasket;
use serde_json::Value;

fn basketry(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_basketry")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = basketry(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn list_matches_golden_file() {
    let golden = include_str!("golden/list.txt");
    assert_eq!(stdout(&["replay", "list"]), golden);
}

#[test]
fn rr_row() {
    let s = stdout(&["rr", "--basket", "2x(1,2),3x(2,5),(1,3),(1,4)", "--p1", "0", "--m", "1..8"]);
    assert!(s.trim_end().ends_with("P_-8 = 2"), "{s}");
    assert!(s.contains("-K^3 = 1/60"));
}

#[test]
fn index_bound_headline() {
    let s = stdout(&["index-bound"]);
    assert!(s.starts_with("max r_X = 840; witnesses {3,5,7,8},{2,3,5,7,8}\n"), "{s}");
    assert_eq!(stdout(&["index-bound", "--rmax", "19"]), "max r_X with r_max = 19: 114\n");
}

#[test]
fn thresholds_x6d() {
    let args = ["thresholds", "--m0", "1", "--m1", "2", "--mu0", "1", "--rmax", "3", "--nu0", "1", "--variant", "iii"];
    assert_eq!(stdout(&args), "9\n");
}

#[test]
fn exit_codes() {
    assert_eq!(basketry(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(basketry(&["rr", "--basket", "(0,3)", "--p1", "0"]).status.code(), Some(2));
    assert_eq!(basketry(&["enumerate", "--p1", "0", "--bogus"]).status.code(), Some(2));
    assert_eq!(basketry(&["thresholds", "--m0", "3", "--m1", "2"]).status.code(), Some(2));
    assert_eq!(basketry(&["replay", "p2"]).status.code(), Some(0));
}

#[test]
fn enumerate_json_round_trips() {
    let v: Value = serde_json::from_str(&stdout(&["enumerate", "--p1", "0", "--p2", "0", "--json"])).unwrap();
    let rows = v["survivors"].as_array().unwrap();
    assert_eq!(rows.len(), 23);
    for row in rows {
        let text = row["basket"].as_str().unwrap();
        let wb = WeightedBasket::parse(text, row["p1"].as_u64().unwrap() as u32).unwrap();
        assert_eq!(wb.basket.to_string(), text);
    }
    for e in v["eliminated"].as_array().unwrap().iter().take(50) {
        let text = e["basket"].as_str().unwrap();
        assert_eq!(text.parse::<basketry::Basket>().unwrap().to_string(), text);
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("basketry-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wci.csv");
    let s = stdout(&["wci", "--weights", "1,5,6,22,33", "--degrees", "66", "--upto", "5", "--csv", "--out", path.to_str().unwrap()]);
    assert!(s.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "m,P\n1,1\n2,1\n3,1\n4,1\n5,2\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn random_sweep_is_deterministic() {
    let a = stdout(&["rr", "--random", "50", "--seed", "11", "--json"]);
    let b = stdout(&["rr", "--random", "50", "--seed", "11", "--json"]);
    assert_eq!(a, b);
    assert_eq!(basketry(&["rr", "--random", "5"]).status.code(), Some(2));
}

#[test]
fn birationality_replays_hold() {
    for case in ["birat1", "birat2"] {
        let v: Value = serde_json::from_str(&stdout(&["replay", case, "--json"])).unwrap();
        assert_eq!(v["holds"], Value::Bool(true));
        assert_eq!(v["coverage"]["uncovered"].as_array().map(Vec::len), Some(0));
    }
}
