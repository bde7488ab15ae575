use std::process::{Command, Output};

use en_duality::export::MatrixJson;
use en_duality::linalg::{int, rat};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_en-duality")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hermite_b3_matches_fixture() {
    let o = run(&["hermite", "--b", "3", "--compare-classical"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), include_str!("fixtures/hermite_b3.json"));
}

#[test]
fn hermite_b2_matches_fixture() {
    let o = run(&["hermite", "--b", "2"]);
    assert_eq!(stdout(&o), include_str!("fixtures/hermite_b2.json"));
}

#[test]
fn fixture_holds_the_expected_entries() {
    let v: serde_json::Value = serde_json::from_str(include_str!("fixtures/hermite_b3.json")).unwrap();
    let m: MatrixJson = serde_json::from_value(v["matrix"].clone()).unwrap();
    let m = m.to_matrix().unwrap();
    assert_eq!(m.get(4, 5), rat(-1, 2));
    assert_eq!(m.get(5, 5), rat(3, 2));
    assert_eq!(m.get(5, 4), int(6));
    assert_eq!(m.nnz(), 12);
    let blocks: Vec<Vec<u64>> = v["differing_blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["indices"].as_array().unwrap().iter().map(|i| i.as_u64().unwrap()).collect())
        .collect();
    assert_eq!(blocks, vec![vec![3, 4], vec![5, 6], vec![7, 8]]);
}

#[test]
fn verify_sl2_b3_succeeds_deterministically() {
    let a = run(&["verify", "--b", "3", "--v1", "sl2"]);
    assert_eq!(a.status.code(), Some(0));
    let b = run(&["verify", "--b", "3", "--v1", "sl2"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["degrees"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_random_is_reproducible() {
    let a = run(&["verify", "--b", "3", "--v1", "random", "--seed", "5", "--format", "csv"]);
    let b = run(&["verify", "--b", "3", "--v1", "random", "--seed", "5", "--format", "csv"]);
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn rank_deficient_file_exits_2() {
    let dir = std::env::temp_dir().join(format!("en-duality-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("span.json");
    std::fs::write(&path, r#"{"rows":6,"cols":5,"entries":[[0,0,"1"],[1,1,"1"],[2,2,"1"],[3,3,"1"],[3,4,"1"]]}"#).unwrap();
    let arg = format!("file:{}", path.display());
    let o = run(&["verify", "--b", "3", "--v1", &arg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rank deficient"));
}

#[test]
fn small_window_exits_2() {
    let o = run(&["verify", "--b", "3", "--window", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("en-duality-out-{}.csv", std::process::id()));
    let o = run(&["hermite", "--b", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "1,0,0\n0,2,0\n0,0,1\n");
}

#[test]
fn buchsbaum_rim_ranks() {
    let o = run(&["en", "--preset", "buchsbaum-rim", "--f", "4", "--g", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ranks: Vec<u64> = v["terms"].as_array().unwrap().iter().map(|t| t["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, vec![2, 4, 4, 2]);
    assert_eq!(v["provenance"], "spliced");
    assert_eq!(v["d_squared_zero"], true);
}

#[test]
fn hankel_preset_is_the_hankel_matrix() {
    let o = run(&["en", "--preset", "hankel", "--d", "2", "--b", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let phi = &v["phi"];
    assert_eq!((phi["rows"].as_u64(), phi["cols"].as_u64()), (Some(2), Some(3)));
    // entry (i, j) is x_{i+j}
    for e in phi["entries"].as_array().unwrap() {
        let (i, j) = (e[0].as_u64().unwrap() as usize, e[1].as_u64().unwrap() as usize);
        let mut exps = vec!["0"; 4];
        exps[i + j] = "1";
        assert_eq!(e[2][exps.join(",")], "1");
    }
}

#[test]
fn out_of_range_index_is_flagged_pure() {
    let o = run(&["en", "--f", "3", "--g", "2", "--i", "4", "--format", "pretty"]);
    assert!(stdout(&o).contains("PureSym"));
    let o = run(&["en", "--f", "3", "--g", "2", "--i", "-2", "--format", "pretty"]);
    assert!(stdout(&o).contains("PureWedge"));
}

#[test]
fn search_commands() {
    let o = run(&["search", "--case", "non-self-dual"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"result\": \"none\""));
    let o = run(&["search", "--case", "self-dual", "--b", "2", "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("isomorphism found"));
}

#[test]
fn generation_command() {
    let o = run(&["generation", "--b", "3", "--side", "p", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
}
