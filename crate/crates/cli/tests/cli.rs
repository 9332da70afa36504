use std::process::{Command, Output};

fn ay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ay")).args(args).output().expect("spawn ay")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_tables_passes() {
    let o = ay(&["verify-tables"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.contains("permutation (6,2,4,3,5,1,0)"));
    assert!(s.contains("(0,6,3,6,1,6,2,5,6,1,6,3,6)"));
    assert!(!s.contains("FAIL"));
}

#[test]
fn stats_reproduces_multiplicity_prefix() {
    let o = ay(&["--workers", "2", "stats", "--max-period", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let rows: Vec<Vec<&str>> = s.lines().skip(1).take(4).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows[0], ["1", "2", "0.2857", "7"]);
    assert_eq!(rows[1], ["2", "14", "0.3111", "17"]);
    assert_eq!(rows[2], ["3", "38", "0.1467", "21"]);
    assert_eq!(rows[3], ["4", "86", "0.05595", "22"]);
}

#[test]
fn stats_json_keys() {
    let o = ay(&["--format", "json", "stats", "--max-period", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = &v["rows"][1];
    for key in ["period", "fix_count", "i_n", "i_doubleprime", "b_n", "histogram"] {
        assert!(!row[key].is_null(), "missing {key}");
    }
    assert_eq!(row["fix_count"], 45);
    assert_eq!(row["i_n"], "28");
    assert_eq!(v["command"], "stats --max-period 2");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(ay(&["stats", "--max-period", "0"]).status.code(), Some(2));
    assert_eq!(ay(&["--format", "xml", "verify-tables"]).status.code(), Some(2));
    assert_eq!(ay(&["code", "--point", "2;0;0"]).status.code(), Some(2));
    assert_eq!(ay(&["code", "--point", "nonsense"]).status.code(), Some(2));
    assert_eq!(ay(&["--workers", "0", "verify-tables"]).status.code(), Some(2));
}

#[test]
fn budget_errors_have_their_own_status() {
    let o = Command::new(env!("CARGO_BIN_EXE_ay"))
        .env("AY_MAX_MEMORY_MB", "1")
        .args(["stats", "--max-period", "8"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn code_round_trips_and_writes_csv() {
    let o = ay(&["code", "--point", "0;1;1"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("ay-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("code.csv");
    let o = ay(&["--format", "csv", "--out", path.to_str().unwrap(), "code", "--point", "1/3;0;0"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("position,j,t,digit\n1,"));
    assert!(!csv.contains('\r'));
    std::fs::remove_dir_all(&dir).ok();
    let o = ay(&["code", "--point", "1/3;0;0", "--depth", "5"]);
    assert_eq!(stdout(&o).lines().nth(1).unwrap().matches('(').count(), 5);
}

#[test]
fn order_and_cyclotomic() {
    let s = stdout(&ay(&["order", "--modulus", "6"]));
    assert!(s.contains("T(m) = 52"), "{s}");
    assert!(s.contains("ramified-total"));
    assert!(s.contains("inert"));
    let o = ay(&["cyclotomic", "--max-n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("true").count(), 6);
}

#[test]
fn cycles_core_region_and_embed() {
    let s = stdout(&ay(&["--format", "csv", "cycles", "--period", "1"]));
    assert_eq!(s.lines().count(), 8);
    assert_eq!(s.lines().next(), Some("code,x,xi,beta"));
    let s = stdout(&ay(&["core-region", "--max-period", "3"]));
    assert!(s.lines().nth(1).unwrap().starts_with("(0,0,0)") || s.lines().count() > 2);
    let s = stdout(&ay(&["--format", "csv", "embed", "--period", "2"]));
    assert_eq!(s.lines().next(), Some("r0,r1,r2,xi"));
    // 14 distinct fractional parts among the 45 two-cycles
    let row = s.lines().nth(1).unwrap();
    assert_eq!(row.split(',').next().unwrap().len(), "0.".len() + 12);
}

#[test]
fn denominators_small() {
    let o = ay(&["--format", "csv", "denominators", "--max-m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("m,xi,order,period,beta,multiplicity"));
}

#[test]
fn reproduce_all_with_tiny_budget_skips() {
    let o = ay(&["--format", "json", "reproduce-all", "--budget-minutes", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let crit = v["criteria"].as_array().unwrap();
    assert_eq!(crit.len(), 15);
    assert!(crit.iter().all(|c| c["status"] == "skipped"));
}
