use std::path::PathBuf;
use std::process::{Command, Output};

fn deltay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deltay"))
        .args(args)
        .env_remove("DELTAY_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("deltay-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn families_lists_members() {
    let o = deltay(&["families", "--root", "K6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().any(|r| r.starts_with("Q10\t") && r.ends_with("Petersen")));

    let o = deltay(&["families", "--root", "K7", "--include-ydelta", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 20);
}

#[test]
fn unsupported_root_is_a_usage_error() {
    let o = deltay(&["families", "--root", "K5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("K5"));
}

/// Weight of one table line for Q7 with `x = 6` joined to 0, 1, 2.
fn q7_expected(key: &str) -> i64 {
    if key.contains('|') {
        return 1;
    }
    let vs: Vec<u32> = key.split('-').map(|v| v.parse().unwrap()).collect();
    let has_x = vs.contains(&6);
    let has_all = has_x && [0, 1, 2].iter().all(|v| vs.contains(v));
    match vs.len() {
        7 => 1,
        6 if !has_x => 1,
        6 if has_all => -1,
        5 => -1,
        _ => 0,
    }
}

#[test]
fn weights_match_table() {
    let o = deltay(&["weights", "--root", "K6", "--member", "Q7"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("weights Q7 K6 -1"));
    assert!(lines.next().unwrap().starts_with("host "));
    let mut entries = 0;
    for line in lines {
        let (key, w) = line.split_once('\t').unwrap();
        assert_eq!(w.parse::<i64>().unwrap(), q7_expected(key), "{key}");
        entries += 1;
    }
    // nonzero knots plus all ten linked pairs
    assert_eq!(entries, 105);
}

#[test]
fn verify_main_passes_and_kind_mismatch_is_rejected() {
    let o = deltay(&["verify", "--id", "main1", "--member", "Q8b", "--trials", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("# 3 of 3 passed\n"));

    let o = deltay(&["verify", "--id", "main2", "--member", "Q7", "--trials", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("identity kind mismatch"));
}

#[test]
fn output_is_reproducible() {
    let args = ["verify", "--id", "cor2", "--member", "H8", "--trials", "4", "--seed", "9", "--format", "json"];
    let a = deltay(&args);
    let b = deltay(&["--jobs", "1"].iter().chain(args.iter()).copied().collect::<Vec<_>>());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn embed_then_invariants() {
    let path = temp("k6.emb");
    let p = path.to_str().unwrap();
    let o = deltay(&["embed", "--member", "K6", "--seed", "3", "--out", p]);
    assert!(o.status.success());
    let again = deltay(&["embed", "--member", "K6", "--seed", "3"]);
    assert_eq!(std::fs::read(&path).unwrap(), again.stdout);

    let o = deltay(&["invariants", "--embedding", p, "--format", "json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    // 197 cycles and 10 disjoint pairs in K6
    assert_eq!(text.lines().count(), 207);
    let odd: i64 = text
        .lines()
        .filter_map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["lk"].as_i64())
        .sum::<i64>()
        .rem_euclid(2);
    assert_eq!(odd, 1);
}
