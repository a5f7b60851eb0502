use std::path::Path;
use std::process::{Command, Output};

fn bhbounds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bhbounds"))
        .args(args)
        .env_remove("BHBOUNDS_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

/// Data rows of a CSV document, skipping `#` metadata lines.
fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let mut rdr = csv::Reader::from_reader(body.as_bytes());
    let header = rdr.headers().unwrap().iter().map(String::from).collect();
    let rows = rdr.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn success_exit_and_metadata() {
    let out = bhbounds(&["verify", "blei", "--m", "3", "--n", "3", "--trials", "100", "--seed", "7"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("# seed")));
    let (header, rows) = csv_rows(&text);
    assert_eq!(header[0], "check");
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[header.iter().position(|h| h == "holds").unwrap()] == "true"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&bhbounds(&["bohr", "table", "--n", "1"])), 2);
    assert_eq!(code(&bhbounds(&["constants", "table", "--no-such-flag"])), 2);
    assert_eq!(code(&bhbounds(&["constants", "table", "--m-max", "20", "--field", "R"])), 2);
    assert_eq!(code(&bhbounds(&["constants", "table", "--m-max", "1"])), 2);
    assert_eq!(code(&bhbounds(&["--help"])), 0);
}

#[test]
fn output_flag_and_env_dir() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("nested/out.json");
    let out = bhbounds(&["--format", "json", "-o", file.to_str().unwrap(), "bohr", "table", "--n", "10,100"]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
    assert_eq!(doc["meta"]["seed"], 0);

    let out = Command::new(env!("CARGO_BIN_EXE_bhbounds"))
        .args(["constants", "table", "--m-max", "4"])
        .env("BHBOUNDS_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("constants-table.csv").exists());
}

#[test]
fn cache_is_created_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.json");
    let args = |p: &Path| {
        vec!["constants".to_string(), "table".into(), "--m-max".into(), "12".into(), "--cache".into(), p.display().to_string()]
    };
    let run = |p: &Path| {
        let a = args(p);
        bhbounds(&a.iter().map(String::as_str).collect::<Vec<_>>())
    };
    let first = run(&cache);
    assert_eq!(code(&first), 0);
    let saved = std::fs::read_to_string(&cache).unwrap();
    let entries: Vec<serde_json::Value> = serde_json::from_str(&saved).unwrap();
    assert!(entries.len() >= 3 * 11);
    let second = run(&cache);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_to_string(&cache).unwrap(), saved);
}

#[test]
fn csv_numbers_round_trip() {
    let out = bhbounds(&["constants", "table", "--m-max", "30"]);
    let (header, rows) = csv_rows(&String::from_utf8(out.stdout).unwrap());
    let closed = header.iter().position(|h| h == "closed").unwrap();
    for (i, row) in rows.iter().enumerate() {
        let m = i + 2;
        let v: f64 = row[closed].parse().unwrap();
        assert_eq!(v, bhbounds::constants::bh_mult_closed(m).value, "m = {m}");
    }
}
