use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qsearch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsearch"))
        .args(args)
        .env_remove("QSEARCH_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn trace_present_to_stdout() {
    let out = qsearch(&["trace", "-n", "3", "--target", "5", "--present"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["checkpoints"].as_array().unwrap().len(), 7);
    assert_eq!(v["answer"], "YES");
    assert_eq!(v["measured_label"], 5);
    assert!(v["max_deviation"].as_f64().unwrap() < 1e-12);
}

#[test]
fn trace_absent_n1_is_a_coin_flip() {
    let out = qsearch(&["trace", "-n", "1", "--x-s", "0", "--absent"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["scenario"], "absent");
    let dist: Vec<f64> = v["distribution"].as_array().unwrap().iter().map(|p| p.as_f64().unwrap()).collect();
    assert!((dist[0] - 0.5).abs() < 1e-9 && (dist[1] - 0.5).abs() < 1e-9, "{dist:?}");
    assert!(v["degenerate_argmax"].as_bool().unwrap());
}

#[test]
fn trace_displaced() {
    let out = qsearch(&["trace", "-n", "2", "--target", "01", "--displaced", "0b10"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["scenario"], "displaced");
    assert_eq!(v["marked"], 2);
}

#[test]
fn trace_usage_errors_exit_2() {
    for args in [
        &["trace", "-n", "3", "--target", "9", "--present"][..],
        &["trace", "-n", "3", "--target", "1"],
        &["trace", "-n", "3", "--target", "1", "--present", "--absent"],
        &["trace", "--target", "1", "--present"],
        &["trace", "-n", "2", "--target", "1", "--displaced", "1"],
        &["no-such-command"],
    ] {
        let out = qsearch(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn capacity_exit_3() {
    let out = qsearch(&["trace", "-n", "25", "--target", "0", "--present"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    let out = qsearch(&["--max-qubits", "4", "sweep", "--n-max", "5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn list_file_ingestion() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("list.txt");
    fs::write(&list, "# four items\n00\n11\n0b10\n3\n").unwrap();

    let out = qsearch(&["trace", "--list", list.to_str().unwrap(), "--target", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["answer"], "YES");

    let out = qsearch(&["trace", "--list", list.to_str().unwrap(), "--target", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["scenario"], "absent");

    // `3` occurs twice: rejected unless lenient.
    let out = qsearch(&["trace", "--list", list.to_str().unwrap(), "--target", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qsearch(&["trace", "--list", list.to_str().unwrap(), "--target", "3", "--lenient"]);
    assert_eq!(out.status.code(), Some(0));

    fs::write(&list, "0\n1\n2\n").unwrap();
    let out = qsearch(&["trace", "--list", list.to_str().unwrap(), "--target", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn phase_table_n3() {
    let out = qsearch(&["phase-table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x_s,000,001,010,011,100,101,110,111");
    assert_eq!(lines[1], "000,1,1,1,i,1,i,i,-1");
    assert_eq!(lines.len(), 9);
}

#[test]
fn grover_compare_csv() {
    let out = qsearch(&["grover-compare", "--n-min", "2", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,k,grover_p_success,oneshot_present_p,oneshot_absent_false_yes_p"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[..2], ["2", "1"]);
    assert!((row[2].parse::<f64>().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn verify_exit_codes() {
    let out = qsearch(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("checks passed"));

    let out = qsearch(&["verify", "--inject-hi-sign-error"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("H_i"), "{}", stderr(&out));

    let out = qsearch(&["verify", "--tol", "1e-20", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&out).lines().take_while(|l| !l.ends_with("checks passed")).collect::<String>())
        .unwrap();
    let statuses: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap()).collect();
    assert!(statuses.contains(&"tolerance-induced"));
    assert!(!statuses.contains(&"fail"));
}

#[test]
fn sweep_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = |name: &str| {
        vec![
            "sweep".to_string(),
            "--n-max".into(),
            "6".into(),
            "--scenarios".into(),
            "present,absent,displaced".into(),
            "--seed".into(),
            "7".into(),
            "-o".into(),
            dir.path().join(name).to_string_lossy().into_owned(),
        ]
    };
    for name in ["a.json", "b.json"] {
        let a = args(name);
        let out = qsearch(&a.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    }
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let v = read_json(&a);
    let n1_absent = v["summary"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["n"] == 1 && r["scenario"] == "absent")
        .unwrap();
    assert!((n1_absent["max_p_yes"].as_f64().unwrap() - 0.5).abs() < 1e-9);
}

#[test]
fn out_dir_env_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qsearch"))
        .args(["sweep", "--n-max", "3", "--format", "csv"])
        .env("QSEARCH_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let csv = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert!(csv.starts_with("n,scenario,x_s"), "{csv}");
    let meta = read_json(&dir.path().join("sweep.csv.meta.json"));
    assert_eq!(meta["command"], "sweep");
    assert!(meta["generated_unix_secs"].as_u64().unwrap() > 0);
}
