use std::path::Path;
use std::process::{Command, Output};

fn lazypath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lazypath"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn map_bound_prints_exact_term() {
    let out = lazypath(&["map-bound", "--t", "10", "--a", "1", "--b", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l == "exact_term=9"));
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        &["map-bound", "--t", "10", "--a", "1"][..],
        &["no-such-command"][..],
        &["dfs-run", "--n", "100"][..],
    ] {
        let out = lazypath(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(
            String::from_utf8_lossy(&out.stderr).contains("Usage"),
            "{args:?}"
        );
    }
}

#[test]
fn help_exits_cleanly() {
    assert!(lazypath(&["--help"]).status.success());
}

#[test]
fn bad_configs_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            "unknown.json",
            r#"{"n": 1000, "epsilon": 0.1, "colour": 3}"#,
            "colour",
        ),
        ("zero_eps.json", r#"{"n": 1000, "epsilon": 0.0}"#, "epsilon"),
        ("dense.json", r#"{"n": 1, "epsilon": 0.1}"#, "n"),
    ];
    for (name, body, key) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        let out = lazypath(&["coverage-verify", "--config", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(key), "{name}: {err}");
    }
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.json");
    std::fs::write(&config, r#"{"n": 3000, "epsilon": 0.1, "trials": 5}"#).unwrap();
    let csv = dir.path().join("cov.csv");
    let out = lazypath(&[
        "coverage-verify",
        "--config",
        config.to_str().unwrap(),
        "--trials",
        "2",
        "--seed",
        "9",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(reader.records().count(), 2);

    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("cov.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["subcommand"], "coverage-verify");
    assert_eq!(manifest["config"]["trials"], 2);
    assert_eq!(manifest["config"]["n"], 3000);
    assert_eq!(manifest["master_seed"], 9);
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn reruns_reproduce_rows() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = lazypath(&[
            "dfs-run",
            "--n",
            "500",
            "--eps",
            "0.3",
            "--trials",
            "4",
            "--seed",
            "5",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(read(&a), read(&b));
    assert_eq!(read(&a).lines().count(), 5);
    assert!(read(&a).starts_with("trial,seed,n,p,target,succeeded,path_length,queries,positives\n"));
}

#[test]
fn failed_check_exits_with_two() {
    // A 1-query budget cannot find a path of length 10.
    let args = [
        "dfs-run", "--n", "200", "--eps", "0.5", "--target", "10", "--budget", "1",
    ];
    assert_eq!(lazypath(&args).status.code(), Some(0));
    let mut checked = args.to_vec();
    checked.push("--check");
    assert_eq!(lazypath(&checked).status.code(), Some(2));
}

#[test]
fn coverage_on_a_fixture_graph() {
    let fixture = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/triangle_tail.txt"
    );
    let out = lazypath(&[
        "coverage-verify",
        "--graph",
        fixture,
        "--n",
        "6",
        "--eps",
        "0.1",
        "--C",
        "0.05",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let row = reader.records().next().unwrap().unwrap();
    let field = |name: &str| &row[headers.iter().position(|h| h == name).unwrap()];
    assert_eq!(field("c1_size"), "6");
    assert_eq!(field("core_size"), "3");
}

#[test]
fn gw_sample_rows() {
    let out = lazypath(&["gw-sample", "--size", "7", "--trials", "5", "--seed", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("trial,t,height,diameter"));
    assert!(lines.all(|l| l.split(',').nth(1) == Some("7")));
}
