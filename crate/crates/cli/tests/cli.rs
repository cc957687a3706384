use std::fs;
use std::path::Path;
use std::process::Command;

fn pwcheck(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pwcheck")).args(args).output().expect("spawn pwcheck");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn reports_without_runtime(dir: &Path) -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            let text = fs::read_to_string(&p).unwrap();
            let text = if p.extension().is_some_and(|x| x == "json") {
                let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
                v.as_object_mut().unwrap().remove("runtime_ms");
                serde_json::to_string(&v).unwrap()
            } else {
                text
            };
            (p.file_name().unwrap().to_string_lossy().into_owned(), text)
        })
        .collect();
    files.sort();
    files
}

#[test]
fn list_prints_every_suite_and_filters() {
    let (code, all) = pwcheck(&["list"]);
    assert_eq!(code, 0);
    assert_eq!(all.lines().count(), pwcheck_cli::registry().len());
    let (code, crown) = pwcheck(&["list", "crown"]);
    assert_eq!(code, 0);
    assert_eq!(crown.lines().count(), 3);
    let (code, none) = pwcheck(&["list", "no-such-suite"]);
    assert_eq!(code, 0);
    assert!(none.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pwcheck(&["verify", "--suite", "bogus"]).0, 2);
    assert_eq!(pwcheck(&["frobnicate"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"suite": "crown-su11", "nonsense": 1}"#).unwrap();
    assert_eq!(pwcheck(&["verify", "--config", cfg.to_str().unwrap()]).0, 2);
}

#[test]
fn verify_writes_identical_files_on_rerun() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let (code, stdout) = pwcheck(&["verify", "--suite", "crown-su11", "--out", dir.path().to_str().unwrap()]);
        assert_eq!(code, 0, "{stdout}");
        assert!(stdout.starts_with("PASS crown-su11"));
    }
    let first = reports_without_runtime(a.path());
    assert!(first.iter().any(|(n, _)| n == "crown-su11.json"));
    assert!(first.iter().any(|(n, _)| n.ends_with(".csv")));
    assert_eq!(first, reports_without_runtime(b.path()));
}

#[test]
fn config_file_overrides_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("out");
    fs::write(
        &cfg,
        format!(
            r#"{{"suite": "weyl-p-lambda0", "seed": 3, "output_dir": {:?}, "params": {{"count": 5}}}}"#,
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let (code, _) = pwcheck(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("weyl-p-lambda0.json")).unwrap()).unwrap();
    assert_eq!(report["constants"]["per_system"], 5.0);
    assert_eq!(report["constants"]["seed"], 3.0);
}
