//! End-to-end tests of the command-line surface: exit codes, file formats,
//! and determinism of emitted reports.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semifields"))
}

fn gf8_file(dir: &Path) -> std::path::PathBuf {
    let f = semifields::semifield::make_field(2, 3, &[1, 1, 0, 1]).unwrap();
    let body = semifields::semifield::semifield_to_json(f.pre(), Some(f.identity()), Some("gf8"));
    let path = dir.join("gf8.json");
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn enumerate_order8_writes_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["enumerate", "--p", "2", "--n", "3", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("1 isotopism classes, 1 semifield groups, 1 commutative classes"));
    let index_path = dir.path().join("catalog_p2_n3/index.json");
    let first = std::fs::read(&index_path).unwrap();
    let parsed: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(parsed["isotopism_classes"], 1);
    assert_eq!(parsed["completed"], true);

    // Re-running produces byte-identical reports.
    let out2 = bin()
        .args(["enumerate", "--p", "2", "--n", "3", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out2.status.success());
    assert_eq!(std::fs::read(&index_path).unwrap(), first);
}

#[test]
fn enumerate_usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let unsupported = bin()
        .args(["enumerate", "--p", "7", "--n", "3", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(unsupported.status.code(), Some(2));
    let needs_long_run = bin()
        .args(["enumerate", "--p", "2", "--n", "5", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(needs_long_run.status.code(), Some(2));
    let missing_flag = bin().args(["enumerate", "--p", "2"]).output().unwrap();
    assert_eq!(missing_flag.status.code(), Some(2));
}

#[test]
fn enumerate_budget_exhaustion_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "enumerate",
            "--p",
            "2",
            "--n",
            "5",
            "--long-run",
            "--budget-secs",
            "0",
            "--out",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget exhausted"));
}

#[test]
fn group_report_for_gf8() {
    let dir = tempfile::tempdir().unwrap();
    let input = gf8_file(dir.path());
    let report_path = dir.path().join("report.json");
    let out = bin()
        .args(["group", "--input"])
        .arg(&input)
        .args(["--out"])
        .arg(&report_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&report_path).unwrap()).unwrap();
    assert_eq!(report["census"]["count"], 9);
    assert_eq!(report["census"]["h"], 3);
    assert_eq!(report["kernel_dim"], 0);
    assert_eq!(report["profile"]["order"], 512);
    assert_eq!(report["checks"]["semi_extraspecial"], true);
    assert_eq!(report["checks"]["ultraspecial"], true);
}

#[test]
fn group_report_with_kernel_quotient() {
    let dir = tempfile::tempdir().unwrap();
    let input = gf8_file(dir.path());
    let out = bin()
        .args(["group", "--input"])
        .arg(&input)
        .args(["--kernel", "dim=2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["kernel_dim"], 2);
    assert_eq!(report["profile"]["order"], 128); // extraspecial quotient 2^(2a+1)
    assert_eq!(report["checks"]["extraspecial"], true);
}

#[test]
fn census_command() {
    let dir = tempfile::tempdir().unwrap();
    let input = gf8_file(dir.path());
    let out = bin()
        .args(["census", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success());
    let census: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(census["count"], 9);
    assert_eq!(census["h"], 3);
    assert_eq!(census["pairwise_trivial"], true);
}

#[test]
fn classify_groups_isotopic_files_together() {
    let dir = tempfile::tempdir().unwrap();
    let f = semifields::semifield::make_field(3, 3, &[2, 2, 0, 1]).unwrap();
    let a = dir.path().join("a.json");
    std::fs::write(
        &a,
        semifields::semifield::semifield_to_json(f.pre(), Some(f.identity()), None),
    )
    .unwrap();
    let iso = f
        .pre()
        .principal_isotope(&semifields::gfp::FpVector::new(3, vec![1, 2, 0]))
        .unwrap();
    let b = dir.path().join("b.json");
    std::fs::write(
        &b,
        semifields::semifield::semifield_to_json(iso.pre(), Some(iso.identity()), None),
    )
    .unwrap();
    let out = bin().arg("classify").arg(&a).arg(&b).output().unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["isotopism_classes"].as_array().unwrap().len(), 1);
    assert_eq!(parsed["merged_classes"].as_array().unwrap().len(), 1);
}

#[test]
fn census_accepts_presemifield_without_identity() {
    // G(F) is defined for pre-semifields; the twisted product of order 27
    // has no identity but its group census is still 4.
    let dir = tempfile::tempdir().unwrap();
    let (good, _) = semifields::semifield::albert_parameter_scan(3, 3, &[2, 2, 0, 1], 1, 2);
    let pre = good.unwrap();
    assert!(pre.find_identity().is_none());
    let path = dir.path().join("twisted27.json");
    std::fs::write(
        &path,
        semifields::semifield::semifield_to_json(&pre, None, Some("twisted27")),
    )
    .unwrap();
    let out = bin().args(["census", "--input"]).arg(&path).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let census: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(census["count"], 4);
    assert_eq!(census["h"], 1);
}

#[test]
fn table1_reports_computed_and_reference_rows() {
    let dir = tempfile::tempdir().unwrap();
    let run = bin()
        .args(["enumerate", "--p", "2", "--n", "3", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(run.status.success());
    let out = bin()
        .args(["table1", "--catalogs"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("computed"));
    assert!(text.contains("not computed"));
    assert!(text.contains("reference"));
    assert!(text.contains("332")); // reference row 2^6 renders
}

#[test]
fn table1_flags_corrupted_index() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = dir.path().join("catalog_p2_n3");
    std::fs::create_dir_all(&catalog).unwrap();
    std::fs::write(catalog.join("index.json"), b"{ not json").unwrap();
    let out = bin()
        .args(["table1", "--catalogs"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("index.json"));
}

#[test]
fn malformed_semifield_file_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, b"{\n  \"p\": 2,\n  oops\n}").unwrap();
    let out = bin().args(["group", "--input"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "stderr: {err}");
}
