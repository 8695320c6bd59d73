use std::path::Path;
use std::process::{Command, Output};

use gini_refine::certify::{builtin_certificates, Certificate};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gini-refine")).args(args).output().expect("run gini-refine")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn eval_prints_fifteen_significant_digits() {
    let o = bin(&["eval", "gini:2,1", "1", "2"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "1.66666666666667\n"));
    assert_eq!(stdout(&bin(&["eval", "A", "2", "4"])), "3\n");
    assert_eq!(stdout(&bin(&["eval", "N3", "1", "4"])), "2.33333333333333\n");
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["eval", "nope", "1", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["eval", "A", "0", "2"]).status.code(), Some(3));
    assert_eq!(bin(&["eval", "gini:nan,1", "1", "2"]).status.code(), Some(3));
    assert_eq!(bin(&["curve", "missing.id"]).status.code(), Some(2));
    assert_eq!(bin(&["certify", "--cert", "/nonexistent/x.json"]).status.code(), Some(4));
    assert_eq!(bin(&["verify-all", "--grid", "3"]).status.code(), Some(2));
    let o = bin(&["verify-all", "--out", "/nonexistent/dir/report.json"]);
    assert_eq!(o.status.code(), Some(4));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
}

#[test]
fn verify_all_json_report_is_deterministic_and_complete() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = bin(&["verify-all", "--format", "json", "--out", path(p)]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());

    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    let summary = &report["summary"];
    let total = summary["total"].as_u64().unwrap();
    assert!(total >= 100);
    assert_eq!(summary["passed"].as_u64().unwrap() + summary["failed"].as_u64().unwrap(), total);
    assert_eq!(summary["proved_exact"].as_u64(), Some(43));
    let results = report["results"].as_array().unwrap();
    assert_eq!(results.len() as u64, total);
    for r in results {
        let obj = r.as_object().unwrap();
        assert_eq!(obj.len(), 5);
        assert!(obj["id"].is_string() && obj["verdict"].is_string());
        assert!(obj["min_value"].is_number() && obj["argmin_x"].is_number());
        assert!(matches!(obj["method"].as_str(), Some("numeric" | "exact")));
    }
}

#[test]
fn stress_tolerance_still_passes() {
    let o = bin(&["verify-all", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn curve_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curve.csv");
    let o = bin(&["curve", "eq8.06", "--points", "5", "--xmax", "10", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,gap"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (x, g) = l.split_once(',').unwrap();
            (x.parse().unwrap(), g.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 5);
    for (x, g) in rows {
        // direct oracle for N1 - G = (sqrt(x) - 1)^2 / 4
        let direct = (x.sqrt() - 1.0).powi(2) / 4.0;
        assert!(g >= 0.0 && (g - direct).abs() <= 1e-13, "{x}: {g} vs {direct}");
        if x == 1.0 {
            assert!(g.abs() <= 1e-14);
        }
    }
}

#[test]
fn certify_all_and_single_files() {
    let o = bin(&["certify", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.ends_with(": Proved")).count(), 43);

    let dir = tempfile::tempdir().unwrap();
    let p04 = builtin_certificates().into_iter().find(|c| c.statement_id == "thm21.p04").unwrap();
    let file = dir.path().join("thm21.p04.json");
    std::fs::write(&file, p04.to_json().unwrap()).unwrap();
    let o = bin(&["certify", "--cert", path(&file)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("135168000"));
}

#[test]
fn tampered_certificate_file_fails_with_a_step_index() {
    let dir = tempfile::tempdir().unwrap();
    let mut cert = builtin_certificates().into_iter().find(|c| c.statement_id == "thm21.p20").unwrap();
    let payload = cert.final_payload_mut().unwrap();
    *payload = &*payload + &gini_refine::algebra::parse_radical("t^3").unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, cert.to_json().unwrap()).unwrap();
    let o = bin(&["certify", "--cert", path(&file)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("thm21.p20: Failed at step 2"), "{}", stdout(&o));
}

#[test]
fn malformed_certificate_reports_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broken.json");
    let good = builtin_certificates()[0].to_json().unwrap();
    std::fs::write(&file, good.replacen("\"steps\"", "\"steps\" oops", 1)).unwrap();
    let o = bin(&["certify", "--cert", path(&file)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line ") && err.contains("column "), "{err}");
    assert!(Certificate::from_json(&std::fs::read_to_string(&file).unwrap()).is_err());
}

#[test]
fn registry_export_matches_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("registry.json");
    assert_eq!(bin(&["registry", "export", "--out", path(&out)]).status.code(), Some(0));
    let back = gini_refine::registry::import_json(&out).unwrap();
    assert_eq!(back, gini_refine::registry::all_statements());
    let o = bin(&["registry", "export"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(&out).unwrap());
}
