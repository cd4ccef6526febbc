use std::path::Path;
use std::process::{Command, Output};

use polyperm_cli::{run_export, run_report, run_verify, Fault, Format, RunConfig, Target, CHECK_NAMES};

fn polyperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyperm"))
        .args(args)
        .env_remove("POLYPERM_PRIME")
        .env_remove("POLYPERM_LEVEL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn quantity(report: &serde_json::Value, name: &str, n: Option<u32>) -> serde_json::Value {
    report["quantities"]
        .as_array()
        .unwrap()
        .iter()
        .find(|q| q["name"] == name && q.get("n").and_then(|v| v.as_u64()).map(|v| v as u32) == n)
        .unwrap_or_else(|| panic!("no quantity {name}"))
        .clone()
}

#[test]
fn report_at_three() {
    let out = polyperm(&["report", "--prime", "3", "--level", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    let g2 = quantity(&v, "orderG", Some(2));
    assert_eq!(g2["formula"], 1296);
    assert_eq!(g2["oracle"], 1296);
    assert_eq!(g2["match"], true);
    assert_eq!(quantity(&v, "sylowCount", None)["oracle"], 4);
    assert_eq!(quantity(&v, "coreOrder", Some(2))["oracle"], 27);
}

#[test]
fn report_at_two_level_three() {
    let report = run_report(&RunConfig::new(2, 3)).unwrap();
    assert!(report.consistent());
    let g3 = report.quantity("orderG", Some(3)).unwrap();
    assert_eq!(g3.oracle.as_ref().unwrap().to_string(), "128");
    assert_eq!(report.quantity("sylowCount", None).unwrap().formula.to_string(), "1");
}

#[test]
fn report_at_five_is_formula_only_above_level_one() {
    let report = run_report(&RunConfig::new(5, 2)).unwrap();
    let h = report.quantity("orderH", None).unwrap();
    assert_eq!(h.oracle.as_ref().unwrap().to_string(), "122880");
    let g2 = report.quantity("orderG", Some(2)).unwrap();
    assert_eq!(g2.formula.to_string(), "384000000");
    assert!(g2.oracle.is_none());
}

#[test]
fn report_csv_and_text() {
    let csv = run_report(&RunConfig::new(2, 2)).unwrap().render(Format::Csv).unwrap();
    assert!(csv.starts_with("quantity,n,formula,oracle,match\n"));
    assert!(csv.contains("orderG,2,8,8,true"));
    let text = polyperm(&["report", "-p", "2", "--format", "text"]);
    assert!(stdout(&text).contains("orderH"));
}

#[test]
fn verify_default_passes() {
    let out = polyperm(&["verify", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), CHECK_NAMES.len());
}

#[test]
fn verify_with_corrupt_beta_fails() {
    let out = polyperm(&["verify", "--inject-fault", "corrupt-beta", "--format", "text"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn verify_at_three_passes() {
    let cfg = RunConfig::new(3, 2);
    let outcome = run_verify(&cfg).unwrap();
    assert_eq!(outcome.failures(), 0, "{}", outcome.render(Format::Text).unwrap());
}

#[test]
fn verify_skips_rather_than_fails_over_budget() {
    let cfg = RunConfig { budget: 5000, checks: vec!["h-group".into(), "theta".into()], ..RunConfig::new(5, 2) };
    let outcome = run_verify(&cfg).unwrap();
    assert_eq!(outcome.exit_code(), 0);
    let json = outcome.render(Format::Json).unwrap();
    assert_eq!(json.matches("\"SKIP\"").count(), 2, "{json}");
}

#[test]
fn selected_checks_only() {
    let out = polyperm(&["verify", "--check", "ideals", "--check", "valuations", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3, "{text}");
    assert!(text.lines().nth(1).unwrap().starts_with("valuations,PASS"));
}

#[test]
fn output_is_deterministic() {
    let a = polyperm(&["verify", "-p", "3", "--seed", "7", "--check", "carlitz"]);
    let b = polyperm(&["verify", "-p", "3", "--seed", "7", "--check", "carlitz"]);
    assert_eq!(a.stdout, b.stdout);
    let a = polyperm(&["export", "sylow", "-p", "3"]);
    let b = polyperm(&["export", "sylow", "-p", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["report", "--prime", "4"][..],
        &["report", "--level", "0"],
        &["verify", "--check", "nonsense"],
        &["report", "--format", "xml"],
        &["export", "K"],
    ] {
        assert_eq!(polyperm(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn environment_overrides() {
    let out = Command::new(env!("CARGO_BIN_EXE_polyperm"))
        .args(["report", "--format", "csv"])
        .env("POLYPERM_PRIME", "3")
        .env("POLYPERM_LEVEL", "1")
        .output()
        .unwrap();
    assert!(stdout(&out).contains("orderH,,48,48,true"));
}

#[test]
fn export_counts() {
    let cfg = |p, n| RunConfig::new(p, n);
    let records = |s: String| s.lines().filter(|l| l.starts_with('{')).count();
    assert_eq!(records(run_export(&cfg(3, 1), Target::H).unwrap()), 48);
    assert_eq!(records(run_export(&cfg(3, 1), Target::Descriptors).unwrap()), 4);
    let g = run_export(&cfg(2, 2), Target::G).unwrap();
    let tables: Vec<Vec<u32>> = serde_json::from_str(&g).unwrap();
    assert_eq!(tables.len(), 8);
    assert!(tables.iter().all(|t| t.len() == 4));
    let sylow: serde_json::Value = serde_json::from_str(&run_export(&cfg(3, 2), Target::Sylow).unwrap()).unwrap();
    assert_eq!(sylow.as_array().unwrap().len(), 4);
    assert_eq!(sylow[0]["elements"].as_array().unwrap().len(), 81);
}

#[test]
fn export_matches_golden_files() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for p in [2u32, 3] {
        let expected = std::fs::read_to_string(golden.join(format!("h_p{p}.json"))).unwrap();
        assert_eq!(run_export(&RunConfig::new(p, 1), Target::H).unwrap(), expected, "p={p}");
    }
}

#[test]
fn export_writes_file_and_refuses_over_budget() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.csv");
    let out = polyperm(&["export", "H", "-p", "3", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 49);
    assert!(csv.starts_with("perm,deriv\n0 1 2,1 1 1\n"));

    let out = polyperm(&["export", "H", "-p", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn fault_is_parsed_from_config() {
    let cfg = RunConfig { fault: Some(Fault::CorruptBeta), checks: vec!["orders".into()], ..RunConfig::new(2, 2) };
    assert_eq!(run_verify(&cfg).unwrap().exit_code(), 1);
}
