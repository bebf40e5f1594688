//! End-to-end tests of the `ordrep` binary: exit codes, JSON report shapes,
//! and agreement between subcommands.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ordrep"));
    // Keep the generator cap deterministic regardless of the outer shell.
    c.env_remove("ORDREP_MAX_PK_DEPTH");
    c
}

fn run(cmd: &mut Command) -> (Option<i32>, String, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = cmd.output().expect("spawning the binary");
    (
        status.code(),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

fn json_of(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("stdout is a single JSON document")
}

fn write_doc(dir: &TempDir, name: &str, doc: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, doc).unwrap();
    path
}

fn chain2(dir: &TempDir) -> PathBuf {
    write_doc(
        dir,
        "chain2.json",
        r#"{"labels":["a","b"],"pairs":[["a","b"]],"kind":"covers"}"#,
    )
}

fn m3(dir: &TempDir) -> PathBuf {
    write_doc(
        dir,
        "m3.json",
        r#"{"labels":["0","x","y","z","1"],
            "pairs":[["0","x"],["0","y"],["0","z"],["x","1"],["y","1"],["z","1"]],
            "kind":"covers"}"#,
    )
}

fn antichain2(dir: &TempDir) -> PathBuf {
    write_doc(
        dir,
        "antichain2.json",
        r#"{"labels":["a","b"],"pairs":[],"kind":"covers"}"#,
    )
}

fn generate_pk(dir: &TempDir, k: usize) -> PathBuf {
    let path = dir.path().join(format!("pk{k}.json"));
    let (code, _, _) = run(bin().args([
        "generate",
        "pk",
        &k.to_string(),
        "-o",
        path.to_str().unwrap(),
    ]));
    assert_eq!(code, Some(0));
    path
}

#[test]
fn generate_pk_1_emits_32_labels_on_stdout() {
    let (code, out, _) = run(bin().args(["generate", "pk", "1"]));
    assert_eq!(code, Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["labels"].as_array().unwrap().len(), 32);
    assert_eq!(doc["kind"], "covers");
}

#[test]
fn generated_pk0_fails_check_with_the_golden_counts() {
    let dir = TempDir::new().unwrap();
    let pk0 = generate_pk(&dir, 0);
    let (code, out, _) = run(bin().args(["check", pk0.to_str().unwrap(), "-m", "3", "-n", "3"]));
    assert_eq!(code, Some(1));
    let report = json_of(&out);
    assert_eq!(report["representable"], false);
    assert_eq!(report["pairs_total"], 162);
    assert_eq!(report["failing_pairs"].as_array().unwrap().len(), 53);
    // Every failing pair starts at the bottom, the top, or a base element.
    for pair in report["failing_pairs"].as_array().unwrap() {
        let x = pair[0].as_str().unwrap();
        assert!(
            matches!(x, "p" | "a" | "b" | "c" | "d"),
            "unexpected source {x}"
        );
    }
}

#[test]
fn two_chain_is_representable_at_omega() {
    let dir = TempDir::new().unwrap();
    let chain = chain2(&dir);
    let (code, out, _) = run(bin().args([
        "check",
        chain.to_str().unwrap(),
        "--meets",
        "omega",
        "--joins",
        "omega",
    ]));
    assert_eq!(code, Some(0));
    assert_eq!(json_of(&out)["representable"], true);
}

#[test]
fn separate_is_asymmetric_on_pk0() {
    let dir = TempDir::new().unwrap();
    let pk0 = generate_pk(&dir, 0);
    let file = pk0.to_str().unwrap();

    let (code, out, _) = run(bin().args(["separate", file, "a'", "b"]));
    assert_eq!(code, Some(0));
    let v = json_of(&out);
    assert_eq!(v["separable"], true);
    let filter = v["filter"].as_array().unwrap();
    assert!(filter.iter().any(|l| l == "a'"));
    assert!(!filter.iter().any(|l| l == "b"));

    let (code, out, _) = run(bin().args(["separate", file, "b", "a'"]));
    assert_eq!(code, Some(1));
    let v = json_of(&out);
    assert_eq!(v["separable"], false);
    assert!(v.get("filter").is_none());
}

#[test]
fn comparable_pairs_are_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let chain = chain2(&dir);
    let (code, _, err) = run(bin().args(["separate", chain.to_str().unwrap(), "a", "b"]));
    assert_eq!(code, Some(2));
    assert!(err.contains("comparable"), "stderr: {err}");
}

#[test]
fn unknown_labels_are_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let chain = chain2(&dir);
    let (code, _, err) = run(bin().args(["separate", chain.to_str().unwrap(), "z", "a"]));
    assert_eq!(code, Some(2));
    assert!(err.contains("no element labeled"), "stderr: {err}");
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let bad = write_doc(&dir, "bad.json", "this is not json");
    let (code, _, err) = run(bin().args(["check", bad.to_str().unwrap()]));
    assert_eq!(code, Some(2));
    assert!(err.starts_with("error:"), "stderr: {err}");
}

#[test]
fn represent_builds_a_verified_witness_or_reports_failure() {
    let dir = TempDir::new().unwrap();
    let pair = antichain2(&dir);
    let (code, out, _) = run(bin().args(["represent", pair.to_str().unwrap()]));
    assert_eq!(code, Some(0));
    let v = json_of(&out);
    assert_eq!(v["representable"], true);
    assert_eq!(v["verified"], true);
    assert!(v["representation"]["h"].is_array());

    let m3 = m3(&dir);
    let (code, out, _) = run(bin().args(["represent", m3.to_str().unwrap()]));
    assert_eq!(code, Some(1));
    assert_eq!(json_of(&out)["representable"], false);
}

#[test]
fn encode_writes_a_readable_dimacs_file() {
    let dir = TempDir::new().unwrap();
    let m3 = m3(&dir);
    let cnf_path = dir.path().join("sep.cnf");
    let (code, out, _) = run(bin().args([
        "encode",
        m3.to_str().unwrap(),
        "x",
        "y",
        "-o",
        cnf_path.to_str().unwrap(),
    ]));
    assert_eq!(code, Some(0));
    let v = json_of(&out);
    assert_eq!(v["variables"], 5);

    let text = std::fs::read_to_string(&cnf_path).unwrap();
    let f = ordrep::read_dimacs(&text).expect("the emitted file parses back");
    assert_eq!(f.num_vars, 5);
    assert_eq!(f.clauses.len(), v["clauses"].as_u64().unwrap() as usize);
    // The atom pair of this lattice admits no separating filter.
    assert!(ordrep::solve_basic(&f).is_none());
}

#[test]
fn oracle_agrees_with_check_on_a_small_lattice() {
    let dir = TempDir::new().unwrap();
    let m3 = m3(&dir);
    let file = m3.to_str().unwrap();

    let (ocode, oout, _) = run(bin().args(["oracle", file, "-m", "omega", "-n", "omega"]));
    let (ccode, cout, _) = run(bin().args(["check", file, "-m", "omega", "-n", "omega"]));
    assert_eq!(ocode, Some(1));
    assert_eq!(ccode, Some(1));
    let oracle = json_of(&oout);
    let check = json_of(&cout);
    assert_eq!(oracle["representable"], check["representable"]);
    assert_eq!(oracle["failing_pairs"], check["failing_pairs"]);
    assert_eq!(oracle["pairs_total"], check["pairs_total"]);
}

#[test]
fn oracle_rejects_posets_above_the_enumeration_cap() {
    let dir = TempDir::new().unwrap();
    let pk1 = generate_pk(&dir, 1);
    let (code, _, err) = run(bin().args(["oracle", pk1.to_str().unwrap()]));
    assert_eq!(code, Some(2));
    assert!(err.contains("cap"), "stderr: {err}");
}

#[test]
fn info_reports_the_structural_summary() {
    let dir = TempDir::new().unwrap();
    let m3 = m3(&dir);
    let (code, out, _) = run(bin().args(["info", m3.to_str().unwrap()]));
    assert_eq!(code, Some(0));
    let v = json_of(&out);
    assert_eq!(v["size"], 5);
    assert_eq!(v["height"], 3);
    assert_eq!(v["minimal"], serde_json::json!(["0"]));
    assert_eq!(v["maximal"], serde_json::json!(["1"]));
    // x ^ y = 0 shows up as a meet-table row.
    let rows = v["meet_table"].as_array().unwrap();
    assert!(rows
        .iter()
        .any(|r| r["subset"] == serde_json::json!(["x", "y"]) && r["meet"] == "0"));
}

#[test]
fn filter_gen_closes_the_hat_seed() {
    let dir = TempDir::new().unwrap();
    let pk0 = generate_pk(&dir, 0);
    let (code, out, _) = run(bin().args([
        "filter-gen",
        pk0.to_str().unwrap(),
        "--contains",
        "a',c'",
        "-m",
        "3",
    ]));
    assert_eq!(code, Some(0));
    let v = json_of(&out);
    assert_eq!(v["size"], 9);
    let closure = v["closure"].as_array().unwrap();
    assert!(closure.iter().any(|l| l == "q"));
    assert!(!closure.iter().any(|l| l == "p"));
}

#[test]
fn the_report_is_identical_for_every_job_count() {
    let dir = TempDir::new().unwrap();
    let pk0 = generate_pk(&dir, 0);
    let file = pk0.to_str().unwrap();
    let (_, serial, _) = run(bin().args(["check", file, "--witnesses", "--jobs", "1"]));
    for jobs in ["2", "5"] {
        let (_, parallel, _) = run(bin().args(["check", file, "--witnesses", "--jobs", jobs]));
        assert_eq!(serial, parallel, "jobs={jobs} changed the report bytes");
    }
}

#[test]
fn quiet_suppresses_the_summary_line() {
    let dir = TempDir::new().unwrap();
    let chain = chain2(&dir);
    let file = chain.to_str().unwrap();
    let (_, _, loud) = run(bin().args(["check", file]));
    assert!(!loud.is_empty());
    let (_, _, silent) = run(bin().args(["check", file, "--quiet"]));
    assert!(silent.is_empty(), "stderr: {silent}");
}

#[test]
fn the_depth_cap_env_var_overrides_the_default() {
    fn depth_capped(path: &Path, k: &str, cap: Option<&str>) -> Option<i32> {
        let mut cmd = bin();
        cmd.args(["generate", "pk", k, "-o", path.to_str().unwrap(), "--quiet"]);
        if let Some(cap) = cap {
            cmd.env("ORDREP_MAX_PK_DEPTH", cap);
        }
        run(&mut cmd).0
    }
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("pk.json");
    assert_eq!(depth_capped(&out, "3", Some("2")), Some(2));
    assert_eq!(depth_capped(&out, "3", None), Some(0));
    assert_eq!(depth_capped(&out, "5", None), Some(2));
    assert_eq!(depth_capped(&out, "0", Some("not-a-number")), Some(2));
}
