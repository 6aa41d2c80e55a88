use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_z2n-sqm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn assert_golden(args: &[&str], name: &str) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out), golden(name), "{args:?}");
}

#[test]
fn census_tables() {
    assert_golden(&["census"], "census.md");
    assert_golden(&["census", "--format", "csv"], "census.csv");
}

#[test]
fn degeneracy_tables() {
    assert_golden(&["spectrum", "--model", "minimal:n=3", "--fock", "8"], "spectrum_minimal_n3_fock8.md");
    assert_golden(&["spectrum", "--model", "next:n=3", "--fock", "8"], "spectrum_next_n3_fock8.md");
    assert_golden(&["spectrum", "--model", "maximal:n=3", "--fock", "8"], "spectrum_maximal_n3_fock8.md");
    assert_golden(
        &["spectrum", "--model", "next:n=2", "--fock", "8", "--format", "csv"],
        "spectrum_next_n2_fock8.csv",
    );
}

#[test]
fn rank_report() {
    assert_golden(&["verify", "--model", "n4cl10", "--rank"], "verify_n4cl10_rank.md");
}

#[test]
fn exit_status() {
    assert_eq!(run(&["verify", "--model", "maximal:n=4"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--model", "minimal:n=9"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--model", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--from", "1"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--to", "11"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--model", "minimal:n=2", "--fock", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--model", "next:n=3", "--jobs", "0"]).status.code(), Some(2));
    // a kernel/zero-cluster mismatch on too short an interval is a failed check
    let short = run(&[
        "spectrum", "--model", "minimal:n=2", "--grid", "--points", "401", "--spacing", "0.03", "--W", "0.5*x + 0.2",
    ]);
    assert_eq!(short.status.code(), Some(1));
}

#[test]
fn grid_zero_modes_for_cubic_superpotential() {
    let out = run(&["spectrum", "--model", "minimal:n=2", "--grid", "--W", "x^3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["zero_modes"], 2);
    assert_eq!(report["clusters"][0]["multiplicity"], 2);
    assert_eq!(report["degeneracy_pass"], true);
}

#[test]
fn config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    fs::write(
        &config,
        "model = \"next:n=3\"\nrealization = \"fock\"\ncutoff = 8\nformat = \"markdown\"\n",
    )
    .unwrap();
    let out = run(&["spectrum", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden("spectrum_next_n3_fock8.md"));

    // flags win over the file
    let out = run(&["spectrum", "--config", config.to_str().unwrap(), "--model", "maximal:n=3"]);
    assert_eq!(stdout(&out), golden("spectrum_maximal_n3_fock8.md"));

    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "model = \"next:n=3\"\nunknown_key = 1\n").unwrap();
    assert_eq!(run(&["verify", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn out_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = [
        "verify", "--model", "next:n=3", "--rank", "--orbits", "--generated", "--fock", "4", "--format", "json",
    ];
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert_eq!(run(&with_out).status.code(), Some(0));
    let written = fs::read_to_string(&path).unwrap();
    let again = stdout(&run(&args));
    assert_eq!(written, again);
    let single = stdout(&run(&[&args[..], &["--jobs", "1"]].concat()));
    assert_eq!(written, single);

    let report: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(report["relations"]["overall"], true);
    assert_eq!(report["orbits"]["sizes"], serde_json::json!([16]));
    assert_eq!(report["generated"]["total"], 16);
    assert_eq!(report["spectrum"]["degeneracy_pass"], true);
}
