use std::path::Path;
use std::process::{Command, Output};

fn kcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kcontact-cert"))
        .args(args)
        .env_remove("KCERT_PARALLELISM")
        .output()
        .expect("spawn binary")
}

fn report_at(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn genus_one_obstruction_passes_on_stdout() {
    let out = kcert(&["verify-obstruction", "--g", "1", "--b", "2"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema_version"], 1);
}

#[test]
fn malformed_params_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("bad.params");
    std::fs::write(&params, "z1 = 0.1\n").unwrap();
    let out = kcert(&["verify-config", "--params", params.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let missing = dir.path().join("absent.params");
    assert_eq!(
        kcert(&["verify-config", "--params", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(kcert(&["verify-everything"]).status.code(), Some(2));
}

#[test]
fn reports_are_reproducible_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (path, threads) in [(&a, "1"), (&b, "3")] {
        let out = kcert(&[
            "verify-lattice",
            "--seed",
            "7",
            "--parallelism",
            threads,
            "--report",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(report_at(&a)["report"]["status"], "pass");
}

#[test]
fn failing_seifert_input_is_rejected() {
    let out = kcert(&["seifert", "--p", "4"]);
    assert_eq!(out.status.code(), Some(2));
}
