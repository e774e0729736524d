use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn doubles(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_doubles"))
        .args(args)
        .env_remove("DOUBLES_TOLERANCE")
        .output()
        .unwrap()
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn example_family() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/family.json")
        .display()
        .to_string()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("doubles-{}-{name}", std::process::id()))
}

#[test]
fn certifies_the_example_family() {
    let out = doubles(&["certify", "--family", &example_family()]);
    assert_eq!(out.status.code(), Some(0));
    let certificate: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(certificate["verdict"]["status"], "independent");
    assert_eq!(certificate["family"].as_array().unwrap().len(), 3);
    let check = &certificate["checks"][0];
    for key in ["name", "anchor", "inputs", "result", "witness"] {
        assert!(check.get(key).is_some(), "missing {key}");
    }
    assert!(certificate["toolkit_version"].is_string());
}

#[test]
fn query_subcommands() {
    let out = doubles(&["r-dim", "2", "3", "5"]);
    assert_eq!((out.status.code(), stdout(&out).as_str()), (Some(0), "1\n"));
    let out = doubles(&["moser", "2", "3", "--slope", "1/4"]);
    assert_eq!(
        (out.status.code(), stdout(&out).as_str()),
        (Some(0), "−Σ(2,3,23)\n")
    );
    let out = doubles(&["dedekind", "-1", "3"]);
    assert_eq!(stdout(&out), "-1/18\n");
    let out = doubles(&["cover", "2", "3", "--depth", "2"]);
    assert!(stdout(&out).contains("|H_1| = 1"));
    let out = doubles(&["cover", "2", "3", "--curve-order", "lambda-mu"]);
    assert!(stdout(&out).contains("|H_1| = 4"));
}

#[test]
fn cobordism_ledgers_as_json() {
    let out = doubles(&["cobordism", "Z", "--knot", "2,5", "--depth", "2"]);
    let ledger: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(ledger["definiteness"], "negative");
    assert_eq!(ledger["matrix"].as_array().unwrap().len(), 4);
    let out = doubles(&["cobordism", "R", "--depth", "1"]);
    let ledger: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(ledger["opacity"], "opaque-definite(-)");
    let out = doubles(&["cobordism", "cover-to-splice", "--depth", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = doubles(&["cobordism", "splice-to-surgery"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn failing_certificates_carry_a_witness() {
    let out = doubles(&["certify", "--family", "2,3,1;2,5,1"]);
    assert_eq!(out.status.code(), Some(1));
    let certificate: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let verdict = &certificate["verdict"];
    assert_eq!(verdict["status"], "criterion-failed");
    assert_eq!(
        (verdict["index"].as_u64(), verdict["next"].as_u64()),
        (Some(0), Some(1))
    );
    let failed = certificate["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == verdict["check"])
        .unwrap();
    assert_eq!(failed["result"], "fail");
    assert_eq!(failed["witness"]["violation"], "138 ≮ 90");
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        vec!["certify", "--family", "2,4,1"],
        vec!["certify", "--family", "/nonexistent/family.json"],
        vec!["certify"],
        vec!["r-dim", "2", "4", "5"],
        vec!["moser", "2", "3", "--slope", "2/3"],
        vec!["generate", "--count", "0"],
        vec!["frobnicate"],
    ] {
        let out = doubles(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn json_round_trip_through_stdin() {
    let generated = doubles(&["generate", "--count", "3", "--depth", "2"]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_doubles"))
        .args(["certify", "--json", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(&generated.stdout)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let certificate: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(certificate["family"][2]["q"], 15);
    assert_eq!(certificate["family"][2]["r"], 2);
}

#[test]
fn out_file_matches_stdout() {
    let path = temp_path("certificate.json");
    let out = doubles(&[
        "certify",
        "--family",
        "2,3,1;2,7,1",
        "--out",
        path.to_str().unwrap(),
    ]);
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, out.stdout);
}

#[test]
fn tolerance_sources() {
    let config = temp_path("config.json");
    std::fs::write(&config, r#"{"tolerance": 1e-7, "threads": 2}"#).unwrap();
    let out = doubles(&[
        "--config",
        config.to_str().unwrap(),
        "certify",
        "--family",
        "2,3,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&config, r#"{"tolerance": 0.5}"#).unwrap();
    let out = doubles(&["--config", config.to_str().unwrap(), "r-dim", "2", "3", "5"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&config).ok();

    let run_with_env = |value: &str| {
        Command::new(env!("CARGO_BIN_EXE_doubles"))
            .args(["r-dim", "2", "3", "5"])
            .env("DOUBLES_TOLERANCE", value)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(run_with_env("1e-9"), Some(0));
    assert_eq!(run_with_env("0"), Some(2));
    assert_eq!(run_with_env("lots"), Some(2));
    assert_eq!(
        doubles(&["--tolerance", "2e-3", "r-dim", "2", "3", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn table_output() {
    let out = doubles(&["certify", "--family", "2,3,1;2,7,2", "--table"]);
    let text = stdout(&out);
    assert!(text.contains("corollary-chain"));
    assert!(text.ends_with("verdict: independent\n"));
    let out = doubles(&["generate", "--count", "3", "--table"]);
    assert!(stdout(&out).contains("870"));
}
