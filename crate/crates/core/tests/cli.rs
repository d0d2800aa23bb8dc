//! End-to-end checks of the command-line driver: exit-code contract,
//! byte-stable reports, and the file-driven subcommands.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_sp4zeta")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(file: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(file)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn verify_cosets_exit_zero_and_deterministic() {
    let a = run(&["verify-cosets", "--p", "2"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = run(&["verify-cosets", "--p", "2"]);
    assert_eq!(a.stdout, b.stdout, "byte-identical reports across runs");
}

#[test]
fn verify_cosets_other_primes() {
    // algebraic checks only at the two larger primes keep this quick
    let r = run(&["verify-cosets", "--p", "3", "--skip-geometry"]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let r = run(&["verify-cosets", "--p", "5"]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let text = String::from_utf8_lossy(&r.stdout);
    assert!(text.contains("geometry skipped"), "no geometric checks at p = 5");
}

#[test]
fn building_ball_export_is_byte_stable() {
    let dir = std::env::temp_dir();
    let out1 = dir.join("sp4zeta_ball_a.json");
    let out2 = dir.join("sp4zeta_ball_b.json");
    for out in [&out1, &out2] {
        let r = run(&[
            "building-ball",
            "--p",
            "2",
            "--radius",
            "1",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(r.status.success());
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert_eq!(a, b);
    let parsed: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(parsed["schema_version"], 1);
    assert_eq!(parsed["vertex_count"], 57);
    assert_eq!(parsed["edge_count"], 155);
    assert_eq!(parsed["chamber_count"], 99);
}

#[test]
fn verify_table3_with_type_selection() {
    let r = run(&["verify-table3", "--types", "IVa,IVd"]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let text = String::from_utf8_lossy(&r.stdout);
    assert!(text.contains("type IVa"));
    assert!(text.contains("type IVd"));
    assert!(!text.contains("type IIa"));

    let bad = run(&["verify-table3", "--types", "IVb"]);
    assert_eq!(
        bad.status.code(),
        Some(2),
        "unknown type is malformed input"
    );
}

#[test]
fn verify_identity_passes() {
    let r = run(&["verify-identity"]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
}

#[test]
fn zeta_on_degenerate_complex() {
    let r = run(&[
        "zeta",
        "--input",
        &data("degenerate_complex.json"),
        "--order",
        "8",
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let text = String::from_utf8_lossy(&r.stdout);
    assert!(text.contains("match to order 8 pass"));
}

#[test]
fn zeta_rejects_malformed_input() {
    let dir = std::env::temp_dir();
    let bad = dir.join("sp4zeta_bad.json");
    std::fs::write(&bad, b"{\"q\": 2}").unwrap();
    let r = run(&["zeta", "--input", bad.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn ramanujan_subcommand_exit_codes() {
    let good = run(&[
        "ramanujan",
        "--input",
        &data("tempered_spectrum.json"),
        "--tol",
        "1e-9",
    ]);
    assert!(
        good.status.success(),
        "{}",
        String::from_utf8_lossy(&good.stderr)
    );

    let flagged = run(&[
        "ramanujan",
        "--input",
        &data("nontempered_spectrum.json"),
        "--tol",
        "1e-9",
    ]);
    assert_eq!(
        flagged.status.code(),
        Some(1),
        "violations exit with status 1"
    );
    let text = String::from_utf8_lossy(&flagged.stdout);
    assert!(text.contains("FAIL"));
}

#[test]
fn report_dir_override() {
    let dir = std::env::temp_dir().join("sp4zeta_reports");
    std::fs::create_dir_all(&dir).unwrap();
    let r = Command::new(bin())
        .args([
            "building-ball",
            "--p",
            "2",
            "--radius",
            "0",
            "--out",
            "ball0.json",
        ])
        .env("SP4ZETA_REPORT_DIR", &dir)
        .output()
        .unwrap();
    assert!(r.status.success());
    assert!(dir.join("ball0.json").exists());
}

#[test]
fn unsupported_prime_is_rejected() {
    let r = run(&["verify-cosets", "--p", "7"]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn resource_caps_are_enforced() {
    let r = run(&["building-ball", "--p", "2", "--radius", "4"]);
    assert_eq!(r.status.code(), Some(2));
    // the deepest ball is not supported at the largest prime
    let r = run(&["building-ball", "--p", "5", "--radius", "3"]);
    assert_eq!(r.status.code(), Some(2));
    let r = run(&[
        "zeta",
        "--input",
        &data("degenerate_complex.json"),
        "--order",
        "30",
    ]);
    assert_eq!(r.status.code(), Some(2));
}
