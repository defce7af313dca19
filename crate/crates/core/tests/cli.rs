use std::path::PathBuf;
use std::process::{Command, Output};

use snp_core::report::VerifyReport;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn snp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_snp"))
        .args(args)
        .env_remove("SNP_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const GLOBAL_FLAGS: [&str; 8] = [
    "--mode", "--prime", "--trials", "--seed", "--budget", "--format", "--out", "--timing",
];

fn golden(name: &str, args: &[&str]) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    let expected = std::fs::read_to_string(&path).unwrap();
    let out = snp(args);
    assert_eq!(out.status.code(), Some(0));
    let got = stdout(&out);
    assert_eq!(
        got,
        expected,
        "help for {args:?} drifted from {}",
        path.display()
    );
    for flag in GLOBAL_FLAGS {
        assert!(got.contains(flag), "{flag} missing from {name}");
    }
}

#[test]
fn help_is_stable() {
    golden("help.txt", &["--help"]);
    for c in [
        "polarize", "normform", "transfer", "verify", "snp", "tower", "probe",
    ] {
        golden(&format!("help_{c}.txt"), &[c, "--help"]);
    }
    for i in [
        "norm-transitivity",
        "pure-descent",
        "trinomial-descent",
        "reduced-norm-transfer",
        "quaternion-closed-form",
        "split-cubic-closed-form",
        "quartic-transfer",
        "sextic-transfer",
        "composition",
    ] {
        golden(&format!("help_verify_{i}.txt"), &["verify", i, "--help"]);
    }
}

#[test]
fn pure_descent_passes() {
    let out = snp(&["verify", "pure-descent", "-d", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = VerifyReport::from_json(&stdout(&out)).unwrap();
    assert!(r.pass);
    assert_eq!(r.identity, "pure-descent");
    assert_eq!(r.seed, Some(0));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        "{\"base\": {\"kind\": \"rationals\"}, \"minpoly\": [\"oops\"]}",
    )
    .unwrap();
    let out = snp(&[
        "verify",
        "norm-transitivity",
        "--alpha",
        bad.to_str().unwrap(),
        "--k",
        &data("gaussian.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        snp(&["verify", "pure-descent", "-d", "3", "--prime", "7"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(snp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        snp(&[
            "snp",
            &data("cube_f7.json"),
            "-m",
            "2",
            "--mode",
            "probabilistic"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn failing_check_exits_one() {
    // a diagonal cubic does not compose with the multiplication of Q(cbrt 2)
    let out = snp(&[
        "verify",
        "composition",
        "--ext",
        &data("cbrt2.json"),
        "--form",
        &data("cube_sum.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL") && text.contains("witness"));
}

#[test]
fn reports_are_reproducible() {
    let args = [
        "verify",
        "trinomial-descent",
        "-d",
        "4",
        "--mode",
        "probabilistic",
        "--seed",
        "11",
        "--format",
        "json",
    ];
    let a = stdout(&snp(&args));
    let b = stdout(&snp(&args));
    assert_eq!(a, b);
    let r = VerifyReport::from_json(&a).unwrap();
    assert_eq!(VerifyReport::from_json(&r.to_json()).unwrap(), r);
    assert_eq!(r.seed, Some(11));
    assert!(r.failure_bound.unwrap().below_pow2(40));
}

#[test]
fn seed_from_environment_and_flag_override() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_snp"));
        c.args([
            "probe",
            "quaternion",
            "--instances",
            "3",
            "--format",
            "json",
        ]);
        c.env_remove("SNP_SEED");
        if let Some(e) = env {
            c.env("SNP_SEED", e);
        }
        if let Some(f) = flag {
            c.args(["--seed", f]);
        }
        VerifyReport::from_json(&String::from_utf8(c.output().unwrap().stdout).unwrap()).unwrap()
    };
    assert_eq!(run(Some("21"), None).seed, Some(21));
    assert_eq!(run(Some("21"), Some("4")).seed, Some(4));
}

#[test]
fn finite_field_command() {
    let out = snp(&["snp", &data("cube_f7.json"), "-m", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = VerifyReport::from_json(&stdout(&out)).unwrap();
    assert_eq!(r.parameters["base_values"], "{1, 6}");
}

#[test]
fn quaternion_sweep_names_constant() {
    let out = snp(&["verify", "quaternion-closed-form", "--instances", "25"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("resolved constant: c"));
}

#[test]
fn normform_round_trips_through_form_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("norm.json");
    let out = snp(&[
        "normform",
        &data("cbrt2.json"),
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let f = snp_core::forms::FormFile::parse(&text).unwrap();
    assert_eq!((f.degree, f.dim), (3, 3));
    let polar = snp(&["polarize", path.to_str().unwrap()]);
    assert!(stdout(&polar).contains("diagonal restores form: true"));
}

#[test]
fn tower_open_case() {
    let out = snp(&["tower", &data("tower_open.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let plan: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(plan["overall"], "unknown");
}

#[test]
fn latex_lists_descent_vector() {
    let out = snp(&["verify", "pure-descent", "-d", "2", "--format", "latex"]);
    let text = stdout(&out);
    assert!(text.contains("A_{0} &= -v_{1}^{2} e + u_{1}^{2}"));
}
