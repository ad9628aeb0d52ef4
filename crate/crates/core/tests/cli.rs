use std::process::{Command, Output};

use bellvar::state::StateVector;

fn bellvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bellvar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = bellvar(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn value(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix(' '))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .parse()
        .unwrap()
}

#[test]
fn verify_reports_small_residuals() {
    let out = stdout(&["verify", "--n", "4"]);
    assert!(value(&out, "spectral_residual") < 1e-12);
    assert!(value(&out, "square_identity_residual") < 1e-12);
}

#[test]
fn scan_csv_has_all_rows() {
    let out = stdout(&["scan-ghz", "--n", "3", "--theta-steps", "181", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "theta,measured,analytic,separable_bound");
    assert_eq!(lines.len(), 182);
    let last: Vec<f64> = lines[181].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(last[0], std::f64::consts::FRAC_PI_4);
    assert!((last[1] - 6.0).abs() < 1e-12);
}

#[test]
fn scan_csv_and_json_carry_the_same_numbers() {
    let csv = stdout(&["scan-ghz", "--n", "4", "--theta-steps", "31", "--format", "csv"]);
    let json = stdout(&["scan-ghz", "--n", "4", "--theta-steps", "31", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    for (line, row) in csv.lines().skip(1).zip(&rows) {
        let cells: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        for (k, key) in ["theta", "measured", "analytic", "separable_bound"].iter().enumerate() {
            assert_eq!(cells[k], row[key].as_f64().unwrap());
        }
    }
}

#[test]
fn lhv_of_the_variant_expression_is_four() {
    let out = stdout(&["lhv", "--n", "2", "--expr", "variant"]);
    assert_eq!(out.lines().next(), Some("4"));
}

#[test]
fn emitted_state_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.json");
    let path_str = path.to_str().unwrap();
    stdout(&["gisin", "--seed", "7", "--emit-state", "--output", path_str]);
    let text = std::fs::read_to_string(&path).unwrap();
    let psi = StateVector::from_json(&text).unwrap();
    assert_eq!(psi, bellvar::states::random_state(2, 7).unwrap());
    assert_eq!(psi.to_json() + "\n", text);

    let direct = stdout(&["gisin", "--seed", "7"]);
    let from_file = stdout(&["gisin", "--input", path_str]);
    assert_eq!(direct, from_file);
    assert!(value(&direct, "operator_value") > 2.0);
}

#[test]
fn build_output_parses_back() {
    let text = stdout(&["build", "--expr", "variant-op", "--n", "4"]);
    let op = bellvar::pauli::PauliSum::from_text(&text).unwrap();
    assert_eq!(op, bellvar::bell::variant_operator(4).unwrap());

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("op.txt");
    std::fs::write(&path, &text).unwrap();
    let out = stdout(&["bounds", "--input", path.to_str().unwrap()]);
    assert!((value(&out, "separable_max") - 8.0).abs() < 1e-6);
    assert!((value(&out, "entangled_max") - (8.0 + 2f64.powf(1.5))).abs() < 1e-9);
}

#[test]
fn schmidt_of_canonical_state() {
    let out = stdout(&["schmidt", "--theta", "0.5"]);
    assert_eq!(value(&out, "theta"), 0.5);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["bounds", "--n", "4", "--seed", "3", "--format", "json"][..],
        &["gisin", "--seed", "12", "--format", "csv"],
        &["scan-ghz", "--n", "2", "--theta-steps", "19"],
        &["lhv", "--n", "3", "--format", "json"],
    ] {
        let a = bellvar(args);
        let b = bellvar(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(bellvar(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(bellvar(&["bounds", "--expr", "nope"]).status.code(), Some(2));
    assert_eq!(bellvar(&["--help"]).status.code(), Some(0));

    let out = bellvar(&["gisin", "--input", "/definitely/not/here.json"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);

    let out = bellvar(&["gisin", "--theta", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());

    assert_eq!(bellvar(&["scan-ghz", "--n", "1"]).status.code(), Some(1));
    assert_eq!(bellvar(&["lhv", "--n", "9"]).status.code(), Some(1));
}

#[test]
fn malformed_state_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"n": 2, "amps": [[1, 0], [0, 0], [0], [0, 0]]}"#).unwrap();
    let out = bellvar(&["schmidt", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("amps[2]"));
}
