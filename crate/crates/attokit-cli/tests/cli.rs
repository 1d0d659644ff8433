//! End-to-end tests of the `attokit` binary: schema stability,
//! determinism, exit codes, and numeric agreement with the library.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use attokit::barrier::AtomSpec;
use attokit::ttime;
use attokit::units;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_attokit"))
        .args(args)
        .env("ATTOKIT_NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines().filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header: Vec<String> = lines
        .next()
        .expect("header row")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<String> {
    let idx = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("column {name} in {header:?}"));
    rows.iter().map(|r| r[idx].clone()).collect()
}

#[test]
fn scan_schema_and_values_match_the_library() {
    let output = run(&["scan"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    let (header, rows) = parse_csv(&text);
    assert_eq!(
        header,
        [
            "f_au",
            "intensity_au",
            "intensity_wcm2",
            "tau_i_as",
            "tau_d_as",
            "tau_sym_as",
            "tau_num_as",
            "gamma_k",
            "regime"
        ]
    );
    assert_eq!(rows.len(), 9);

    let atom = AtomSpec::helium_clementi();
    let tau_d: Vec<f64> = column(&header, &rows, "tau_d_as")
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    for (i, row) in rows.iter().enumerate() {
        let f: f64 = row[0].parse().unwrap();
        let expected = units::au_to_attoseconds(ttime::t_sym(&atom, f).unwrap().tau_d);
        assert!(
            (tau_d[i] - expected).abs() <= 1e-5 * expected,
            "row {i}: {} vs {expected}",
            tau_d[i]
        );
    }
    // strictly decreasing from ~73.59 to ~14.69 as
    assert!(tau_d.windows(2).all(|w| w[1] < w[0]));
    assert!((tau_d[0] - 73.5872).abs() < 1e-3);
    assert!((tau_d[8] - 14.6897).abs() < 1e-3);

    // regimes flip from multiphoton through intermediate to tunneling
    let regimes = column(&header, &rows, "regime");
    assert_eq!(regimes[0], "multiphoton");
    assert_eq!(regimes[8], "tunneling");
    assert!(regimes.contains(&"intermediate".to_string()));
}

#[test]
fn scan_is_byte_identical_across_runs() {
    let a = run(&["scan", "--field-grid", "0.04:0.12:0.005"]);
    let b = run(&["scan", "--field-grid", "0.04:0.12:0.005"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);

    // --output writes the same bytes
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let c = run(&[
        "scan",
        "--field-grid",
        "0.04:0.12:0.005",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(c.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn scan_at_the_atomic_field_strength_zeroes_tau_num() {
    let output = run(&["scan", "--field-grid", "0.12095388813333334"]);
    assert!(output.status.success());
    let (header, rows) = parse_csv(&stdout_of(&output));
    assert_eq!(column(&header, &rows, "tau_num_as")[0], "0");
    let tau_d: f64 = column(&header, &rows, "tau_d_as")[0].parse().unwrap();
    assert!((tau_d - 13.3851).abs() < 1e-3);
}

#[test]
fn scan_above_threshold_yields_a_warning_row_and_exit_zero() {
    let output = run(&["scan", "--field-grid", "0.13"]);
    assert!(output.status.success(), "partial results still exit 0");
    assert!(stderr_of(&output).contains("exceeds the atomic field strength"));
    let (header, rows) = parse_csv(&stdout_of(&output));
    assert_eq!(rows.len(), 1);
    let row = &rows[0];
    assert_eq!(column(&header, &rows, "regime")[0], "above-threshold");
    // time cells are empty, gamma still present
    for name in ["tau_i_as", "tau_d_as", "tau_sym_as", "tau_num_as"] {
        assert_eq!(column(&header, &rows, name)[0], "", "{name} should be empty");
    }
    assert!(!column(&header, &rows, "gamma_k")[0].is_empty());
    assert!(!row[1].is_empty());
}

#[test]
fn scan_json_format() {
    let output = run(&["scan", "--field-grid", "0.11,0.13", "--format", "json"]);
    assert!(output.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    let rows = parsed.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0]["tau_d_as"].is_f64());
    assert!(rows[0].get("error").is_none());
    assert_eq!(rows[1]["regime"], "above-threshold");
    assert!(rows[1]["error"].as_str().unwrap().contains("atomic field strength"));
}

#[test]
fn scan_series_route_matches_the_closed_form() {
    let closed = run(&["scan", "--field-grid", "0.11"]);
    let series = run(&["scan", "--field-grid", "0.11", "--series-order", "200"]);
    let (h1, r1) = parse_csv(&stdout_of(&closed));
    let (h2, r2) = parse_csv(&stdout_of(&series));
    let a: f64 = column(&h1, &r1, "tau_num_as")[0].parse().unwrap();
    let b: f64 = column(&h2, &r2, "tau_num_as")[0].parse().unwrap();
    assert!((a - b).abs() <= 1e-6 * a);

    // one term only: the leading geometric term, well below the closed form
    let first = run(&["scan", "--field-grid", "0.11", "--series-order", "1"]);
    let (h3, r3) = parse_csv(&stdout_of(&first));
    let c: f64 = column(&h3, &r3, "tau_num_as")[0].parse().unwrap();
    let expected = units::au_to_attoseconds(
        ttime::t_num_series(&AtomSpec::helium_clementi(), 0.11, 1)
            .unwrap()
            .value,
    );
    assert!((c - expected).abs() <= 1e-5 * expected);
    assert!(c < a);
}

#[test]
fn table1_schema_golden_and_eta() {
    let output = run(&["table1"]);
    assert!(output.status.success());
    let (header, rows) = parse_csv(&stdout_of(&output));
    assert_eq!(header, ["quantity", "1", "2", "3", "4", "5", "6", "7.5"]);
    assert_eq!(rows.len(), 6);
    let quantities: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(
        quantities,
        [
            "intensity_au",
            "field_au",
            "m_l",
            "n_ph_mean",
            "p_compton_over_ke_pct",
            "p_wavepacket_over_ke_pct"
        ]
    );

    // golden diff flags exactly the anomalous Compton cell
    let golden = stdout_of(&run(&["table1", "--golden"]));
    let flagged: Vec<&str> = golden
        .lines()
        .filter(|l| l.ends_with("flagged-mismatch"))
        .collect();
    assert_eq!(flagged.len(), 1);
    assert!(flagged[0].starts_with("p_compton_over_ke_pct,2,"));
    assert!(!golden.lines().any(|l| l.ends_with(",mismatch")));

    // eta doubles the wave-packet row only
    let single = stdout_of(&run(&["table1", "--multipliers", "1"]));
    let doubled = stdout_of(&run(&["table1", "--multipliers", "1", "--eta", "2"]));
    let (h1, r1) = parse_csv(&single);
    let (_, r2) = parse_csv(&doubled);
    assert_eq!(h1, ["quantity", "1"]);
    let row_value = |rows: &[Vec<String>], name: &str| -> f64 {
        rows.iter()
            .find(|r| r[0] == name)
            .unwrap()[1]
            .parse()
            .unwrap()
    };
    let pw1 = row_value(&r1, "p_wavepacket_over_ke_pct");
    let pw2 = row_value(&r2, "p_wavepacket_over_ke_pct");
    assert!((pw2 - 2.0 * pw1).abs() <= 1e-5 * pw2);
    assert_eq!(
        row_value(&r1, "n_ph_mean"),
        row_value(&r2, "n_ph_mean"),
        "photon count is eta-independent"
    );
}

#[test]
fn barrier_record_and_profile() {
    let output = run(&["barrier", "--field", "0.04"]);
    assert!(output.status.success());
    let (header, rows) = parse_csv(&stdout_of(&output));
    assert_eq!(
        header,
        ["f_au", "x_entry", "x_exit", "x_classical", "x_max", "d_b", "h_b", "delta_z", "f_a"]
    );
    let x_entry: f64 = column(&header, &rows, "x_entry")[0].parse().unwrap();
    let x_exit: f64 = column(&header, &rows, "x_exit")[0].parse().unwrap();
    assert!((x_entry - 2.05444).abs() < 1e-4);
    assert!((x_exit - 20.5348).abs() < 1e-3);

    // degenerate barrier at F_a
    let degenerate = stdout_of(&run(&["barrier", "--field", "0.12095388813333334"]));
    let (h, r) = parse_csv(&degenerate);
    assert_eq!(column(&h, &r, "d_b")[0], "0");
    assert_eq!(column(&h, &r, "h_b")[0], "0");

    // sampled profile: comment record plus 100 monotone rows
    let profile = stdout_of(&run(&["barrier", "--field", "0.04", "--profile", "100"]));
    assert!(profile.lines().any(|l| l.starts_with("# x_max=6.49519")));
    let (h, rows) = parse_csv(&profile);
    assert_eq!(h, ["x_au", "potential_au", "effective_potential_au"]);
    assert_eq!(rows.len(), 100);
    let xs: Vec<f64> = column(&h, &rows, "x_au")
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    assert!(xs.windows(2).all(|w| w[1] > w[0]));
    assert!((xs[0] - 0.5 * x_entry).abs() < 1e-4);
    assert!((xs[99] - 1.5 * x_exit).abs() < 1e-2);

    // out-of-range field is a config error
    let bad = run(&["barrier", "--field", "0.2"]);
    assert_eq!(bad.status.code(), Some(1));
    let none = run(&["barrier"]);
    assert_eq!(none.status.code(), Some(1));
}

#[test]
fn regimes_covers_the_bands() {
    let output = run(&["regimes", "--field-grid", "0.04,0.09,0.11,0.13"]);
    assert!(output.status.success());
    let (header, rows) = parse_csv(&stdout_of(&output));
    assert_eq!(
        header,
        ["f_au", "intensity_au", "gamma_k", "tau_k_au", "tau_k_as", "regime"]
    );
    let regimes = column(&header, &rows, "regime");
    assert_eq!(
        regimes,
        ["multiphoton", "intermediate", "tunneling", "above-threshold"]
    );
    // gamma = tau_k * omega0
    let gamma: f64 = column(&header, &rows, "gamma_k")[0].parse().unwrap();
    let tau_k: f64 = column(&header, &rows, "tau_k_au")[0].parse().unwrap();
    assert!((gamma - tau_k * 0.0619).abs() < 1e-4);
}

#[test]
fn compare_fixture_suite() {
    // exact fixture
    let output = run(&["compare", fixture("synthetic_taud_kase.csv").to_str().unwrap()]);
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert!(report["rms_as"].as_f64().unwrap() < 1e-9);
    assert_eq!(report["n_points"], 9);

    // constant offset
    let output = run(&["compare", fixture("synthetic_taud_offset5.csv").to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert!((report["rms_as"].as_f64().unwrap() - 5.0).abs() < 1e-9);

    // reference-shift identity through the CLI
    let output = run(&[
        "compare",
        fixture("synthetic_taud_kase.csv").to_str().unwrap(),
        "--model",
        "taunum",
        "--shift",
        "half-inverse-ip",
    ]);
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert!(report["rms_as"].as_f64().unwrap() < 1e-9);
    assert!((report["shift_applied_as"].as_f64().unwrap() - 13.3851).abs() < 1e-3);
}

#[test]
fn compare_data_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(
        &bad,
        "field_au,delay_as\n0.05,not-a-number\n0.07,also-bad\n",
    )
    .unwrap();
    let output = run(&["compare", bad.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let err = stderr_of(&output);
    assert!(err.contains("line 2") && err.contains("line 3"), "{err}");

    let missing = run(&["compare", dir.path().join("absent.csv").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));

    // a point above F_a is excluded with a warning, not an error
    let partial = dir.path().join("partial.csv");
    std::fs::write(
        &partial,
        "field_au,delay_as\n0.05,57.1796944307216\n0.19,10.0\n",
    )
    .unwrap();
    let output = run(&["compare", partial.to_str().unwrap()]);
    assert!(output.status.success());
    assert!(stderr_of(&output).contains("excluded"));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(report["n_excluded"], 1);
}

#[test]
fn config_file_merges_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "atom=he-kullie\nfield-grid=0.04\n").unwrap();

    // config alone: Kullie tau_d(0.04) = 92.13 as
    let output = run(&["scan", "--config", conf.to_str().unwrap()]);
    assert!(output.status.success());
    let (h, r) = parse_csv(&stdout_of(&output));
    let tau_d: f64 = column(&h, &r, "tau_d_as")[0].parse().unwrap();
    assert!((tau_d - 92.1300).abs() < 1e-3);

    // flag overrides the file: Clementi value instead
    let output = run(&[
        "scan",
        "--config",
        conf.to_str().unwrap(),
        "--atom",
        "he-clementi",
    ]);
    let (h, r) = parse_csv(&stdout_of(&output));
    let tau_d: f64 = column(&h, &r, "tau_d_as")[0].parse().unwrap();
    assert!((tau_d - 73.5872).abs() < 1e-3);
}

#[test]
fn config_errors_exit_1() {
    for args in [
        &["scan", "--field-grid", "0.04", "--intensity-grid", "0.01"][..],
        &["scan", "--field-grid", "0.12:0.04:0.01"],
        &["scan", "--field-grid", "0"],
        &["scan", "--ip", "1.0"],
        &["scan", "--atom", "custom"],
        &["scan", "--ellipticity", "1.5"],
        &["table1", "--eta", "-1"],
        &["table1", "--multipliers", "1,-2"],
        &["scan", "--band", "1.2"],
    ] {
        let output = run(args);
        assert_eq!(output.status.code(), Some(1), "args {args:?}");
    }
    // unknown flags are usage errors, also exit 1
    let output = run(&["scan", "--no-such-flag"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn custom_atom_round_trip() {
    let output = run(&[
        "barrier",
        "--atom",
        "custom",
        "--ip",
        "2.0",
        "--zeff",
        "1.0",
        "--field",
        "1.0",
    ]);
    assert!(output.status.success());
    let (h, r) = parse_csv(&stdout_of(&output));
    // F_a = ip^2/(4 z) = 1.0, so f = F_a: degenerate barrier
    assert_eq!(column(&h, &r, "f_a")[0], "1.00000");
    assert_eq!(column(&h, &r, "d_b")[0], "0");
}
