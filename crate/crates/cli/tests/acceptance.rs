//! Acceptance suite for the command-line contract: JSON round-trip, the
//! exit-code table (0 ok / 1 check failure / 2 mismatch / 64 usage), and the
//! default verification suite finishing green well inside five minutes.

use std::process::{Command, Output};
use std::time::Instant;

use pdwbc_core::report::RunReport;

fn pdwbc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdwbc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn criterion(label: &str, ok: bool, detail: String) {
    println!("acceptance 12 ({label}): {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "acceptance criterion 12 ({label}) failed: {detail}");
}

#[test]
fn criterion_12_json_round_trip() {
    let out = pdwbc(&["z", "--T", "2/1", "--G", "5/4", "--n", "2", "--m", "1", "--route", "all"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: RunReport = serde_json::from_str(&text).expect("valid report JSON");
    let again: RunReport =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).expect("round trip");
    criterion(
        "JSON round-trip",
        report == again && out.status.code() == Some(0),
        format!("status {:?}", out.status.code()),
    );
    // Exact values are fraction strings, never floats.
    let exact_ok = report
        .results
        .iter()
        .filter(|r| r.name.starts_with("Z["))
        .all(|r| r.value == "251289/320000");
    criterion("exact fraction emission", exact_ok, text);
}

#[test]
fn criterion_12_exit_codes() {
    // 0: healthy computation with exact route agreement.
    let ok = pdwbc(&["z", "--T", "2/1", "--G", "5/4", "--n", "3", "--m", "1"]);
    criterion("exit 0 on success", ok.status.code() == Some(0), format!("{ok:?}"));

    // 2: regression mismatch against --expect.
    let mismatch = pdwbc(&[
        "z", "--T", "2/1", "--G", "5/4", "--n", "2", "--m", "1", "--expect", "1/2",
    ]);
    criterion("exit 2 on mismatch", mismatch.status.code() == Some(2), format!("{mismatch:?}"));

    // 64: parameters violating T > G > 1.
    let usage = pdwbc(&["z", "--T", "5/4", "--G", "2/1", "--n", "2", "--m", "1"]);
    criterion("exit 64 on invalid parameters", usage.status.code() == Some(64), format!("{usage:?}"));

    // 64: unknown flags.
    let flags = pdwbc(&["z", "--no-such-flag"]);
    criterion("exit 64 on bad flags", flags.status.code() == Some(64), format!("{flags:?}"));

    // 1: a genuine check failure (a too-coarse Toda step breaks the residual
    // tolerance honestly while staying inside the convergent regime).
    let failing = pdwbc(&["verify", "--check", "toda", "--eps", "1/100"]);
    let named = String::from_utf8(failing.stderr.clone()).unwrap();
    criterion(
        "exit 1 on failing check, naming it",
        failing.status.code() == Some(1) && named.contains("toda"),
        format!("{failing:?}"),
    );

    // 64: a step so coarse the perturbed weight stops being summable.
    let divergent = pdwbc(&["verify", "--check", "toda", "--eps", "1/2"]);
    criterion(
        "exit 64 on out-of-regime step",
        divergent.status.code() == Some(64),
        format!("{divergent:?}"),
    );
}

#[test]
fn criterion_12_default_verify_suite_green_and_fast() {
    let started = Instant::now();
    let out = pdwbc(&["verify"]);
    let elapsed = started.elapsed();
    let report: RunReport =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).expect("report JSON");
    criterion(
        "default verify suite green",
        out.status.code() == Some(0) && report.all_passed(),
        format!("exit {:?}", out.status.code()),
    );
    criterion(
        "default verify suite under five minutes",
        elapsed.as_secs() < 300,
        format!("took {elapsed:?}"),
    );
}

#[test]
fn precision_env_var_and_flag() {
    // The env var sets the default float precision; the flag wins over it;
    // values under 64 bits are usage errors wherever they come from.
    let from_env = Command::new(env!("CARGO_BIN_EXE_pdwbc"))
        .args(["z", "--T", "2/1", "--G", "5/4", "--n", "2", "--m", "1"])
        .env("PDWBC_PRECISION", "128")
        .output()
        .unwrap();
    assert_eq!(from_env.status.code(), Some(0));

    let env_too_low = Command::new(env!("CARGO_BIN_EXE_pdwbc"))
        .args(["z", "--T", "2/1", "--G", "5/4", "--n", "2", "--m", "1"])
        .env("PDWBC_PRECISION", "32")
        .output()
        .unwrap();
    assert_eq!(env_too_low.status.code(), Some(64));

    let flag_wins = Command::new(env!("CARGO_BIN_EXE_pdwbc"))
        .args(["z", "--T", "2/1", "--G", "5/4", "--n", "2", "--m", "1", "--precision", "96"])
        .env("PDWBC_PRECISION", "32")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));

    let garbage_env = Command::new(env!("CARGO_BIN_EXE_pdwbc"))
        .args(["z", "--T", "2/1", "--G", "5/4", "--n", "2", "--m", "1"])
        .env("PDWBC_PRECISION", "many")
        .output()
        .unwrap();
    assert_eq!(garbage_env.status.code(), Some(64));
}

#[test]
fn sweep_csv_table_shape() {
    let out = pdwbc(&[
        "sweep", "--T", "2/1", "--G", "5/4", "--n-range", "6..10", "--m-rule", "half",
        "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,m,Z,Z_meixner,C_m,xi,envelope,free_energy,free_energy_limit"
    );
    assert_eq!(lines.clone().count(), 5, "one row per n in 6..10 inclusive");
    // Exact columns are fractions; diagnostics are decimal strings.
    let first = lines.next().unwrap();
    assert!(first.starts_with("6,3,"));
    assert!(first.split(',').nth(2).unwrap().contains('/'));

    // Empty range: header only, still success.
    let empty = pdwbc(&[
        "sweep", "--T", "2/1", "--G", "5/4", "--n-range", "9..8", "--format", "csv",
    ]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(String::from_utf8(empty.stdout).unwrap().lines().count(), 1);

    // Rational m-rule: m = round(n/3).
    let ratio = pdwbc(&[
        "sweep", "--T", "2/1", "--G", "5/4", "--n-range", "6..9", "--m-rule", "ratio:1/3",
        "--format", "csv",
    ]);
    let pairs: Vec<String> = String::from_utf8(ratio.stdout)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').take(2).collect::<Vec<_>>().join(","))
        .collect();
    assert_eq!(pairs, ["6,2", "7,2", "8,3", "9,3"]);
}

#[test]
fn sweep_float_backend_reaches_larger_n() {
    let out = pdwbc(&[
        "sweep", "--T", "2/1", "--G", "5/4", "--n-range", "16..20", "--m-rule", "half",
        "--backend", "bigfloat", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        // Float backend emits decimal Z columns and xi stays inside the envelope.
        assert!(fields[2].contains('e') && !fields[2].contains('/'));
        let xi: f64 = fields[5].parse().unwrap();
        let envelope: f64 = fields[6].parse().unwrap();
        assert!(xi.abs() <= 10.0 * envelope, "{line}");
    }
}

#[test]
fn sweep_shows_xi_decay_and_free_energy_convergence() {
    let out = pdwbc(&[
        "sweep", "--T", "2/1", "--G", "5/4", "--n-range", "6..14", "--m-rule", "half",
        "--format", "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|line| line.split(',').collect())
        .collect();
    // |xi| decays along the diagonal (n, m) = (2j, j); odd n interleaves a
    // different n - m and is not comparable, so restrict to even rows.
    let xi_abs: Vec<f64> = rows
        .iter()
        .filter(|r| r[0].parse::<usize>().unwrap() % 2 == 0)
        .map(|r| r[5].parse::<f64>().unwrap().abs())
        .collect();
    for pair in xi_abs.windows(2) {
        assert!(pair[1] < pair[0], "|xi| must decay along the diagonal: {xi_abs:?}");
    }
    // The finite-size free energy drifts toward the limit column.
    let gap = |row: &Vec<&str>| {
        (row[7].parse::<f64>().unwrap() - row[8].parse::<f64>().unwrap()).abs()
    };
    assert!(gap(rows.last().unwrap()) < gap(rows.first().unwrap()));
    assert!(gap(rows.last().unwrap()) < 0.05);
}
