//! Black-box tests of the `bgold` binary: argument grammar, exit codes,
//! byte-exact CSV output, JSON mirroring, and the stdout/stderr split.

use std::process::{Command, Output};

fn bgold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bgold"))
        .args(args)
        .output()
        .expect("binary should launch")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout must be UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr must be UTF-8")
}

#[test]
fn compare_single_row_is_byte_exact() {
    let out = bgold(&["compare", "--alpha", "sqrt:2", "--beta", "0", "--kappa", "2", "--xmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "N,G_kappa,R_kappa,main_term,rel_err\n\
         4,4.80453013918e-1,1,2.19161086610e0,7.80776313282e-1\n"
    );
}

#[test]
fn compare_output_is_deterministic() {
    let args = ["compare", "--alpha", "pi", "--kappa", "3", "--xmax", "500"];
    let a = bgold(&args);
    let b = bgold(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "repeated runs must produce identical bytes");
    assert!(!a.stdout.is_empty());
}

#[test]
fn compare_empty_window_warns_but_succeeds() {
    // With x_max below the smallest admissible target the sweep is empty:
    // still a success, with a warning on stderr and only the header on stdout.
    let out = bgold(&["compare", "--alpha", "sqrt:2", "--kappa", "3", "--xmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "N,G_kappa,R_kappa,main_term,rel_err\n");
    assert!(stderr(&out).contains("warning: no targets"));
}

#[test]
fn rational_alpha_needs_explicit_opt_in() {
    let gated = bgold(&["compare", "--alpha", "dec:1.5@1000", "--kappa", "2", "--xmax", "50"]);
    assert_eq!(gated.status.code(), Some(4));
    assert!(stderr(&gated).contains("error[bad-arguments]"));

    let allowed = bgold(&[
        "compare",
        "--alpha",
        "dec:1.5@1000",
        "--kappa",
        "2",
        "--xmax",
        "50",
        "--allow-rational",
    ]);
    assert_eq!(allowed.status.code(), Some(0), "stderr: {}", stderr(&allowed));
}

#[test]
fn compare_seeded_spot_check_reports() {
    let out = bgold(&[
        "compare", "--alpha", "sqrt:2", "--kappa", "2", "--xmax", "300", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("spot check (seed 7)"));
}

#[test]
fn density_emits_one_summary_row() {
    let out = bgold(&["density", "--alpha", "pi", "--kappa", "3", "--xmax", "2000"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(
        lines[0],
        "x_max,parity_class_size,no_rep_count,witness_count,predicted_witness_fraction,witness_fraction,no_rep_fraction"
    );
    assert!(lines[1].starts_with("2000,1000,"));
    assert!(stderr(&out).contains("witness fraction"));
}

#[test]
fn psi_grid_is_byte_exact() {
    let out = bgold(&["psi", "--gamma", "dec:0.666667@1000000", "--kappa", "2", "--grid", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "x,psi_kappa\n\
         0.00000000000e0,3.33334000000e-1\n\
         2.50000000000e-1,3.33334000000e-1\n\
         5.00000000000e-1,5.00000000000e-1\n\
         7.50000000000e-1,5.83334000000e-1\n\
         1.00000000000e0,3.33334000000e-1\n"
    );
    assert!(stderr(&out).contains("minimum 3.33334000000e-1"));
}

#[test]
fn sing_zeroes_mismatched_parity_exactly() {
    let out = bgold(&["sing", "--kappa", "2", "--limit", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,S_kappa,tail_bound");
    assert_eq!(lines.len(), 9);
    for n in [1usize, 3, 5, 7] {
        assert_eq!(lines[n], format!("{n},0.00000000000e0,0.00000000000e0"));
    }
    assert_eq!(lines[2], "2,1.32033659301e0,2.00040007335e-4");
    assert_eq!(lines[6], "6,2.64067318602e0,2.00040007335e-4");
}

#[test]
fn beatty_lists_the_members() {
    let out = bgold(&["beatty", "--alpha", "sqrt:2", "--beta", "0", "--xmax", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n\n1\n2\n4\n5\n7\n8\n9\n");
    assert!(stderr(&out).contains("density"));
}

#[test]
fn discrepancy_ladder_is_byte_exact() {
    let out = bgold(&["discrepancy", "--gamma", "golden-inverse", "--ladder", "10^2..10^3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "M,D_star,D_extreme_lo,D_extreme_hi,extreme_exact,log_ratio\n\
         100,1.41752799933e-2,1.69176962472e-2,1.69176962472e-2,true,-9.24234177035e-1\n\
         1000,1.33623373349e-3,1.64972882224e-3,1.64972882224e-3,true,-9.58039189531e-1\n"
    );
    assert!(stderr(&out).contains("log-ratio"));
}

#[test]
fn json_format_is_valid_and_newline_terminated() {
    let out = bgold(&["sing", "--kappa", "3", "--limit", "9", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.ends_with('\n'));
    let v: serde_json::Value = serde_json::from_str(&text).expect("stdout must be valid JSON");
    assert!(v.is_array() || v.is_object());
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("psi.csv");
    let to_stdout = bgold(&["psi", "--gamma", "dec:0.4@100", "--kappa", "3", "--grid", "8"]);
    let to_file = bgold(&[
        "psi",
        "--gamma",
        "dec:0.4@100",
        "--kappa",
        "3",
        "--grid",
        "8",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(to_stdout.status.code(), Some(0));
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty(), "--out must route the table away from stdout");
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, to_stdout.stdout);
}

#[test]
fn bad_arguments_exit_with_four() {
    // Window width outside (0, 1).
    let out = bgold(&["psi", "--gamma", "dec:1.5@10", "--kappa", "2"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("error[bad-arguments]"));

    // Unknown flags are also usage errors.
    let out = bgold(&["compare", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn capacity_limits_exit_with_three() {
    // Four-term bulk sweeps are budgeted well below 2*10^5.
    let out = bgold(&["compare", "--alpha", "sqrt:2", "--kappa", "4", "--xmax", "200000"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("error[capacity]"));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(bgold(&["--help"]).status.code(), Some(0));
    assert_eq!(bgold(&["--version"]).status.code(), Some(0));
    assert_eq!(bgold(&["compare", "--help"]).status.code(), Some(0));
}
