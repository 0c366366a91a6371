//! End-to-end tests for the `xmat` binary: byte-for-byte golden outputs,
//! exit code contract, and the guarantee that printed matrices re-parse to
//! the in-memory results.

use std::path::PathBuf;
use std::process::{Command, Output};

use crossmat::cross::CrossMatrix;
use crossmat::io;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn xmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xmat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_fixture(args: &[&str], file: &str) -> Output {
    let path = fixture(file);
    let mut full: Vec<&str> = Vec::new();
    let path_str = path.to_str().unwrap().to_string();
    full.push(args[0]);
    full.push(&path_str);
    full.extend_from_slice(&args[1..]);
    xmat(&full)
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn assert_golden(out: &Output, expected_stdout: &str) {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(out));
    assert_eq!(stdout_of(out), expected_stdout);
}

#[test]
fn det_prints_the_scalar() {
    assert_golden(&run_fixture(&["det"], "base3.xmat"), "-34\n");
}

#[test]
fn det_report_mode_uses_key_value() {
    assert_golden(&run_fixture(&["det", "--report"], "base3.xmat"), "det=-34\n");
}

#[test]
fn eig_of_the_exchange_matrix() {
    assert_golden(&run_fixture(&["eig"], "exchange2.xmat"), "1 -1\n");
}

#[test]
fn info_lists_order_scalar_and_norms() {
    assert_golden(
        &run_fixture(&["info"], "base3.xmat"),
        "order: 3\nscalar: real\npairs: 1\ncenter: 2\n\
         frobenius_norm: 7.416198487095663\nmax_abs: 5\n",
    );
}

#[test]
fn info_report_mode() {
    assert_golden(
        &run_fixture(&["info", "--report"], "base3.xmat"),
        "order=3\nscalar=real\npairs=1\ncenter=2\n\
         frobenius_norm=7.416198487095663\nmax_abs=5\n",
    );
}

#[test]
fn inverse_as_xmat_text() {
    assert_golden(
        &run_fixture(&["inv"], "base3.xmat"),
        "xmat 1\n3\n-0.17647058823529413 0.5 -0.058823529411764705\n\
         0.23529411764705882 0.5 0.29411764705882354\n",
    );
}

#[test]
fn solve_prints_the_solution_vector() {
    let path = fixture("base3.xmat");
    let rhs = fixture("rhs3.vec");
    let out = xmat(&["solve", path.to_str().unwrap(), "--rhs", rhs.to_str().unwrap()]);
    assert_golden(&out, "1 1 -0\n");
}

#[test]
fn solve_report_mode() {
    let path = fixture("base3.xmat");
    let rhs = fixture("rhs3.vec");
    let out = xmat(&[
        "solve",
        path.to_str().unwrap(),
        "--rhs",
        rhs.to_str().unwrap(),
        "--report",
    ]);
    assert_golden(&out, "x=1 1 -0\n");
}

#[test]
fn lu_prints_both_factors() {
    assert_golden(
        &run_fixture(&["lu"], "base3.xmat"),
        "# l\nxmat 1\n3\n1 1 1\n0 1 5\n# u\nxmat 1\n3\n1 2 -17\n4 2 0\n",
    );
}

#[test]
fn lu_report_mode() {
    assert_golden(
        &run_fixture(&["lu", "--report"], "base3.xmat"),
        "l.order=3\nl.diag=1 1 1\nl.anti=0 1 5\n\
         u.order=3\nu.diag=1 2 -17\nu.anti=4 2 0\n",
    );
}

#[test]
fn cholesky_of_a_positive_definite_matrix() {
    assert_golden(
        &run_fixture(&["chol"], "spd2.xmat"),
        "xmat 1\n2\n1.4142135623730951 1.224744871391589\n\
         0.7071067811865475 0\n",
    );
}

#[test]
fn qr_prints_both_factors() {
    assert_golden(
        &run_fixture(&["qr"], "base3.xmat"),
        "# q\nxmat 1\n3\n0.19611613513818404 1 -0.19611613513818404\n\
         0.9805806756909202 1 0.9805806756909202\n\
         # r\nxmat 1\n3\n5.0990195135927845 2 3.333974297349129\n\
         3.7262065676254967 2 0\n",
    );
}

#[test]
fn svd_prints_factors_and_values() {
    assert_golden(
        &run_fixture(&["svd"], "base3.xmat"),
        "# u\nxmat 1\n3\n0.5257311121191336 1 -0.5257311121191336\n\
         0.8506508083520399 1 0.8506508083520399\n\
         # s\n6.671325041455274 2 2.5482194158376132\n\
         # v\nxmat 1\n3\n0.7163472210067661 1 0.7163472210067661\n\
         -0.6977439780864351 1 0.6977439780864351\n",
    );
}

#[test]
fn svd_report_mode_sorts_values_when_asked() {
    assert_golden(
        &run_fixture(&["svd", "--report", "--sorted"], "base3.xmat"),
        "u.order=3\nu.diag=0.5257311121191336 1 -0.5257311121191336\n\
         u.anti=0.8506508083520399 1 0.8506508083520399\n\
         s=6.671325041455274 2.5482194158376132 2\n\
         v.order=3\nv.diag=0.7163472210067661 1 0.7163472210067661\n\
         v.anti=-0.6977439780864351 1 0.6977439780864351\n",
    );
}

#[test]
fn spectral_prints_vectors_and_values() {
    assert_golden(
        &run_fixture(&["spectral"], "base3.xmat"),
        "# v\nxmat 1\n3\n0.5824375615118437 1 -0.6671700427934688\n\
         0.7449054530602934 1 0.8128754436813413\n\
         # d\n6.58257569495584 2 -2.5825756949558403\n",
    );
}

#[test]
fn eigenvalues_are_pair_aligned_by_default() {
    assert_golden(
        &run_fixture(&["eig"], "base3.xmat"),
        "6.58257569495584 2 -2.5825756949558403\n",
    );
}

#[test]
fn eigenvalues_sort_by_descending_magnitude() {
    assert_golden(
        &run_fixture(&["eig", "--sorted"], "base3.xmat"),
        "6.58257569495584 -2.5825756949558403 2\n",
    );
}

#[test]
fn matrix_exponential_of_the_exchange_matrix() {
    assert_golden(
        &run_fixture(&["apply", "--function", "exp"], "exchange2.xmat"),
        "xmat 1\n2\n1.5430806348152437 1.5430806348152437\n\
         1.1752011936438014 1.1752011936438014\n",
    );
}

#[test]
fn matrix_square_root_of_a_positive_definite_matrix() {
    assert_golden(
        &run_fixture(&["apply", "--function", "sqrt"], "spd2.xmat"),
        "xmat 1\n2\n1.3660254037844386 1.3660254037844386\n\
         0.3660254037844386 0.3660254037844386\n",
    );
}

#[test]
fn complex_entries_parse_and_print() {
    assert_golden(
        &run_fixture(&["eig"], "complex2.xmat"),
        "2.732050807568877 -0.7320508075688773\n",
    );
}

#[test]
fn convert_from_dense_recovers_the_cross_form() {
    let path = fixture("dense3.txt");
    let out = xmat(&["convert", "--from-dense", path.to_str().unwrap()]);
    assert_golden(&out, "xmat 1\n3\n1 2 3\n4 2 5\n");
}

#[test]
fn convert_to_dense_prints_rows() {
    let path = fixture("base3.xmat");
    let out = xmat(&["convert", "--to-dense", path.to_str().unwrap()]);
    assert_golden(&out, "1 0 4\n0 2 0\n5 0 3\n");
}

#[test]
fn convert_directions_round_trip() {
    let dense = fixture("dense3.txt");
    let as_cross = stdout_of(&xmat(&["convert", "--from-dense", dense.to_str().unwrap()]));
    let tmp = std::env::temp_dir().join("xmat_roundtrip.xmat");
    std::fs::write(&tmp, &as_cross).unwrap();
    let back = stdout_of(&xmat(&["convert", "--to-dense", tmp.to_str().unwrap()]));
    assert_eq!(back, std::fs::read_to_string(&dense).unwrap());
}

#[test]
fn singular_matrix_exits_one_and_names_the_pair() {
    let out = run_fixture(&["inv"], "sing2.xmat");
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.contains("singular"), "stderr: {err}");
    assert!(err.contains("pair 1"), "stderr: {err}");
    assert!(stdout_of(&out).is_empty());
}

#[test]
fn solve_on_a_singular_matrix_exits_one() {
    let path = fixture("sing2.xmat");
    let rhs = std::env::temp_dir().join("xmat_rhs2.vec");
    std::fs::write(&rhs, "1 2\n").unwrap();
    let out = xmat(&["solve", path.to_str().unwrap(), "--rhs", rhs.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("pair 1"));
}

#[test]
fn cholesky_rejects_an_indefinite_matrix() {
    let out = run_fixture(&["chol"], "notpd.xmat");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("positive definite"));
}

#[test]
fn lu_without_pivoting_rejects_a_zero_pivot() {
    let out = run_fixture(&["lu"], "exchange2.xmat");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("zero pivot"));
}

#[test]
fn log_of_a_singular_matrix_is_a_domain_error() {
    let out = run_fixture(&["apply", "--function", "log"], "sing2.xmat");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("log"));
}

#[test]
fn parse_errors_exit_two_with_a_location() {
    let out = run_fixture(&["det"], "malformed.xmat");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("line 2"));
}

#[test]
fn missing_rhs_flag_exits_two() {
    let path = fixture("base3.xmat");
    let out = xmat(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rhs_length_mismatch_exits_two() {
    let path = fixture("base3.xmat");
    let rhs = std::env::temp_dir().join("xmat_rhs_short.vec");
    std::fs::write(&rhs, "1 2\n").unwrap();
    let out = xmat(&["solve", path.to_str().unwrap(), "--rhs", rhs.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("dimension mismatch"));
}

#[test]
fn pow_without_exponent_exits_two() {
    let out = run_fixture(&["apply", "--function", "pow"], "base3.xmat");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("--exponent"));
}

#[test]
fn exponent_without_pow_exits_two() {
    let out = run_fixture(
        &["apply", "--function", "exp", "--exponent", "2"],
        "base3.xmat",
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn convert_requires_exactly_one_direction() {
    let dense = fixture("dense3.txt");
    let cross = fixture("base3.xmat");
    let both = xmat(&[
        "convert",
        "--from-dense",
        dense.to_str().unwrap(),
        "--to-dense",
        cross.to_str().unwrap(),
    ]);
    assert_eq!(both.status.code(), Some(2));
    let neither = xmat(&["convert"]);
    assert_eq!(neither.status.code(), Some(2));
}

#[test]
fn real_input_promotes_to_complex_when_needed() {
    let out = run_fixture(&["spectral"], "rot2.xmat");
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains('i'), "expected complex tokens");
    assert!(stderr_of(&out).contains("complex"));
}

#[test]
fn bench_report_lists_timings_and_slopes() {
    let out = xmat(&[
        "bench", "--ops", "det", "--sizes", "64,128", "--repeats", "2", "--report",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("machine="));
    assert!(text.contains("det_structured_ns_64="));
    assert!(text.contains("det_dense_ns_64="));
    assert!(text.contains("det_ratio_64="));
    assert!(text.contains("slope_det="));
}

#[test]
fn bench_skips_dense_above_the_cutoff() {
    let out = xmat(&[
        "bench",
        "--ops",
        "mul",
        "--sizes",
        "64,128",
        "--repeats",
        "1",
        "--dense-max",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("skipped"));
    assert!(!text.contains("ratio_"));
}

#[test]
fn bench_rejects_an_empty_op_list() {
    let out = xmat(&["bench", "--ops", "", "--sizes", "64"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_rejects_unsorted_sizes() {
    let out = xmat(&["bench", "--ops", "det", "--sizes", "128,64"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn printed_inverse_reparses_to_the_in_memory_result() {
    let text = std::fs::read_to_string(fixture("base3.xmat")).unwrap();
    let x: CrossMatrix<f64> = io::parse_xmat(&text).unwrap();
    let expected = x.inverse().unwrap();
    let printed = stdout_of(&run_fixture(&["inv"], "base3.xmat"));
    let reparsed: CrossMatrix<f64> = io::parse_xmat(&printed).unwrap();
    assert_eq!(reparsed, expected);
}

#[test]
fn printed_factors_reparse_to_the_in_memory_results() {
    let text = std::fs::read_to_string(fixture("base3.xmat")).unwrap();
    let x: CrossMatrix<f64> = io::parse_xmat(&text).unwrap();
    let lu = x.lu().unwrap();
    let printed = stdout_of(&run_fixture(&["lu"], "base3.xmat"));
    let mut sections: Vec<(String, String)> = Vec::new();
    for line in printed.lines() {
        if let Some(name) = line.strip_prefix("# ") {
            sections.push((name.to_string(), String::new()));
        } else {
            let body = &mut sections.last_mut().expect("body follows a header").1;
            body.push_str(line);
            body.push('\n');
        }
    }
    assert_eq!(sections.len(), 2);
    assert_eq!(sections[0].0, "l");
    assert_eq!(sections[1].0, "u");
    let l: CrossMatrix<f64> = io::parse_xmat(&sections[0].1).unwrap();
    let u: CrossMatrix<f64> = io::parse_xmat(&sections[1].1).unwrap();
    assert_eq!(l, lu.l);
    assert_eq!(u, lu.u);
}

#[test]
fn printed_solution_reparses_to_the_in_memory_result() {
    let text = std::fs::read_to_string(fixture("base3.xmat")).unwrap();
    let x: CrossMatrix<f64> = io::parse_xmat(&text).unwrap();
    let expected = x.solve(&[1.0, 2.0, 5.0]).unwrap();
    let path = fixture("base3.xmat");
    let rhs = fixture("rhs3.vec");
    let printed = stdout_of(&xmat(&[
        "solve",
        path.to_str().unwrap(),
        "--rhs",
        rhs.to_str().unwrap(),
    ]));
    let reparsed: Vec<f64> = io::parse_vector(printed.trim_end()).unwrap();
    assert_eq!(reparsed.len(), expected.len());
    for (a, b) in reparsed.iter().zip(expected.iter()) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let first = run_fixture(&["svd"], "base3.xmat");
    let second = run_fixture(&["svd"], "base3.xmat");
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), second.status.code());
}
