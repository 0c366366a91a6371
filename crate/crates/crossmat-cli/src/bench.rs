//! Timing harness comparing the structured O(n) paths against the dense
//! reference implementations. Dense runs are cut off above `--dense-max`
//! since they cost O(n^2) memory and O(n^3) time. The log-log slope of the
//! structured timings is reported, not enforced; asserting on it is the
//! acceptance suite's job.

use std::hint::black_box;
use std::process::Command;
use std::time::Instant;

use crossmat::cross::CrossMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::commands::CliError;

pub struct BenchArgs {
    pub ops: Vec<String>,
    pub sizes: Vec<usize>,
    pub repeats: usize,
    pub dense_max: usize,
    pub report: bool,
}

#[derive(Clone, Copy)]
enum Op {
    Det,
    Inverse,
    Mul,
}

impl Op {
    fn name(self) -> &'static str {
        match self {
            Op::Det => "det",
            Op::Inverse => "inverse",
            Op::Mul => "mul",
        }
    }
}

fn parse_op(s: &str) -> Result<Op, CliError> {
    match s {
        "det" => Ok(Op::Det),
        "inverse" | "inv" => Ok(Op::Inverse),
        "mul" => Ok(Op::Mul),
        other => Err(CliError::Usage(format!(
            "unknown bench operation '{other}' (expected det, inverse, or mul)"
        ))),
    }
}

fn machine_info() -> String {
    Command::new("uname")
        .args(["-srm"])
        .output()
        .ok()
        .and_then(|o| String::from_utf8(o.stdout).ok())
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "unknown".to_string())
}

fn random_cross(n: usize, seed: u64) -> CrossMatrix<f64> {
    let mut rng = StdRng::seed_from_u64(seed);
    let diag: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut anti: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    if n % 2 == 1 {
        anti[n / 2] = diag[n / 2];
    }
    CrossMatrix::new(diag, anti).unwrap()
}

fn run_iters(op: Op, a: &CrossMatrix<f64>, b: &CrossMatrix<f64>, iters: usize) -> f64 {
    let start = Instant::now();
    for _ in 0..iters {
        match op {
            Op::Det => {
                black_box(black_box(a).det());
            }
            Op::Inverse => {
                black_box(black_box(a).inverse().expect("bench instances are regular"));
            }
            Op::Mul => {
                black_box(black_box(a).mul(black_box(b)).expect("orders match"));
            }
        }
    }
    start.elapsed().as_secs_f64()
}

/// Nanoseconds per structured operation: the fastest of `repeats` samples,
/// each sample amortized over enough iterations to be measurable.
fn time_structured(op: Op, n: usize, repeats: usize) -> f64 {
    let a = random_cross(n, 0x5eed_0000 + n as u64);
    let b = random_cross(n, 0x5eed_ffff + n as u64);
    let once = run_iters(op, &a, &b, 1).max(1e-9);
    let iters = ((0.01 / once) as usize).clamp(1, 10_000_000);
    let mut best = f64::INFINITY;
    for _ in 0..repeats.max(1) {
        best = best.min(run_iters(op, &a, &b, iters) / iters as f64);
    }
    best * 1e9
}

/// Nanoseconds per dense operation; one timed pass, these are slow.
fn time_dense(op: Op, n: usize) -> f64 {
    let a = random_cross(n, 0x5eed_0000 + n as u64).to_dense();
    let b = random_cross(n, 0x5eed_ffff + n as u64).to_dense();
    let start = Instant::now();
    match op {
        Op::Det => {
            black_box(crossmat_oracle::dense_det(black_box(&a)));
        }
        Op::Inverse => {
            black_box(crossmat_oracle::dense_inverse(black_box(&a)).ok());
        }
        Op::Mul => {
            black_box(crossmat_oracle::dense_mul(black_box(&a), black_box(&b)));
        }
    }
    start.elapsed().as_secs_f64() * 1e9
}

fn regression_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let num: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    num / den
}

pub fn run(args: &BenchArgs) -> Result<String, CliError> {
    let ops: Vec<Op> = args
        .ops
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_op(s.trim()))
        .collect::<Result<_, _>>()?;
    if ops.is_empty() {
        return Err(CliError::Usage(
            "bench needs at least one operation (--ops det,inverse,mul)".to_string(),
        ));
    }
    if args.sizes.is_empty() {
        return Err(CliError::Usage("bench needs at least one size".to_string()));
    }
    if args.sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Usage(
            "bench sizes must be strictly ascending".to_string(),
        ));
    }
    if args.repeats == 0 {
        return Err(CliError::Usage("bench repeats must be positive".to_string()));
    }

    let machine = machine_info();
    let mut out = String::new();
    if args.report {
        out.push_str(&format!("machine={machine}\nrepeats={}\n", args.repeats));
    } else {
        out.push_str(&format!("# machine: {machine}\n"));
        out.push_str(&format!(
            "{:<10} {:>9} {:>16} {:>16} {:>12}\n",
            "op", "n", "structured", "dense", "ratio"
        ));
    }

    for &op in &ops {
        let mut points: Vec<(f64, f64)> = Vec::new();
        for &n in &args.sizes {
            let structured = time_structured(op, n, args.repeats);
            points.push(((n as f64).ln(), structured.ln()));
            let dense = if n <= args.dense_max {
                Some(time_dense(op, n))
            } else {
                None
            };
            if args.report {
                out.push_str(&format!(
                    "{}_structured_ns_{n}={structured:.0}\n",
                    op.name()
                ));
                if let Some(d) = dense {
                    out.push_str(&format!("{}_dense_ns_{n}={d:.0}\n", op.name()));
                    out.push_str(&format!(
                        "{}_ratio_{n}={:.2}\n",
                        op.name(),
                        d / structured
                    ));
                }
            } else {
                let (dense_str, ratio_str) = match dense {
                    Some(d) => (format!("{d:.0} ns"), format!("{:.1}", d / structured)),
                    None => ("skipped".to_string(), "-".to_string()),
                };
                out.push_str(&format!(
                    "{:<10} {:>9} {:>16} {:>16} {:>12}\n",
                    op.name(),
                    n,
                    format!("{structured:.0} ns"),
                    dense_str,
                    ratio_str
                ));
            }
        }
        if args.sizes.len() >= 2 {
            let slope = regression_slope(&points);
            if args.report {
                out.push_str(&format!("slope_{}={slope:.4}\n", op.name()));
            } else {
                out.push_str(&format!("# log-log slope for {}: {slope:.4}\n", op.name()));
            }
        }
    }
    Ok(out)
}
