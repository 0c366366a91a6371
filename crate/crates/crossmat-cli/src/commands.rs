//! Implementations of the file-driven subcommands. Each one reads a matrix,
//! runs a library routine generically over the scalar type, and renders the
//! result either as XMAT text / plain value lines or as key=value pairs when
//! `--report` is set.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crossmat::cross::CrossMatrix;
use crossmat::error::CrossError;
use crossmat::funcs::{exp_function, log_function, pow_function, sqrt_function, ScalarFunction};
use crossmat::io::{self, ParseError};
use crossmat::linalg::sort_desc_by_magnitude;
use crossmat::scalar::Scalar;
use num_complex::Complex64;

/// Command failures split by exit code: domain errors leave with 1,
/// usage and parse problems with 2.
#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Usage(String),
}

/// Sort library errors into the exit-code contract. Mathematical
/// impossibilities are domain errors; malformed inputs are usage errors.
pub fn classify(err: CrossError) -> CliError {
    match err {
        CrossError::ZeroOrder
        | CrossError::DimensionMismatch { .. }
        | CrossError::CenterConflict
        | CrossError::NotSquare { .. }
        | CrossError::NotCross { .. }
        | CrossError::IndexOutOfRange { .. }
        | CrossError::MalformedForm => CliError::Usage(err.to_string()),
        other => CliError::Domain(other.to_string()),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn parse_failure(path: &Path, err: ParseError) -> CliError {
    CliError::Usage(format!("{}: {err}", path.display()))
}

#[derive(Clone, Copy)]
pub enum FunctionKind {
    Exp,
    Log,
    Sqrt,
    Pow(f64),
}

pub enum Op {
    Info,
    Det,
    Inv,
    Eig,
    Lu,
    Chol,
    Qr,
    Svd,
    Polar,
    Spectral,
    Solve,
    Apply(FunctionKind),
}

pub struct Ctx {
    pub report: bool,
    pub sorted: bool,
    pub tol: f64,
    pub dense_max: usize,
}

/// Run one matrix subcommand against a file, dispatching on the scalar kind
/// of the input text. A real computation that halts because its result needs
/// complex arithmetic is retried once with promoted scalars.
pub fn run_matrix_op(
    file: &Path,
    rhs: Option<&Path>,
    op: Op,
    ctx: &Ctx,
) -> Result<String, CliError> {
    let text = read_file(file)?;
    let rhs_text = match rhs {
        Some(p) => Some((p, read_file(p)?)),
        None => None,
    };
    let complex = io::is_complex_text(&text)
        || rhs_text
            .as_ref()
            .map(|(_, t)| io::is_complex_text(t))
            .unwrap_or(false);
    if complex {
        let x: CrossMatrix<Complex64> =
            io::parse_xmat(&text).map_err(|e| parse_failure(file, e))?;
        let b = parse_rhs::<Complex64>(&rhs_text)?;
        execute(&x, b.as_deref(), &op, ctx).map_err(classify)
    } else {
        let x: CrossMatrix<f64> = io::parse_xmat(&text).map_err(|e| parse_failure(file, e))?;
        let b = parse_rhs::<f64>(&rhs_text)?;
        match execute(&x, b.as_deref(), &op, ctx) {
            Err(e) if matches!(e, CrossError::NeedsComplex { .. }) => {
                eprintln!("note: {e}; retrying with complex arithmetic");
                let xc = x.to_complex();
                let bc: Option<Vec<Complex64>> =
                    b.map(|v| v.iter().map(|r| Complex64::new(*r, 0.0)).collect());
                execute(&xc, bc.as_deref(), &op, ctx).map_err(classify)
            }
            r => r.map_err(classify),
        }
    }
}

fn parse_rhs<T: Scalar>(
    rhs_text: &Option<(&Path, String)>,
) -> Result<Option<Vec<T>>, CliError> {
    match rhs_text {
        Some((path, text)) => io::parse_vector(text)
            .map(Some)
            .map_err(|e| parse_failure(path, e)),
        None => Ok(None),
    }
}

fn execute<T: Scalar>(
    x: &CrossMatrix<T>,
    rhs: Option<&[T]>,
    op: &Op,
    ctx: &Ctx,
) -> Result<String, CrossError> {
    match op {
        Op::Info => Ok(info_text(x, ctx)),
        Op::Det => Ok(scalar_line("det", x.det(), ctx)),
        Op::Inv => Ok(single_matrix("inverse", &x.inverse()?, ctx)),
        Op::Solve => {
            let b = rhs.expect("solve always receives a right-hand side");
            Ok(value_list("x", &x.solve(b)?, ctx))
        }
        Op::Eig => {
            let mut vals = x.eigenvalues_complex();
            if ctx.sorted {
                sort_desc_by_magnitude(&mut vals);
            }
            Ok(value_list("eigenvalues", &vals, ctx))
        }
        Op::Lu => {
            let f = x.lu()?;
            Ok(format!(
                "{}{}",
                named_matrix("l", &f.l, ctx),
                named_matrix("u", &f.u, ctx)
            ))
        }
        Op::Chol => Ok(single_matrix("r", &x.cholesky()?, ctx)),
        Op::Qr => {
            let f = x.qr();
            Ok(format!(
                "{}{}",
                named_matrix("q", &f.q, ctx),
                named_matrix("r", &f.r, ctx)
            ))
        }
        Op::Svd => {
            let f = x.svd();
            let values: Vec<T::Real> = if ctx.sorted {
                f.sorted_singular_values().iter().map(|(s, _)| *s).collect()
            } else {
                f.s.clone()
            };
            Ok(format!(
                "{}{}{}",
                named_matrix("u", &f.u, ctx),
                named_values("s", &values, ctx),
                named_matrix("v", &f.v, ctx)
            ))
        }
        Op::Polar => {
            let f = x.polar();
            Ok(format!(
                "{}{}",
                named_matrix("u", &f.u, ctx),
                named_matrix("h", &f.h, ctx)
            ))
        }
        Op::Spectral => {
            let f = x.spectral()?;
            Ok(format!(
                "{}{}",
                named_matrix("v", &f.v, ctx),
                named_values("d", &f.d, ctx)
            ))
        }
        Op::Apply(kind) => {
            let g: ScalarFunction<T> = match kind {
                FunctionKind::Exp => exp_function(),
                FunctionKind::Log => log_function(),
                FunctionKind::Sqrt => sqrt_function(),
                FunctionKind::Pow(p) => pow_function(T::Real::from_f64(*p)),
            };
            Ok(single_matrix("result", &x.apply(&g)?, ctx))
        }
    }
}

/// Convert between the dense whitespace layout and the XMAT format.
pub fn run_convert(
    from_dense: Option<&Path>,
    to_dense: Option<&Path>,
    ctx: &Ctx,
) -> Result<String, CliError> {
    match (from_dense, to_dense) {
        (Some(path), None) => {
            let text = read_file(path)?;
            if io::is_complex_text(&text) {
                let a = io::parse_dense::<Complex64>(&text)
                    .map_err(|e| parse_failure(path, e))?;
                let x = CrossMatrix::from_dense(&a, ctx.tol).map_err(classify)?;
                Ok(single_matrix("matrix", &x, ctx))
            } else {
                let a = io::parse_dense::<f64>(&text).map_err(|e| parse_failure(path, e))?;
                let x = CrossMatrix::from_dense(&a, ctx.tol).map_err(classify)?;
                Ok(single_matrix("matrix", &x, ctx))
            }
        }
        (None, Some(path)) => {
            let text = read_file(path)?;
            if io::is_complex_text(&text) {
                dense_rows::<Complex64>(path, &text, ctx)
            } else {
                dense_rows::<f64>(path, &text, ctx)
            }
        }
        _ => Err(CliError::Usage(
            "convert needs exactly one of --from-dense or --to-dense".to_string(),
        )),
    }
}

fn dense_rows<T: Scalar>(path: &Path, text: &str, ctx: &Ctx) -> Result<String, CliError> {
    let x: CrossMatrix<T> = io::parse_xmat(text).map_err(|e| parse_failure(path, e))?;
    let n = x.order();
    if n > ctx.dense_max {
        return Err(CliError::Usage(format!(
            "order {n} exceeds --dense-max {}; refusing to materialize a dense matrix",
            ctx.dense_max
        )));
    }
    let mut out = String::new();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| x.get(i, j).fmt_token()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn join_tokens<S: Scalar>(v: &[S]) -> String {
    v.iter()
        .map(|e| e.fmt_token())
        .collect::<Vec<_>>()
        .join(" ")
}

fn info_text<T: Scalar>(x: &CrossMatrix<T>, ctx: &Ctx) -> String {
    let scalar = if T::IS_COMPLEX { "complex" } else { "real" };
    let center = match x.center() {
        Some(c) => c.fmt_token(),
        None => "none".to_string(),
    };
    let sep = if ctx.report { "=" } else { ": " };
    format!(
        "order{sep}{}\nscalar{sep}{scalar}\npairs{sep}{}\ncenter{sep}{center}\nfrobenius_norm{sep}{}\nmax_abs{sep}{}\n",
        x.order(),
        x.num_pairs(),
        x.frobenius_norm().fmt_token(),
        x.max_abs().fmt_token(),
    )
}

fn scalar_line<S: Scalar>(key: &str, value: S, ctx: &Ctx) -> String {
    if ctx.report {
        format!("{key}={}\n", value.fmt_token())
    } else {
        format!("{}\n", value.fmt_token())
    }
}

fn value_list<S: Scalar>(key: &str, values: &[S], ctx: &Ctx) -> String {
    if ctx.report {
        format!("{key}={}\n", join_tokens(values))
    } else {
        format!("{}\n", join_tokens(values))
    }
}

/// A lone matrix result: bare XMAT text, directly usable as an input file.
fn single_matrix<T: Scalar>(name: &str, x: &CrossMatrix<T>, ctx: &Ctx) -> String {
    if ctx.report {
        matrix_keys(name, x)
    } else {
        io::serialize_xmat(x)
    }
}

/// One factor of a multi-part result, labeled with a comment header so the
/// blocks can be split apart again.
fn named_matrix<T: Scalar>(name: &str, x: &CrossMatrix<T>, ctx: &Ctx) -> String {
    if ctx.report {
        matrix_keys(name, x)
    } else {
        format!("# {name}\n{}", io::serialize_xmat(x))
    }
}

fn named_values<S: Scalar>(name: &str, values: &[S], ctx: &Ctx) -> String {
    if ctx.report {
        format!("{name}={}\n", join_tokens(values))
    } else {
        format!("# {name}\n{}\n", join_tokens(values))
    }
}

fn matrix_keys<T: Scalar>(name: &str, x: &CrossMatrix<T>) -> String {
    format!(
        "{name}.order={}\n{name}.diag={}\n{name}.anti={}\n",
        x.order(),
        join_tokens(x.diag()),
        join_tokens(x.anti())
    )
}
