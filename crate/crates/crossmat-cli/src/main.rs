//! `xmat`: batch command line tool for cross-structured matrices.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 on success,
//! 1 on mathematical domain errors (singular matrix, not positive definite,
//! zero pivot, ...), 2 on usage and parse errors.

mod bench;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CliError, Ctx, FunctionKind, Op};

#[derive(Parser)]
#[command(
    name = "xmat",
    about = "Closed-form linear algebra for cross-structured matrices",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit machine-readable key=value output instead of plain text.
    #[arg(long, global = true)]
    report: bool,

    /// Sort eigenvalue and singular value listings by descending magnitude.
    #[arg(long, global = true)]
    sorted: bool,

    /// Largest order for which dense comparisons and conversions run.
    #[arg(long, global = true, default_value_t = 2048)]
    dense_max: usize,

    /// Tolerance used when classifying dense input as cross-structured.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Print order, scalar kind, and norms of a matrix.
    Info { file: PathBuf },
    /// Determinant.
    Det { file: PathBuf },
    /// Inverse, as a cross matrix.
    Inv { file: PathBuf },
    /// Solve X x = b for the right-hand side in --rhs.
    Solve {
        file: PathBuf,
        /// Whitespace-separated right-hand side vector file.
        #[arg(long)]
        rhs: PathBuf,
    },
    /// Eigenvalues, pair-aligned unless --sorted.
    Eig { file: PathBuf },
    /// Factor X = L U into cross-structured triangular factors.
    Lu { file: PathBuf },
    /// Factor a Hermitian positive definite X = R^H R.
    Chol { file: PathBuf },
    /// Factor X = Q R with Q unitary, both cross-structured.
    Qr { file: PathBuf },
    /// Singular value decomposition X = U S V^H.
    Svd { file: PathBuf },
    /// Polar decomposition X = U H.
    Polar { file: PathBuf },
    /// Spectral decomposition X = V D V^-1.
    Spectral { file: PathBuf },
    /// Apply an analytic function to the matrix.
    Apply {
        file: PathBuf,
        /// One of: exp, log, sqrt, pow.
        #[arg(long)]
        function: String,
        /// Exponent for --function pow.
        #[arg(long)]
        exponent: Option<f64>,
    },
    /// Convert between dense text and the xmat format.
    Convert {
        /// Read a dense matrix file and print it in xmat form.
        #[arg(long)]
        from_dense: Option<PathBuf>,
        /// Read an xmat file and print it as dense rows.
        #[arg(long)]
        to_dense: Option<PathBuf>,
    },
    /// Time structured operations against dense references.
    Bench {
        /// Comma-separated list from det, inverse, mul.
        #[arg(long, value_delimiter = ',', default_value = "det,inverse,mul")]
        ops: Vec<String>,
        /// Comma-separated ascending matrix orders.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "1024,4096,16384,65536,262144,1048576"
        )]
        sizes: Vec<usize>,
        /// Timing samples per measurement; the fastest wins.
        #[arg(long, default_value_t = 5)]
        repeats: usize,
    },
}

fn parse_function(name: &str, exponent: Option<f64>) -> Result<FunctionKind, CliError> {
    match name {
        "exp" => Ok(FunctionKind::Exp),
        "log" => Ok(FunctionKind::Log),
        "sqrt" => Ok(FunctionKind::Sqrt),
        "pow" => match exponent {
            Some(p) => Ok(FunctionKind::Pow(p)),
            None => Err(CliError::Usage(
                "--function pow requires --exponent".to_string(),
            )),
        },
        other => Err(CliError::Usage(format!(
            "unknown function '{other}' (expected exp, log, sqrt, or pow)"
        ))),
    }
}

fn dispatch(cli: &Cli) -> Result<String, CliError> {
    let ctx = Ctx {
        report: cli.report,
        sorted: cli.sorted,
        tol: cli.tol,
        dense_max: cli.dense_max,
    };
    match &cli.command {
        Command::Info { file } => commands::run_matrix_op(file, None, Op::Info, &ctx),
        Command::Det { file } => commands::run_matrix_op(file, None, Op::Det, &ctx),
        Command::Inv { file } => commands::run_matrix_op(file, None, Op::Inv, &ctx),
        Command::Solve { file, rhs } => {
            commands::run_matrix_op(file, Some(rhs), Op::Solve, &ctx)
        }
        Command::Eig { file } => commands::run_matrix_op(file, None, Op::Eig, &ctx),
        Command::Lu { file } => commands::run_matrix_op(file, None, Op::Lu, &ctx),
        Command::Chol { file } => commands::run_matrix_op(file, None, Op::Chol, &ctx),
        Command::Qr { file } => commands::run_matrix_op(file, None, Op::Qr, &ctx),
        Command::Svd { file } => commands::run_matrix_op(file, None, Op::Svd, &ctx),
        Command::Polar { file } => commands::run_matrix_op(file, None, Op::Polar, &ctx),
        Command::Spectral { file } => {
            commands::run_matrix_op(file, None, Op::Spectral, &ctx)
        }
        Command::Apply {
            file,
            function,
            exponent,
        } => {
            if function != "pow" && exponent.is_some() {
                return Err(CliError::Usage(
                    "--exponent only applies to --function pow".to_string(),
                ));
            }
            let kind = parse_function(function, *exponent)?;
            commands::run_matrix_op(file, None, Op::Apply(kind), &ctx)
        }
        Command::Convert {
            from_dense,
            to_dense,
        } => commands::run_convert(from_dense.as_deref(), to_dense.as_deref(), &ctx),
        Command::Bench {
            ops,
            sizes,
            repeats,
        } => bench::run(&bench::BenchArgs {
            ops: ops.clone(),
            sizes: sizes.clone(),
            repeats: *repeats,
            dense_max: cli.dense_max,
            report: cli.report,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(payload) => {
            print!("{payload}");
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
