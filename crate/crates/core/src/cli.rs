//! Command-line front end. Every subcommand is a thin composition of library
//! calls; [`run`] captures the streams so the binary and the tests share it.
//!
//! Exit codes: 0 success / property holds, 1 property does not hold,
//! 2 malformed input or infeasible request.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constructions::{
    construct_with_frame_operator, coordinate_frame, cyclic_projection_frame, optimal_one_erasure_frame,
    random_parseval, roots_of_unity_frame, ConstructionSpec,
};
use crate::duals::{canonical_dual, dilate, tight_dual};
use crate::erasure::erasure_report;
use crate::frame::{classify, OpvFrame, DEFAULT_TOL};
use crate::frame_file::{format_frame, read_frame, read_matrix, write_frame};

/// Captured result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "opvframe",
    version,
    about = "Construct and analyze finite operator-valued frames"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a frame and write it as JSON.
    Gen(GenArgs),
    /// Print the classification report; exit 1 if the family is not a frame.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Dilate a Parseval frame to an orthonormal one.
    Dilate {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Write the canonical dual or a tight dual with scale C.
    Dual {
        file: PathBuf,
        #[arg(long, conflicts_with = "tight", required_unless_present = "tight")]
        canonical: bool,
        #[arg(long, value_name = "C")]
        tight: Option<f64>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Test robustness to K erasures; exit 1 if not robust.
    Erasure {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Also report the worst single-block erasure error.
        #[arg(long)]
        d1: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Build a frame with a prescribed frame operator and block diagonals.
    Construct {
        #[arg(long, value_name = "SFILE")]
        spectrum: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        alphas: Vec<f64>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Exit 0 if the frame has the expected property, 1 otherwise.
    Verify {
        file: PathBuf,
        #[arg(long)]
        expect: Expectation,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
struct GenArgs {
    kind: GenKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenKind {
    Example1,
    Example2,
    Example3,
    Random,
    Optimal,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Expectation {
    Parseval,
    Orthonormal,
    Equalnorm,
}

/// A failure with the name of the operation that raised it.
struct Failure(String);

impl Failure {
    fn new(op: &str, err: impl std::fmt::Display) -> Self {
        Self(format!("{op}: {err}"))
    }
}

type Step<T> = Result<T, Failure>;

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    let mut stdout = String::new();
    match dispatch(cli.command, &mut stdout) {
        Ok(code) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(Failure(message)) => Outcome {
            code: 2,
            stdout,
            stderr: format!("error: {message}\n"),
        },
    }
}

fn dispatch(command: Command, out: &mut String) -> Step<i32> {
    match command {
        Command::Gen(args) => {
            let frame = generate(&args)?;
            emit(&frame, args.output.as_deref(), out, "gen")?;
            Ok(0)
        }
        Command::Analyze { file, tol } => {
            let frame = load(&file, "analyze")?;
            let r = classify(&frame, tol).map_err(|e| Failure::new("analyze", e))?;
            let _ = writeln!(out, "n: {}", r.dim);
            let _ = writeln!(out, "blocks: {}", r.num_blocks);
            let _ = writeln!(out, "block_sizes: {}", join(&frame.block_sizes()));
            let _ = writeln!(out, "total_rows: {}", r.total_rows);
            let _ = writeln!(out, "lower_bound: {}", r.lower_bound);
            let _ = writeln!(out, "upper_bound: {}", r.upper_bound);
            let _ = writeln!(out, "bessel: {}", r.is_bessel);
            let _ = writeln!(out, "frame: {}", r.is_frame);
            let _ = writeln!(out, "tight: {}", r.is_tight);
            let _ = writeln!(out, "parseval: {}", r.is_parseval);
            let _ = writeln!(out, "riesz: {}", r.is_riesz);
            let _ = writeln!(out, "orthonormal: {}", r.is_orthonormal);
            let _ = writeln!(out, "equal_norm: {}", r.is_equal_norm);
            let _ = writeln!(out, "mean_norm: {}", r.mean_norm);
            let _ = writeln!(out, "block_frobenius_norms: {}", join(&r.block_frobenius_norms));
            let _ = writeln!(out, "trace_identity_residual: {}", r.trace_identity_residual);
            let _ = writeln!(out, "tol: {}", r.tol);
            Ok(if r.is_frame { 0 } else { 1 })
        }
        Command::Dilate { file, output, tol } => {
            let frame = load(&file, "dilate")?;
            let dilated = dilate(&frame, tol).map_err(|e| Failure::new("dilate", e))?;
            emit(&dilated, output.as_deref(), out, "dilate")?;
            Ok(0)
        }
        Command::Dual {
            file,
            canonical: _,
            tight,
            output,
            tol,
        } => {
            let frame = load(&file, "dual")?;
            let dual = match tight {
                Some(c) => tight_dual(&frame, c, tol).map(|t| t.pair.dual),
                None => canonical_dual(&frame, tol).map(|p| p.dual),
            }
            .map_err(|e| Failure::new("dual", e))?;
            emit(&dual, output.as_deref(), out, "dual")?;
            Ok(0)
        }
        Command::Erasure { file, k, d1, tol } => {
            let frame = load(&file, "erasure")?;
            let r = erasure_report(&frame, k, tol).map_err(|e| Failure::new("erasure", e))?;
            let _ = writeln!(out, "k: {}", r.k);
            let _ = writeln!(out, "robust: {}", r.robust);
            let subsets: Vec<String> = r
                .failing_subsets
                .iter()
                .map(|s| format!("{{{}}}", join(&s.iter().map(|i| i + 1).collect::<Vec<_>>())))
                .collect();
            let _ = writeln!(out, "failing_subsets: {}", subsets.join(" "));
            if d1 {
                let optimum = frame.dim() as f64 / frame.num_blocks() as f64;
                let _ = writeln!(out, "parseval_input: {}", r.is_parseval_input);
                let _ = writeln!(out, "per_block_error_norms: {}", join(&r.per_block_error_norms));
                match r.d1 {
                    Some(d1) => {
                        let _ = writeln!(out, "d1: {d1}");
                    }
                    None => {
                        let _ = writeln!(out, "d1: undefined");
                    }
                }
                let _ = writeln!(out, "d1_lower_bound: {optimum}");
                let _ = writeln!(out, "d1_optimal: {}", r.is_d1_optimal);
            }
            Ok(if r.robust { 0 } else { 1 })
        }
        Command::Construct {
            spectrum,
            sizes,
            alphas,
            output,
            tol,
        } => {
            let s = read_matrix(&spectrum).map_err(|e| Failure::new("construct", e))?;
            let spec = ConstructionSpec::new(s.rows(), sizes, alphas).with_frame_operator(s);
            let frame = construct_with_frame_operator(&spec, tol).map_err(|e| Failure::new("construct", e))?;
            emit(&frame, output.as_deref(), out, "construct")?;
            Ok(0)
        }
        Command::Verify { file, expect, tol } => {
            let frame = load(&file, "verify")?;
            let r = classify(&frame, tol).map_err(|e| Failure::new("verify", e))?;
            let (name, holds) = match expect {
                Expectation::Parseval => ("parseval", r.is_parseval),
                Expectation::Orthonormal => ("orthonormal", r.is_orthonormal),
                Expectation::Equalnorm => ("equalnorm", r.is_equal_norm),
            };
            let _ = writeln!(out, "{name}: {holds}");
            Ok(if holds { 0 } else { 1 })
        }
    }
}

fn generate(args: &GenArgs) -> Step<OpvFrame> {
    let op = "gen";
    let need_n = || {
        args.n
            .ok_or_else(|| Failure::new(op, "--n is required for this generator"))
    };
    let need_sizes = || {
        args.sizes
            .as_deref()
            .ok_or_else(|| Failure::new(op, "--sizes is required for this generator"))
    };
    let forbid = |flag: &str, present: bool| {
        if present {
            Err(Failure::new(op, format!("{flag} is not accepted by this generator")))
        } else {
            Ok(())
        }
    };
    let result = match args.kind {
        GenKind::Example1 => {
            forbid("--seed", args.seed.is_some())?;
            roots_of_unity_frame(need_n()?, need_sizes()?)
        }
        GenKind::Example2 => {
            forbid("--sizes", args.sizes.is_some())?;
            forbid("--seed", args.seed.is_some())?;
            coordinate_frame(need_n()?)
        }
        GenKind::Example3 => {
            forbid("--n", args.n.is_some())?;
            forbid("--sizes", args.sizes.is_some())?;
            forbid("--seed", args.seed.is_some())?;
            Ok(cyclic_projection_frame())
        }
        GenKind::Random => random_parseval(need_n()?, need_sizes()?, args.seed.unwrap_or(0)),
        GenKind::Optimal => {
            forbid("--seed", args.seed.is_some())?;
            optimal_one_erasure_frame(need_n()?, need_sizes()?)
        }
    };
    result.map_err(|e| Failure::new(op, e))
}

fn load(path: &Path, op: &str) -> Step<OpvFrame> {
    read_frame(path).map_err(|e| Failure::new(op, e))
}

fn emit(frame: &OpvFrame, output: Option<&Path>, out: &mut String, op: &str) -> Step<()> {
    match output {
        Some(path) => write_frame(frame, path).map_err(|e| Failure::new(op, e)),
        None => {
            out.push_str(&format_frame(frame).map_err(|e| Failure::new(op, e))?);
            Ok(())
        }
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}
