//! Command-line front end.
//!
//! Exit codes: 0 for a completed operation with a positive outcome, 1 when
//! the operation ran but the answer is negative (a failed structural check,
//! a suite with failures, a matrix with no inverse), 2 for usage, file or
//! format errors.

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use structmat::harness::{
    demo_jacobson, exhaustive_closure, run_suite, Scenario, SuiteReport, ThetaSpec,
    DEFAULT_DENSITY, DEFAULT_RETRY_CAP,
};
use structmat::io::{
    check_structural_docs, matrix_adj, matrix_charpoly, matrix_det, matrix_invert, matrix_preadj,
    preorder_close, preorder_compose, preorder_validate, DocError, MatrixDoc, MethodChoice,
    PolyDoc,
};
use structmat::preorder::{closure, Preorder, RelationDoc};
use structmat::ring::descriptor::RingDescriptor;

#[derive(Parser)]
#[command(
    name = "structmat",
    version,
    about = "Exact matrix algebra over pluggable rings with structural sparsity patterns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate, close, or compose relation files
    Preorder {
        #[command(subcommand)]
        op: PreorderOp,
    },
    /// Exact operations on matrix documents
    Matrix {
        #[command(subcommand)]
        op: MatrixOp,
    },
    /// Structural membership checks (exit code 0 = structural, 1 = not)
    Check {
        #[command(subcommand)]
        op: CheckOp,
    },
    /// Built-in demonstrations
    Demo {
        #[command(subcommand)]
        op: DemoOp,
    },
    /// Seeded property-test suites
    Proptest(ProptestArgs),
}

#[derive(Subcommand)]
enum PreorderOp {
    /// Report whether a relation file is reflexive and transitive
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the reflexive-transitive closure of a relation file
    Close {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compose two preorders into one on the product index set
    Compose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "in2")]
        input2: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Close non-preorder inputs instead of rejecting them
        #[arg(long = "close-theta")]
        close_theta: bool,
    },
}

#[derive(Subcommand)]
enum MatrixOp {
    /// Determinant (commutative rings)
    Det(MatrixIn),
    /// Classical adjugate (commutative rings)
    Adj(MatrixIn),
    /// Preadjoint (any ring)
    Preadj(MatrixIn),
    /// Characteristic polynomial (commutative rings)
    Charpoly(MatrixIn),
    /// Inverse with a verification certificate
    Inv {
        #[arg(long = "in")]
        input: PathBuf,
        /// Force a method instead of auto-routing
        #[arg(long, value_parser = ["adjugate", "charpoly", "annihilator", "power", "nilgeom"])]
        method: Option<String>,
        /// Annihilating polynomial document for --method annihilator
        #[arg(long)]
        poly: Option<PathBuf>,
        /// Close an embedded non-preorder theta instead of rejecting it
        #[arg(long = "close-theta")]
        close_theta: bool,
    },
}

#[derive(Args)]
struct MatrixIn {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum CheckOp {
    /// Check a matrix document against a pattern file
    Structural {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        theta: PathBuf,
        /// Close a non-preorder theta instead of rejecting it
        #[arg(long = "close-theta")]
        close_theta: bool,
    },
}

#[derive(Subcommand)]
enum DemoOp {
    /// One-sided inverses over the xy = 1 algebra and what they break
    Jacobson,
}

#[derive(Args)]
struct ProptestArgs {
    /// closure | preadjoint | adjoint | flatten | cayley_hamilton | nil_lift | dedekind
    #[arg(long)]
    suite: String,
    /// Ring descriptor JSON, e.g. '{"kind":"mod","modulus":5}'
    #[arg(long)]
    ring: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Density of random patterns
    #[arg(long, default_value_t = DEFAULT_DENSITY)]
    density: f64,
    /// Fixed pattern file instead of random patterns
    #[arg(long)]
    theta: Option<PathBuf>,
    /// Close a non-preorder theta instead of rejecting it
    #[arg(long = "close-theta")]
    close_theta: bool,
    /// Rejection-sampling cap per generated matrix
    #[arg(long = "retry-cap", default_value_t = DEFAULT_RETRY_CAP)]
    retry_cap: usize,
    /// Enumerate every pattern and structural matrix instead of sampling
    /// (closure suite over mod rings, desk scale)
    #[arg(long)]
    exhaustive: bool,
}

fn read_file(path: &Path) -> Result<String, Box<dyn Error>> {
    fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()).into())
}

fn load_relation(path: &Path) -> Result<RelationDoc, Box<dyn Error>> {
    let text = read_file(path)?;
    let doc: RelationDoc =
        serde_json::from_str(&text).map_err(|e| format!("parsing {}: {e}", path.display()))?;
    Ok(doc)
}

fn load_matrix(path: &Path) -> Result<MatrixDoc, Box<dyn Error>> {
    let text = read_file(path)?;
    MatrixDoc::from_json_str(&text).map_err(|e| format!("parsing {}: {e}", path.display()).into())
}

fn emit(out: Option<&Path>, value: &impl serde::Serialize) -> Result<(), Box<dyn Error>> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => {
            fs::write(path, text + "\n")
                .map_err(|e| format!("writing {}: {e}", path.display()))?;
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn report_exit(report: &SuiteReport) -> Result<ExitCode, Box<dyn Error>> {
    emit(None, report)?;
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run() -> Result<ExitCode, Box<dyn Error>> {
    let cli = Cli::parse();
    match cli.command {
        Command::Preorder { op } => match op {
            PreorderOp::Validate { input, out } => {
                let verdict = preorder_validate(&load_relation(&input)?)?;
                emit(out.as_deref(), &verdict)?;
                Ok(ExitCode::SUCCESS)
            }
            PreorderOp::Close { input, out } => {
                let closed = preorder_close(&load_relation(&input)?)?;
                emit(out.as_deref(), &closed)?;
                Ok(ExitCode::SUCCESS)
            }
            PreorderOp::Compose {
                input,
                input2,
                out,
                close_theta,
            } => {
                let composed = preorder_compose(
                    &load_relation(&input)?,
                    &load_relation(&input2)?,
                    close_theta,
                )?;
                emit(out.as_deref(), &composed)?;
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Matrix { op } => match op {
            MatrixOp::Det(m) => {
                emit(None, &matrix_det(&load_matrix(&m.input)?)?)?;
                Ok(ExitCode::SUCCESS)
            }
            MatrixOp::Adj(m) => {
                emit(None, &matrix_adj(&load_matrix(&m.input)?)?)?;
                Ok(ExitCode::SUCCESS)
            }
            MatrixOp::Preadj(m) => {
                emit(None, &matrix_preadj(&load_matrix(&m.input)?)?)?;
                Ok(ExitCode::SUCCESS)
            }
            MatrixOp::Charpoly(m) => {
                emit(None, &matrix_charpoly(&load_matrix(&m.input)?)?)?;
                Ok(ExitCode::SUCCESS)
            }
            MatrixOp::Inv {
                input,
                method,
                poly,
                close_theta,
            } => {
                let doc = load_matrix(&input)?;
                let method = method.as_deref().map(MethodChoice::parse).transpose()?;
                let poly_doc: Option<PolyDoc> = match poly {
                    Some(p) => Some(serde_json::from_str(&read_file(&p)?)?),
                    None => None,
                };
                match matrix_invert(&doc, method, poly_doc.as_ref(), close_theta) {
                    Ok(cert) => {
                        emit(None, &cert)?;
                        Ok(ExitCode::SUCCESS)
                    }
                    Err(DocError::Inverse(e)) => {
                        emit(None, &serde_json::json!({"invertible": false, "error": e.to_string()}))?;
                        Ok(ExitCode::from(1))
                    }
                    Err(e) => Err(e.into()),
                }
            }
        },
        Command::Check { op } => match op {
            CheckOp::Structural {
                matrix,
                theta,
                close_theta,
            } => {
                let ok = check_structural_docs(
                    &load_matrix(&matrix)?,
                    &load_relation(&theta)?,
                    close_theta,
                )?;
                emit(None, &serde_json::json!({"structural": ok}))?;
                Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
            }
        },
        Command::Demo { op } => match op {
            DemoOp::Jacobson => report_exit(&demo_jacobson()),
        },
        Command::Proptest(args) => {
            let desc: RingDescriptor = serde_json::from_str(&args.ring)
                .map_err(|e| format!("parsing --ring descriptor: {e}"))?;
            desc.validate()?;
            if args.exhaustive {
                if args.suite != "closure" {
                    return Err("--exhaustive is only supported for the closure suite".into());
                }
                let modulus = match &desc {
                    RingDescriptor::Modular { modulus } => *modulus,
                    _ => return Err("--exhaustive needs a mod ring".into()),
                };
                return report_exit(&exhaustive_closure(modulus, args.n)?);
            }
            let theta = match &args.theta {
                Some(path) => {
                    let doc = load_relation(path)?;
                    let rel = doc.to_relation()?;
                    let preorder = if args.close_theta {
                        closure(&rel)
                    } else {
                        Preorder::try_new(rel)?
                    };
                    ThetaSpec::Fixed {
                        theta: RelationDoc::from_preorder(&preorder),
                    }
                }
                None => ThetaSpec::Random {
                    density: args.density,
                },
            };
            let scenario = Scenario {
                ring: desc,
                n: args.n,
                theta,
                trials: args.trials,
                seed: args.seed,
                retry_cap: args.retry_cap,
            };
            report_exit(&run_suite(&args.suite, &scenario)?)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
