//! Batch command-line front end. Every command reads a JSON document, runs
//! one library operation and prints a report that embeds the tool version and
//! the options used. Exit codes: 0 success, 1 failed verification (the report
//! carries a witness), 2 input error.

mod commands;
mod text;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dg::Window;
use crate::error::{Error, Result};

pub use text::render as render_text;

#[derive(Parser, Debug)]
#[command(name = "superdg", version, about = "Exact computations with differential graded superalgebras")]
pub struct Cli {
    #[command(flatten)]
    pub options: GlobalOptions,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GlobalOptions {
    /// Weight window `W_MIN:W_MAX`.
    #[arg(long, global = true, default_value = "-3:3", allow_hyphen_values = true)]
    pub window: String,
    /// Polynomial degree cap for truncated weight spaces.
    #[arg(long, global = true, default_value_t = 4)]
    pub degcap: u32,
    /// Print simplicial forms in barycentric coordinates and accept them as input.
    #[arg(long, global = true)]
    pub barycentric: bool,
    /// JSON report (default).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Indented plain-text report.
    #[arg(long, global = true)]
    pub text: bool,
    /// Seed for randomized property panels.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Validate an algebra description and report its nonzero cohomology.
    Check { input: PathBuf },
    /// Cohomology per bidegree with representatives.
    Cohomology { input: PathBuf },
    /// The forms algebra Ω(A) with its de Rham and internal differentials.
    FormsOmega { input: PathBuf },
    /// The six Cartan relations on seeded random derivation pairs.
    CartanCheck {
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        pairs: usize,
    },
    /// Definite integral over an even generator.
    Integrate {
        input: PathBuf,
        #[arg(long)]
        form: String,
        #[arg(long)]
        var: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        from: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        to: String,
    },
    /// Berezin integral over an odd generator.
    Berezin {
        input: PathBuf,
        #[arg(long)]
        form: String,
        #[arg(long)]
        var: String,
    },
    /// Contraction of the cylinder A[t, dt] and its homotopy identity.
    CylinderContract {
        input: PathBuf,
        #[arg(long)]
        form: Option<String>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Polynomial forms on simplices.
    Simplicial {
        #[command(subcommand)]
        action: SimplicialCommand,
    },
    /// Shorthand for `simplicial dupont`.
    Dupont {
        #[command(flatten)]
        simplex: SimplexArgs,
        #[arg(long)]
        form: String,
    },
    /// Cotensor A^K for a simplex, its boundary or a horn.
    Cotensor {
        #[arg(long, value_enum)]
        set: SetKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Coefficient algebra (default ℚ).
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// Use the zero algebra as coefficients.
        #[arg(long, conflicts_with = "algebra")]
        zero: bool,
        /// Also report the rank of the restriction from A⊗Ω_n.
        #[arg(long)]
        surjectivity: bool,
    },
    /// Path object A[t, dt] with its verification bundle.
    PathObject {
        /// Algebra description (default ℚ).
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Finite cochain complexes and chain maps.
    Complex {
        #[command(subcommand)]
        action: ComplexCommand,
    },
    /// Generating cells and their cohomology.
    Cells {
        #[arg(long, value_enum, default_value = "both")]
        flavor: CellFlavor,
        /// Graded cells D^n for |n| ≤ range.
        #[arg(long, default_value_t = 3)]
        range: i64,
        /// Also build and check the free-algebra cells.
        #[arg(long)]
        algebra: bool,
    },
    /// Free dg algebra on a complex and the Künneth comparison.
    SymKunneth { input: PathBuf },
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SimplexArgs {
    #[arg(long)]
    pub n: usize,
    /// Coefficient algebra B (default ℚ).
    #[arg(long)]
    pub algebra: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimplicialCommand {
    /// Coface maps and their action on a form.
    Faces {
        #[command(flatten)]
        simplex: SimplexArgs,
        #[arg(long)]
        form: Option<String>,
    },
    /// Whitney forms and the coboundary formula.
    Whitney {
        #[command(flatten)]
        simplex: SimplexArgs,
        /// Comma-separated vertex tuple; all increasing tuples if omitted.
        #[arg(long)]
        tuple: Option<String>,
    },
    /// Whitney projection of a form.
    Project {
        #[command(flatten)]
        simplex: SimplexArgs,
        #[arg(long)]
        form: String,
    },
    /// Dupont contraction of a form and its identities.
    Dupont {
        #[command(flatten)]
        simplex: SimplexArgs,
        #[arg(long)]
        form: String,
    },
    /// Integrals of Whitney forms over faces.
    Duality {
        #[command(flatten)]
        simplex: SimplexArgs,
    },
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplexCommand {
    Cohomology {
        input: PathBuf,
    },
    /// Fibration and weak-equivalence predicates of a chain map.
    Classify {
        input: PathBuf,
    },
    /// Solve a lifting square `{i, p, top, bottom}`.
    Lift {
        input: PathBuf,
    },
    Factorize {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "cof")]
        mode: ModeArg,
        /// Number of random squares in the lifting panel.
        #[arg(long, default_value_t = 10)]
        panel: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetKind {
    Simplex,
    Boundary,
    Horn,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    /// Cofibration, then acyclic fibration.
    Cof,
    /// Acyclic cofibration, then fibration.
    AcyclicCof,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellFlavor {
    Ungraded,
    Graded,
    Both,
}

/// Result of one command before it is wrapped in the report envelope.
pub(crate) struct Outcome {
    pub result: Value,
    pub passed: bool,
}

impl Outcome {
    pub fn ok(result: impl Serialize) -> Result<Self> {
        Ok(Outcome { result: to_value(result)?, passed: true })
    }

    pub fn checked(result: impl Serialize, passed: bool) -> Result<Self> {
        Ok(Outcome { result: to_value(result)?, passed })
    }
}

pub(crate) fn to_value(v: impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub(crate) fn parse_window(text: &str) -> Result<Window> {
    let bad = || Error::InvalidInput(format!("window `{text}` is not W_MIN:W_MAX"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    Window::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
}

/// Errors that mean the input was well formed but failed a verification.
fn is_verification_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::BidegreeViolation { .. }
            | Error::NotSquareZero { .. }
            | Error::NotChainMap { .. }
            | Error::NotMultiplicative { .. }
    )
}

/// Captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs the CLI on `args` (including the program name) without touching the
/// process streams.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Invocation { stdout: rendered, stderr: String::new(), code }
            } else {
                Invocation { stdout: String::new(), stderr: rendered, code }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Invocation {
    let options = json!({
        "window": cli.options.window,
        "degcap": cli.options.degcap,
        "barycentric": cli.options.barycentric,
        "format": if cli.options.text { "text" } else { "json" },
        "seed": cli.options.seed,
        "arguments": serde_json::to_value(&cli.command).unwrap_or(Value::Null),
    });
    let name = command_name(&cli.command);
    let (status, body, code, stderr) = match commands::dispatch(cli) {
        Ok(out) if out.passed => ("ok", ("result", out.result), 0, String::new()),
        Ok(out) => ("failed", ("result", out.result), 1, format!("{name}: verification failed\n")),
        Err(e) if is_verification_failure(&e) => {
            ("failed", ("result", json!({"valid": false, "witness": e.to_string()})), 1, format!("{name}: {e}\n"))
        }
        Err(e) => ("error", ("error", Value::String(e.to_string())), 2, format!("{name}: {e}\n")),
    };
    let mut report = serde_json::Map::new();
    report.insert("tool".into(), json!("superdg"));
    report.insert("version".into(), json!(crate::VERSION));
    report.insert("command".into(), json!(name));
    report.insert("options".into(), options);
    report.insert("status".into(), json!(status));
    report.insert(body.0.into(), body.1);
    let report = Value::Object(report);
    let stdout = if cli.options.text {
        render_text(&report)
    } else {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    };
    Invocation { stdout, stderr, code }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Check { .. } => "check".into(),
        Command::Cohomology { .. } => "cohomology".into(),
        Command::FormsOmega { .. } => "forms-omega".into(),
        Command::CartanCheck { .. } => "cartan-check".into(),
        Command::Integrate { .. } => "integrate".into(),
        Command::Berezin { .. } => "berezin".into(),
        Command::CylinderContract { .. } => "cylinder-contract".into(),
        Command::Simplicial { action } => format!(
            "simplicial {}",
            match action {
                SimplicialCommand::Faces { .. } => "faces",
                SimplicialCommand::Whitney { .. } => "whitney",
                SimplicialCommand::Project { .. } => "project",
                SimplicialCommand::Dupont { .. } => "dupont",
                SimplicialCommand::Duality { .. } => "duality",
            }
        ),
        Command::Dupont { .. } => "dupont".into(),
        Command::Cotensor { .. } => "cotensor".into(),
        Command::PathObject { .. } => "path-object".into(),
        Command::Complex { action } => format!(
            "complex {}",
            match action {
                ComplexCommand::Cohomology { .. } => "cohomology",
                ComplexCommand::Classify { .. } => "classify",
                ComplexCommand::Lift { .. } => "lift",
                ComplexCommand::Factorize { .. } => "factorize",
            }
        ),
        Command::Cells { .. } => "cells".into(),
        Command::SymKunneth { .. } => "sym-kunneth".into(),
    }
}

/// Process entry point used by the `superdg` binary.
pub fn main() -> i32 {
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
