//! Command-line front end of the bigbracket engine.
//!
//! [`run`] takes the full argument list and returns the exit code with the
//! text to print, so tests drive the CLI without spawning a process.
//!
//! Exit codes: 0 when every residual in the report is zero, 1 when at least
//! one is not, 2 on usage, input or parse errors.

mod commands;
mod input;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

const ELEMENT_HELP: &str = "\
ELEMENT LITERALS
  Bivectors and sections are written with the generator labels of the
  structure, `^` (or `∧`) for the wedge and optional rational coefficients:
      e^f        2*e1^e2 - 1/2*e2^e3        e1 + eps2        h*
  Covector labels are `eps1..epsN` on the standard basis, or the vector label
  followed by `*` when the structure file names its basis.

SOURCES
  A structure or tensor is either a JSON file path or `corpus:NAME`
  (see `bigbracket corpus`). `abelian(N)` is available for every N.";

#[derive(Debug, Parser)]
#[command(name = "bigbracket", version, about = "Exact big-bracket calculus and structure checks", after_help = ELEMENT_HELP)]
pub struct Cli {
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Master equation, the five component conditions and the structure class.
    Classify(Source),
    /// Integrability conditions of a bivector π relative to the structure.
    Conditions(WithPi),
    /// Twist the structure by π; checks against the exponential twist.
    Twist {
        #[command(flatten)]
        args: WithPi,
        /// Write the twisted structure file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bracket table of the double and agreement with the derived bracket.
    Double(Source),
    /// Courant and Loday axioms on the double, over the basis sections.
    CheckCourant(Source),
    /// Dirac test of a subspace of the double: the graph of π or a spanning list.
    Dirac {
        #[command(flatten)]
        source: Source,
        /// Test the graph of this bivector.
        #[arg(long, conflicts_with = "span", required_unless_present = "span")]
        pi: Option<String>,
        /// Comma-separated spanning sections, e.g. "e1, eps2 + e3".
        #[arg(long)]
        span: Option<String>,
    },
    /// Relations (a)-(d) of the deriving operator, the Clifford identity and the generator identities.
    DerivingOp(Source),
    /// Polynomial Poisson calculus on R^m.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// List the corpus, or print one entry as a file.
    Corpus {
        name: Option<String>,
        /// Write every entry to this directory as NAME.json (pairs as NAME.pi.json, NAME.psi.json).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct Source {
    /// Structure file or corpus:NAME.
    pub source: String,
}

#[derive(Debug, Args)]
pub struct WithPi {
    #[command(flatten)]
    pub source: Source,
    /// Bivector literal, e.g. "e^f".
    #[arg(long)]
    pub pi: String,
}

#[derive(Debug, Subcommand)]
pub enum PolyCommand {
    /// ψ-Poisson residual ½[π,π] − ∧³π♯ψ and the twisted covector bracket checks.
    CheckPoissonBg {
        /// Bivector file or corpus:NAME.
        pi: String,
        /// Closed 3-form file; defaults to the pair's ψ for a corpus pair, else 0.
        psi: Option<String>,
        /// Coefficient degree bound of the trial covectors.
        #[arg(long, default_value_t = 1)]
        max_degree: usize,
    },
    /// Courant axioms of the bracket with background ψ on TM ⊕ T*M.
    CourantBg {
        psi: String,
        /// Coefficient degree bound of the trial sections.
        #[arg(long, default_value_t = 1)]
        max_degree: usize,
    },
    /// Modular field x_ν = ∂_ν π, the Koszul-Brylinski and divergence operators.
    Modular {
        pi: String,
        /// Constant-coefficient volume form; defaults to dx1^...^dxm.
        #[arg(long)]
        nu: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Square-zero deriving operator d_π − ∂_ν + e_{x_ν} of a Poisson bivector.
    TriangularCheck {
        pi: String,
        #[arg(long)]
        nu: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
}

/// Exit code and printed text of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                code,
                output: e.render().to_string(),
            };
        }
    };
    match commands::execute(&cli.command, cli.json) {
        Ok(commands::Output::Report(report)) => Outcome {
            code: if report.verdict { 0 } else { 1 },
            output: if cli.json {
                report.to_json() + "\n"
            } else {
                report.to_human()
            },
        },
        Ok(commands::Output::Text(text)) => Outcome {
            code: 0,
            output: text,
        },
        Err(e) => Outcome {
            code: 2,
            output: format!("error: {e}\n"),
        },
    }
}
