//! The `hhlab` command-line front end: argument parsing, workspace loading and report output.

pub mod commands;
pub mod report;
pub mod workspace;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hhlab::exactla::FieldSpec;
use hhlab::hochschild::Budget;
use thiserror::Error;

pub use report::Report;
pub use workspace::{load_workspace, LoadError, LoadedWorkspace, Workspace, WorkspaceFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hhlab", version, about = "Exact Hochschild cohomology of triangular algebras")]
pub struct Cli {
    /// Workspace file (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Overrides the field of the workspace: `Q` or `Fp:P`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Number of cochain degrees built; results are reported for degrees `0..N-2`.
    #[arg(long = "max-degree", global = true, default_value_t = 4)]
    pub max_degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    pub out: OutFormat,
    /// Largest number of dense entries allowed in one differential.
    #[arg(long, global = true, env = "HHLAB_BUDGET")]
    pub budget: Option<u128>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Text,
}

/// A family given by name, or a single bimodule (optionally with a second one) read as a family.
#[derive(Clone, Debug, Args)]
pub struct Target {
    #[arg(long, conflicts_with_all = ["bimodule", "other"])]
    pub family: Option<String>,
    #[arg(long)]
    pub bimodule: Option<String>,
    #[arg(long, requires = "bimodule")]
    pub other: Option<String>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Load and validate the workspace, listing its entries.
    Validate,
    /// Hochschild cohomology dimensions of an algebra.
    Hh {
        #[arg(long)]
        algebra: String,
    },
    /// `Ext` dimensions between two bimodules over the same algebras.
    Ext {
        #[arg(long)]
        bimodule: String,
        /// Second argument; defaults to the first.
        #[arg(long)]
        other: Option<String>,
    },
    /// Modified cohomology of a family.
    Cone {
        #[command(flatten)]
        target: Target,
    },
    /// Long exact sequences, verified node by node.
    Sequence {
        #[command(subcommand)]
        kind: SequenceCmd,
    },
    /// Dimension identities between triangular algebras.
    Split {
        #[command(subcommand)]
        kind: SplitCmd,
    },
    /// Derivations and the first cohomology as a Lie algebra.
    Lie {
        #[command(subcommand)]
        kind: LieCmd,
    },
    /// Truncated Poincaré series.
    Series {
        #[command(subcommand)]
        kind: SeriesCmd,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum SequenceCmd {
    /// `HH(T) → HH(A) × HH(B) → Ext(M, M) → HH^{+1}(T)` for one member.
    Happel {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 0)]
        member: usize,
    },
    /// The sequence of `T_{M⊕N}` relative to `T_N` for a two-member family.
    Lemma1 {
        #[command(flatten)]
        target: Target,
    },
    /// The sequence of a family relative to a subfamily.
    Lemma3 {
        #[command(flatten)]
        target: Target,
        /// Member indices of the subfamily.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        sub: Vec<usize>,
    },
    /// The Mayer–Vietoris sequence of two subfamilies.
    Mv {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        first: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        second: Vec<usize>,
    },
    /// The sequence of a cover `U_0, U_1, …` with `U_i ∩ U_j ⊆ U_0`.
    Theorem4 {
        #[command(flatten)]
        target: Target,
        /// One comma-separated index list per part, e.g. `--cover 0,1 --cover 2`; defaults to
        /// singletons.
        #[arg(long)]
        cover: Vec<String>,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum SplitCmd {
    /// `HH(T_M)` for `M = ⊕ M_i^{m_i}` against `HH(T_{⊕M_i})` and `Ext` terms.
    Theorem1 {
        #[command(flatten)]
        target: Target,
        /// Overrides the multiplicities of the family.
        #[arg(long, value_delimiter = ',')]
        mults: Vec<usize>,
    },
    /// `[A M^k; 0 B]` with `M` projective over `A` and `B = (End_A M)^o`.
    Corollary1 {
        /// Its left action makes it an `A`-module; the right action is not used.
        #[arg(long)]
        bimodule: String,
        #[arg(long, default_value_t = 1)]
        mult: usize,
    },
    /// The exchange identity for `M`, `N` each a summand of a power of the other.
    Exchange {
        #[arg(long)]
        bimodule: String,
        #[arg(long)]
        other: String,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum LieCmd {
    /// `Der`, `Int` and `HH¹` with the bracket checks.
    Der {
        #[arg(long)]
        algebra: String,
    },
    /// Block decomposition of the derivations of `[A M; 0 B]`; with `--other N`, also the
    /// decomposition of `HH¹` of `[A M⊕N; 0 B]`.
    Decompose {
        #[arg(long)]
        bimodule: String,
        #[arg(long)]
        other: Option<String>,
    },
    /// Whether the restriction from `HH¹` of `[A M⊕N; 0 B]` onto `HH¹` of `[A M; 0 B]` is onto.
    Delta {
        #[arg(long)]
        bimodule: String,
        #[arg(long)]
        other: String,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum SeriesCmd {
    Poincare {
        #[arg(long)]
        algebra: String,
    },
    /// Compares the series of `[A M^k; 0 B]` with that of `[A M; 0 B]` shifted by `Ext(M, M)`.
    Kronecker {
        #[arg(long)]
        bimodule: String,
        #[arg(long, default_value_t = 2)]
        mult: usize,
    },
    /// Series of `[A M^k; 0 B]` reduced mod the characteristic, compared across `k`.
    Modp {
        #[arg(long)]
        bimodule: String,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
        mults: Vec<usize>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Compute(#[from] hhlab::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(hhlab::Error::DegreeTooLarge { .. } | hhlab::Error::HypothesisUnverifiable(_)) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        }
    }
}

/// Options shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub n_max: usize,
    pub budget: Budget,
}

/// Parses `argv`, runs the command and writes the report; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.out).as_bytes());
            if report.verified == Some(false) {
                EXIT_CHECK_FAILED
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Loads the workspace named by `--input` and runs the command on it.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let path = cli.input.as_ref().ok_or_else(|| CliError::Usage("--input FILE is required".into()))?;
    let field = cli
        .field
        .as_deref()
        .map(|s| s.parse::<FieldSpec>())
        .transpose()?;
    let opts = Options { n_max: cli.max_degree, budget: cli.budget.map(Budget).unwrap_or(Budget::DEFAULT) };
    match load_workspace(path, field)? {
        LoadedWorkspace::Rationals(ws) => commands::dispatch(&ws, &cli.command, opts),
        LoadedWorkspace::Prime(ws) => commands::dispatch(&ws, &cli.command, opts),
    }
}
