//! Command-line front end. Reports are JSON by default and deterministic:
//! identical inputs give byte-identical output.

mod report;
mod tfg_cmd;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::homology::{BruteForceOptions, HomologyError, HomologyOptions};
use crate::models::{GroupoidSpec, SpecFileError};
use crate::tfg::TfgError;

pub const TOOL_NAME: &str = "groupoid-homology";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = TOOL_NAME, version, about = "Groupoid homology and topological full group invariants")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Highest degree computed for finite groupoids.
    #[arg(long, global = true, default_value_t = crate::homology::DEFAULT_MAX_DEGREE)]
    pub max_degree: usize,
    /// Memory budget for brute-force homology, in MiB.
    #[arg(long, global = true, default_value_t = 256, value_name = "MIB")]
    pub memory_budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integral homology of a groupoid spec.
    Homology {
        spec: PathBuf,
        /// Level reported for Bratteli diagrams.
        #[arg(long, default_value_t = 0)]
        level: usize,
    },
    /// Rational homology, Poincaré series, vanishing and AH verdicts.
    Invariants(InvariantsArgs),
    /// Arithmetic on full-group elements given as prefix-exchange tables.
    Tfg {
        #[command(subcommand)]
        op: TfgCommand,
        /// Longest word an element may contain.
        #[arg(long, global = true, default_value_t = crate::tfg::DEFAULT_DEPTH_CAP)]
        depth_cap: usize,
    },
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    pub spec: PathBuf,
    /// Poincaré series of F(G) and D(G) through degree N.
    #[arg(long, value_name = "N")]
    pub series: Option<usize>,
    /// Resolve H_1(F(G)) through the low-degree exact sequence.
    #[arg(long)]
    pub ah: bool,
    /// Vanishing and acyclicity verdicts.
    #[arg(long)]
    pub vanishing: bool,
    /// Rational homology of D(G).
    #[arg(long)]
    pub derived: bool,
    /// Declared hypotheses: minimal, comparison, no-isolated-points.
    #[arg(long, value_delimiter = ',')]
    pub declare: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum TfgCommand {
    /// Composite of the elements; the last one is applied first.
    Compose {
        #[arg(num_args = 2.., required = true)]
        files: Vec<PathBuf>,
    },
    Inverse { file: PathBuf },
    /// Canonical minimal table.
    Canon { file: PathBuf },
    Equals { left: PathBuf, right: PathBuf },
    Commutator { left: PathBuf, right: PathBuf },
    Order {
        file: PathBuf,
        #[arg(long, default_value_t = 64)]
        cap: u64,
    },
    /// Validate a table and report witnesses for every defect.
    Verify { file: PathBuf },
    /// Copy-exchanging involution on the cylinders given by --cylinder.
    Zeta {
        graph: PathBuf,
        /// A word such as `0`, `01` or `e0 e1`; repeatable.
        #[arg(long = "cylinder")]
        cylinders: Vec<String>,
    },
    /// Extend by the identity to the listed copies.
    Embed {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        copies: Vec<u32>,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
    /// Structured report to print despite the failure.
    pub report: Option<Value>,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
            report: None,
        }
    }

    pub fn refused(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_REFUSED,
            message: message.into(),
            report: None,
        }
    }
}

impl From<SpecFileError> for CliError {
    fn from(e: SpecFileError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::BudgetExceeded { .. }
            | HomologyError::TooLarge(_)
            | HomologyError::AfNotFinitelyGenerated { .. }
            | HomologyError::AfPrefixOnly => CliError::refused(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<TfgError> for CliError {
    fn from(e: TfgError) -> Self {
        match e {
            TfgError::Hypothesis(_) | TfgError::DepthExceeded { .. } => CliError::refused(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

/// Finished command output.
pub struct Output {
    pub json: Value,
    pub text: String,
}

pub(crate) struct Context {
    pub homology: HomologyOptions,
}

pub(crate) fn load_spec(path: &Path) -> Result<GroupoidSpec, CliError> {
    Ok(crate::models::parse_spec_file(path)?)
}

pub(crate) fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let ctx = Context {
        homology: HomologyOptions {
            max_degree: cli.max_degree,
            bruteforce: BruteForceOptions {
                memory_budget: cli.memory_budget.saturating_mul(1024 * 1024),
                parallel: true,
            },
        },
    };
    match &cli.command {
        Command::Homology { spec, level } => report::homology(&ctx, spec, *level),
        Command::Invariants(args) => report::invariants(&ctx, args),
        Command::Tfg { op, depth_cap } => tfg_cmd::run(op, *depth_cap),
    }
}

fn write_output(out: &mut dyn Write, format: OutputFormat, json: &Value, text: &str) {
    let rendered = match format {
        OutputFormat::Json => serde_json::to_string_pretty(json).expect("report serializes"),
        OutputFormat::Text => text.trim_end().to_string(),
    };
    let _ = writeln!(out, "{rendered}");
}

/// Runs one command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            write_output(out, cli.format, &o.json, &o.text);
            EXIT_OK
        }
        Err(e) => {
            if let Some(r) = &e.report {
                let text = r.get("summary").and_then(Value::as_str).unwrap_or_default().to_string();
                write_output(out, cli.format, r, &text);
            }
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
