//! `conn`: connectivity functions, branch decompositions and tangles from
//! the command line.

mod commands;
mod load;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conn_core::{Error, Limits};
use serde_json::json;

use load::Selector;

const ABOUT: &str = "Connectivity functions, branch width, tangles and canonical tree decompositions.

INPUT FORMATS (blank lines and lines starting with # are ignored)
  oracle N         followed by 2^N integers: the value of every subset, subset X
                   at position X read as a bitmask
  graph            followed by `v LABEL...` and `e A B` lines
  hypergraph       followed by `v LABEL...` and `e V1 V2 ...` lines (edges e1, e2, ...)
  vectors D        followed by one row of D rationals per vector (v0, v1, ...)

UNIVERSE ORDER AND MASKS
  Elements are numbered in declaration order: vertices for nu and rho, edges
  for kappa and mu, vertices for hypergraph-nu and hypergraph-cover, edges for
  hypergraph-kappa, rows for vectors and matroid. Subsets in JSON output are
  little-endian hex masks: bit i (value 1 << i) is element i, so 0x5 is
  elements 0 and 2.

EXIT CODES
  0 success, 1 property violation or non-connectivity input,
  2 usage, parse or precondition error, 3 size limit exceeded.";

#[derive(Parser, Debug)]
#[command(name = "conn", version, about = "Connectivity functions, branch width and tangles", long_about = ABOUT)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Which connectivity function to build from the input.
    #[arg(long, short = 's', global = true, value_enum)]
    pub selector: Option<Selector>,
    /// Output format.
    #[arg(long, short = 'f', global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Report errors on stderr as JSON objects.
    #[arg(long, global = true)]
    pub json_errors: bool,
    /// Override a size limit, e.g. `--limit dp=16`. Names: evaluate,
    /// exhaustive, dp, enumerate, canonical, well_linked, min_cover, treewidth.
    #[arg(long = "limit", global = true, value_name = "NAME=N")]
    pub limits: Vec<String>,
    /// Seed for commands that sample (canonical --relabel).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check normalisation, symmetry, submodularity and posimodularity.
    Props { input: String },
    /// Branch width with an optimal decomposition.
    Bw { input: String },
    /// All tangles of order k.
    Tangles {
        input: String,
        #[arg(short)]
        k: i64,
    },
    /// Greedy and minimum covers of every tangle of order k.
    Cover {
        input: String,
        #[arg(short)]
        k: i64,
    },
    /// Tangle of order k avoiding the atoms, or a decomposition of width < k over them.
    Duality {
        input: String,
        #[arg(short)]
        k: i64,
        /// Maximal atoms as comma-separated labels; repeat for several.
        /// Without this flag the atoms are the singletons and the empty set.
        #[arg(long = "atoms", value_name = "A,B,...")]
        atoms: Vec<String>,
    },
    /// Canonical tree decomposition distinguishing the maximal tangles.
    Canonical {
        input: String,
        /// Highest tangle order to consider; all orders by default.
        #[arg(long)]
        kmax: Option<i64>,
        /// Also check canonicity under this many random relabellings.
        #[arg(long, default_value_t = 0)]
        relabel: usize,
    },
    /// Translate between decompositions of a graph.
    Convert {
        #[arg(value_enum)]
        mode: ConvertMode,
        input: String,
    },
    /// Write the selected system itself.
    Export {
        #[arg(value_enum)]
        to: ExportFormat,
        input: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvertMode {
    /// Tree decomposition of minimum width to a κ branch decomposition.
    Tw2bw,
    /// Optimal κ branch decomposition to a tree decomposition.
    Bw2tw,
    /// Optimal κ branch decomposition to a μ branch decomposition.
    MuFromKappa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Violation(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Core(Error::Inconsistent(_)) => 1,
            CliError::Core(Error::SizeLimit { .. }) => 3,
            CliError::Usage(_) | CliError::Core(_) => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Violation(_) => "violation",
            CliError::Core(Error::SizeLimit { .. }) => "size_limit",
            CliError::Core(Error::Precondition(_)) => "precondition",
            CliError::Core(Error::Invalid { .. }) => "invalid",
            CliError::Core(Error::Parse { .. }) => "parse",
            CliError::Core(Error::Inconsistent(_)) => "inconsistent",
            CliError::Core(Error::Io(_)) => "io",
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let mut v = json!({ "schema": conn_core::io::SCHEMA, "error": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() });
        match self {
            CliError::Core(Error::SizeLimit { op, n, limit }) => {
                v["op"] = json!(op);
                v["n"] = json!(n);
                v["limit"] = json!(limit);
            }
            CliError::Core(Error::Parse { line, .. }) => v["line"] = json!(line),
            _ => {}
        }
        v
    }
}

/// What a command produced: text for stdout and the exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

fn parse_limits(items: &[String]) -> Result<Limits, CliError> {
    let mut l = Limits::default();
    for item in items {
        let (name, value) = item.split_once('=').ok_or_else(|| CliError::Usage(format!("expected NAME=N, got {item}")))?;
        let v: usize = value.trim().parse().map_err(|_| CliError::Usage(format!("bad limit value {value}")))?;
        let slot = match name.trim() {
            "evaluate" => &mut l.evaluate,
            "exhaustive" => &mut l.exhaustive,
            "dp" => &mut l.dp,
            "enumerate" => &mut l.enumerate,
            "canonical" => &mut l.canonical,
            "well_linked" => &mut l.well_linked,
            "min_cover" => &mut l.min_cover,
            "treewidth" => &mut l.treewidth,
            other => return Err(CliError::Usage(format!("unknown limit {other}"))),
        };
        *slot = v;
    }
    Ok(l)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if !e.use_stderr() {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            // clap stops before flags are parsed, so look for the switch by hand.
            if std::env::args().any(|a| a == "--json-errors") {
                let err = CliError::Usage(e.kind().to_string());
                eprintln!("{}", err.to_json());
            } else {
                let _ = e.print();
            }
            return ExitCode::from(2);
        }
    };
    let json_errors = cli.common.json_errors;
    let result = parse_limits(&cli.common.limits).and_then(|limits| commands::run(&cli.command, &cli.common, limits));
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            if json_errors {
                eprintln!("{}", e.to_json());
            } else {
                eprintln!("conn: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
