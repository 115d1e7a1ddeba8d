//! The `permpat` command line: pattern profiles, 4-cycle counting by several
//! routes, cross-verification against brute force, seeded generators and a
//! timing harness.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

mod bench;
mod commands;
pub mod input;
mod verify;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl From<permpat::Error> for CliError {
    fn from(e: permpat::Error) -> Self {
        match e {
            permpat::Error::InconsistentProfile { .. } => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable lines.
    #[default]
    Text,
    /// `key: value` records, one per line.
    Records,
}

#[derive(Debug, Parser)]
#[command(
    name = "permpat",
    version,
    about = "Pattern counts of permutations and 4-cycle counts of graphs"
)]
pub struct Cli {
    /// Output layout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum C4Algo {
    /// Exhaustive enumeration.
    Brute,
    /// Degree-ordered 2-path counting (weighted path composition for
    /// layered input).
    Codegree,
    /// Embedding into sixteen pattern instances and counting `1324`.
    ViaPattern,
    /// Chain of graph-class reductions down to undirected counting.
    ViaReductions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Profile,
    Shapes,
    Reductions,
    Cycles,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Perm,
    Graph,
    Layered,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BenchAlgo {
    /// The sixteen non-trivial 4-patterns.
    Nontrivial,
    /// The eight trivial 4-patterns.
    Trivial,
    /// All 24 4-patterns.
    Full,
    /// The pattern `312` by range counting.
    Small,
    /// 4-cycles of `G(n, 4n)`, degree-ordered.
    Codegree,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Counts of all 24 patterns of length 4.
    Profile {
        #[arg(long)]
        input: PathBuf,
    },
    /// Occurrences of one pattern of length 1 to 4.
    CountPattern {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Occurrences of a pattern of length 1 to 3 by range counting.
    CountSmall {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// 4-cycles of an edge list or layered multigraph.
    CountC4 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = C4Algo::Codegree)]
        algo: C4Algo,
        /// Read the edge list as arcs.
        #[arg(long)]
        directed: bool,
    },
    /// The Bergsma–Dassios statistic, as an exact fraction.
    TauStar {
        #[arg(long)]
        input: PathBuf,
    },
    /// Compares the fast routes against brute force.
    Verify {
        #[arg(long, value_enum)]
        mode: VerifyMode,
        /// Instance size: exact length for exhaustive runs, upper bound or
        /// length for seeded ones.
        #[arg(long)]
        n: Option<usize>,
        /// Every instance of the given size.
        #[arg(long, conflicts_with = "seeds")]
        exhaustive: bool,
        /// Number of seeded instances.
        #[arg(long)]
        seeds: Option<u64>,
        /// First seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Writes a seeded random instance to standard output.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Length, node count, or largest layer size.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Edge count of a graph (default `2n`).
        #[arg(long)]
        m: Option<usize>,
        /// Orient each edge of a graph at random, sometimes both ways.
        #[arg(long)]
        directed: bool,
        /// Largest multiplicity of a layered graph.
        #[arg(long, default_value_t = 1)]
        max_mult: u64,
    },
    /// Times a route over sizes growing by factors of 10 and fits a log-log
    /// slope. Timings vary from run to run.
    Bench {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = BenchAlgo::Nontrivial)]
        algo: BenchAlgo,
        /// Smallest size.
        #[arg(long, default_value_t = 1000)]
        min_n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Accumulates a report in one of the two layouts.
#[derive(Debug)]
pub struct Report {
    format: Format,
    buf: String,
}

impl Report {
    pub fn new(format: Format) -> Self {
        Report {
            format,
            buf: String::new(),
        }
    }

    /// A line shown only in text layout.
    pub fn text(&mut self, line: impl AsRef<str>) {
        if self.format == Format::Text {
            self.buf.push_str(line.as_ref());
            self.buf.push('\n');
        }
    }

    /// A record shown only in records layout.
    pub fn record(&mut self, key: &str, value: impl std::fmt::Display) {
        if self.format == Format::Records {
            self.buf.push_str(&format!("{key}: {value}\n"));
        }
    }

    /// Verbatim output in either layout.
    pub fn raw(&mut self, s: &str) {
        self.buf.push_str(s);
    }

    pub fn into_string(self) -> String {
        self.buf
    }
}

/// Parses `args` (program name first), runs the command and writes its
/// report to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    let mut report = Report::new(cli.format);
    let status = match dispatch(&cli.command, &mut report) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    };
    let _ = out.write_all(report.into_string().as_bytes());
    let _ = out.flush();
    status
}

pub fn dispatch(cmd: &Command, r: &mut Report) -> Result<(), CliError> {
    match cmd {
        Command::Profile { input } => commands::profile(input, r),
        Command::CountPattern { pattern, input } => commands::count_pattern(pattern, input, r),
        Command::CountSmall { pattern, input } => commands::count_small(pattern, input, r),
        Command::CountC4 {
            input,
            algo,
            directed,
        } => commands::count_c4(input, *algo, *directed, r),
        Command::TauStar { input } => commands::tau_star(input, r),
        Command::Verify {
            mode,
            n,
            exhaustive,
            seeds,
            seed,
        } => verify::run(*mode, *n, *exhaustive, *seeds, *seed, r),
        Command::Gen {
            kind,
            n,
            seed,
            m,
            directed,
            max_mult,
        } => commands::gen(*kind, *n, *seed, *m, *directed, *max_mult, r),
        Command::Bench {
            max_n,
            algo,
            min_n,
            seed,
        } => bench::run(*max_n, *min_n, *algo, *seed, r),
    }
}
