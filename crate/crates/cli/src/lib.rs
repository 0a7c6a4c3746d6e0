//! Command-line front end for `ringline-core`.
//!
//! [`run`] takes the argument list and two sinks so the whole tool can be
//! driven from tests; the binary is a thin wrapper around it.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ringline_core::DEFAULT_MAX_ELEMENTS;

mod commands;
mod labels;
mod text;

/// Process exit statuses. Every error path has its own code.
pub mod exit {
    pub const OK: i32 = 0;
    /// `verify` ran and at least one check failed.
    pub const CHECKS_FAILED: i32 = 1;
    /// Bad command line (unknown flag, missing argument).
    pub const USAGE: i32 = 2;
    /// The ring spec did not parse.
    pub const SPEC: i32 = 3;
    /// The ring is larger than `--max-elements`.
    pub const BOUND: i32 = 4;
    /// An element name did not resolve.
    pub const ELEMENT: i32 = 5;
    /// A point was malformed or inadmissible.
    pub const POINT: i32 = 6;
    /// The requested ideal cannot be used for a quotient.
    pub const IDEAL: i32 = 7;
    /// The command does not support the requested format.
    pub const FORMAT: i32 = 8;
    /// Writing the output failed.
    pub const IO: i32 = 9;
    /// An invariant of the library was violated.
    pub const INTERNAL: i32 = 10;
}

#[derive(Debug, Parser)]
#[command(
    name = "ringline",
    version,
    about = "Finite rings, their ideals, and the projective lines over them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Elements, units, ideals and radical of a ring
    RingInfo(RingArgs),
    /// Addition or multiplication table
    RingTable {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = Op::Mul)]
        op: Op,
    },
    /// Points of the projective line
    LinePoints(RingArgs),
    /// Neighbourhood of one point
    LineNeighbours {
        #[command(flatten)]
        ring: RingArgs,
        /// Any representative, e.g. "(1,0)"
        #[arg(long)]
        point: String,
    },
    /// Point counts and neighbourhood statistics
    LineStats(RingArgs),
    /// The neighbour graph
    LineGraph(RingArgs),
    /// Map of lines induced by the projection onto a quotient
    HomInduced {
        #[command(flatten)]
        ring: RingArgs,
        /// An element generating the ideal, or `jacobson`
        #[arg(long)]
        ideal: String,
    },
    /// Run the self-checks (reference values when no ring is given)
    Verify {
        #[arg(long)]
        ring: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// Ring spec, e.g. "GF(2)[x]/(x^3-x)" or "GF(2)*GF(3)"
    #[arg(long)]
    pub ring: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest ring that will be tabulated
    #[arg(long, env = "RINGLINE_MAX_ELEMENTS", default_value_t = DEFAULT_MAX_ELEMENTS)]
    pub max_elements: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Add,
    Mul,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default();
        f.write_str(&name)
    }
}

/// A failed command: exit status plus the diagnostic for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub(crate) fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

/// Output of a successful command. `status` is non-zero only for a `verify`
/// run with failing checks.
pub(crate) struct Output {
    pub stdout: String,
    pub stderr: String,
    pub status: i32,
}

impl From<String> for Output {
    fn from(stdout: String) -> Self {
        Output {
            stdout,
            stderr: String::new(),
            status: exit::OK,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
                exit::USAGE
            } else {
                match stdout.write_all(rendered.as_bytes()) {
                    Ok(()) => exit::OK,
                    Err(_) => exit::IO,
                }
            };
        }
    };
    match commands::execute(&cli.command) {
        Ok(out) => {
            let written = stdout
                .write_all(out.stdout.as_bytes())
                .and_then(|()| stdout.flush())
                .and_then(|()| stderr.write_all(out.stderr.as_bytes()));
            match written {
                Ok(()) => out.status,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    exit::IO
                }
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
