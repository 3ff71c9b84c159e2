//! Library side of the `rvbound` command: argument definitions and the three
//! subcommands, writing to arbitrary sinks so they can be tested in-process.
//!
//! Exit codes: `0` negativity certified (or, for `thresholds` and `survey`,
//! success), `1` not certified, `2` invalid input.

mod certify;
mod survey;
mod thresholds;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use certify::{certify_text, CertifyArgs, CertifyDocument, ScanSummary};
pub use survey::{run_survey, wilson_interval, SurveyConfig, SurveyReport};
pub use thresholds::{threshold_rows, ThresholdRow};

/// Version of the JSON documents emitted with `--json` / by the survey.
pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_CERTIFIED: u8 = 0;
pub const EXIT_NOT_CERTIFIED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "rvbound", version, about = "Renormalized-volume bounds for Schottky fillings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every bound for a surface file and decide negativity.
    Certify(CertifyCmd),
    /// Tabulate the negativity thresholds A(g, k1, k).
    Thresholds(ThresholdsCmd),
    /// Monte Carlo survey over random Fenchel-Nielsen coordinates.
    Survey(SurveyCmd),
}

#[derive(Debug, Args)]
pub struct CertifyCmd {
    /// Surface description file.
    pub file: PathBuf,
    /// Emit the versioned JSON document instead of text.
    #[arg(long)]
    pub json: bool,
    /// Maximum word length of the systole scan; 0 disables the scan.
    #[arg(long, default_value_t = rvbound::fuchsian::DEFAULT_SCAN_DEPTH)]
    pub scan_depth: usize,
    /// Maximum number of words the scan may visit.
    #[arg(long, default_value_t = rvbound::fuchsian::DEFAULT_SCAN_BUDGET)]
    pub scan_budget: u64,
    /// Assert that no geodesic of length <= 1 exists besides the short pants curves.
    #[arg(long)]
    pub assume_systole: bool,
    /// Assert the holed-tori configuration and evaluate the comparator bound.
    #[arg(long)]
    pub comparator: bool,
    /// Assert the half-length of the shortest compressible geodesic.
    #[arg(long)]
    pub rho: Option<f64>,
    /// Threads for the systole scan; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct ThresholdsCmd {
    #[arg(long)]
    pub max_genus: usize,
    /// CSV instead of an aligned table.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct SurveyCmd {
    #[arg(long)]
    pub genus: usize,
    #[arg(long)]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
    /// Lower end of the log-uniform length range.
    #[arg(long)]
    pub len_min: f64,
    #[arg(long)]
    pub len_max: f64,
    /// Force this many short curves; the rest are drawn from (1, Bers bound].
    #[arg(long)]
    pub short_count: Option<usize>,
    /// Threads; the report is byte-identical for any value.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long)]
    pub json: bool,
}

/// Exit code after a failed write of the report. A closed pipe (`| head`)
/// is not an error.
pub(crate) fn write_failure(e: std::io::Error, err: &mut dyn Write, code: u8) -> u8 {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        return code;
    }
    let _ = writeln!(err, "error: {e}");
    EXIT_INPUT
}

/// Run a parsed command line; returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match &cli.command {
        Command::Certify(c) => certify::run(c, out, err),
        Command::Thresholds(c) => thresholds::run(c, out, err),
        Command::Survey(c) => survey::run(c, out, err),
    }
}
