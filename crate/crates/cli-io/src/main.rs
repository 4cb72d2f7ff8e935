use std::io::{IsTerminal, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use cli_io::{commands, run, Report};
use curve_model::Variant;

#[derive(Copy, Clone, Debug, ValueEnum)]
enum VariantArg {
    Minus,
    Plain,
    Plus,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Minus => Variant::Minus,
            VariantArg::Plain => Variant::Plain,
            VariantArg::Plus => Variant::Plus,
        }
    }
}

fn parse_k(s: &str) -> Result<u8, String> {
    match s {
        "2" => Ok(2),
        "3" => Ok(3),
        "4" => Ok(4),
        _ => Err("k must be 2, 3, or 4".to_string()),
    }
}

#[derive(Parser)]
#[command(
    name = "akcurves",
    version,
    about = "Stability, degeneration, and chamber computations for curves with A_k-singularities"
)]
struct Cli {
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Emit the human-readable text report (the default).
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check stability of a curve for one variant of the parameter k
    Stability {
        /// Path to a curve JSON document
        input: PathBuf,
        #[arg(long, value_parser = parse_k)]
        k: u8,
        #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
        variant: VariantArg,
    },
    /// Split a stable curve into its core and appendages
    Decompose {
        input: PathBuf,
        #[arg(long, value_parser = parse_k)]
        k: u8,
    },
    /// Decide whether a curve is maximally degenerate
    Closed {
        input: PathBuf,
        #[arg(long, value_parser = parse_k)]
        k: u8,
    },
    /// Compute the maximal degeneration of a stable curve
    Degenerate {
        input: PathBuf,
        #[arg(long, value_parser = parse_k)]
        k: u8,
    },
    /// Build the deformation chart of a maximally degenerate curve
    Weights {
        input: PathBuf,
        #[arg(long, value_parser = parse_k)]
        k: u8,
        /// Number of zero-weight core coordinates (default: 3g - 3 + n of the core)
        #[arg(long)]
        core_block: Option<usize>,
    },
    /// Compute the plus and minus chambers of a weight system
    Chambers {
        /// Path to a weight-system JSON document
        input: PathBuf,
        /// Raise the coordinate-count guard above its default
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Compare a curve's chart chambers against the feasibility kernel
    Crosscheck {
        input: PathBuf,
        #[arg(long, value_parser = parse_k)]
        k: u8,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Print the closed-form plus chamber of a node-chain chart
    ChainFormula {
        /// Number of torus factors
        #[arg(long)]
        r: usize,
        /// Half the singularity parameter: bridges carry 2m+1 smoothing coordinates
        #[arg(long)]
        m: u32,
    },
    /// Rescale a valued crimping vector onto its limit
    LimitCrimp {
        /// Path to a valued-crimping JSON document
        input: PathBuf,
    },
    /// Run every acceptance criterion against the bundled corpus
    CorpusRun,
}

fn read_input(path: &PathBuf) -> Result<String, Report> {
    std::fs::read_to_string(path)
        .map_err(|e| Report::input_error(format!("cannot read {}: {e}", path.display())))
}

fn dispatch(cmd: Cmd) -> Report {
    match cmd {
        Cmd::Stability { input, k, variant } => match read_input(&input) {
            Ok(text) => commands::cmd_stability(&text, k, variant.into()),
            Err(r) => r,
        },
        Cmd::Decompose { input, k } => match read_input(&input) {
            Ok(text) => commands::cmd_decompose(&text, k),
            Err(r) => r,
        },
        Cmd::Closed { input, k } => match read_input(&input) {
            Ok(text) => commands::cmd_closed(&text, k),
            Err(r) => r,
        },
        Cmd::Degenerate { input, k } => match read_input(&input) {
            Ok(text) => commands::cmd_degenerate(&text, k),
            Err(r) => r,
        },
        Cmd::Weights { input, k, core_block } => match read_input(&input) {
            Ok(text) => commands::cmd_weights(&text, k, core_block),
            Err(r) => r,
        },
        Cmd::Chambers { input, cap } => match read_input(&input) {
            Ok(text) => commands::cmd_chambers(&text, cap),
            Err(r) => r,
        },
        Cmd::Crosscheck { input, k, cap } => match read_input(&input) {
            Ok(text) => commands::cmd_crosscheck(&text, k, cap),
            Err(r) => r,
        },
        Cmd::ChainFormula { r, m } => commands::cmd_chain_formula(r, m),
        Cmd::LimitCrimp { input } => match read_input(&input) {
            Ok(text) => commands::cmd_limit_crimp(&text),
            Err(r) => r,
        },
        Cmd::CorpusRun => run::corpus_run(),
    }
}

/// Style the pass/FAIL column of text reports when stdout is a terminal and
/// NO_COLOR is unset; JSON output is never styled.
fn stylize(text: &str) -> String {
    let color = std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
    if !color {
        return text.to_string();
    }
    text.replace("  pass  ", "  \x1b[32mpass\x1b[0m  ")
        .replace("  FAIL  ", "  \x1b[31mFAIL\x1b[0m  ")
}

fn main() {
    let cli = Cli::parse();
    let report = dispatch(cli.command);
    let bytes = if cli.json {
        report.json_bytes()
    } else {
        let mut t = stylize(&report.text).into_bytes();
        t.push(b'\n');
        t
    };
    // A closed pipe (readers like `head`) must not turn into a panic; the
    // verdict is still delivered through the exit code.
    let _ = std::io::stdout().write_all(&bytes);
    std::process::exit(i32::from(report.exit));
}
