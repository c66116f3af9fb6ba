//! `regext`: extend, classify and analyze regular graphs read as graph6 lines.

mod commands;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use regext_core::{Strategy, Target};

#[derive(Parser, Debug)]
#[command(name = "regext", version, about = "Extend regular graphs by complement perfect matchings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Read graph6 lines from a file instead of standard input.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Emit JSON lines instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Attach certificates to successful results too.
    #[arg(long, global = true)]
    pub certificates: bool,
    /// Worker threads for verify.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Add complement perfect matchings until the target regularity.
    Extend {
        /// Defaults to one more than the input regularity.
        #[arg(long)]
        target_r: Option<usize>,
        #[arg(long, default_value = "auto", value_parser = parse_strategy)]
        strategy: Strategy,
        /// Alternative matchings tried per level when a later level gets stuck.
        #[arg(long, default_value_t = 0)]
        backtrack: usize,
    },
    /// Report which extension and matching guarantees apply.
    Check,
    /// Find a perfect matching or a Tutte set.
    Match,
    /// Components, bridges, balloons, clique number.
    Analyze,
    /// Random or exhaustive regular graphs as graph6.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Number of random samples.
        #[arg(long, default_value_t = 1, conflicts_with = "enumerate")]
        count: usize,
        /// All graphs up to isomorphism (n <= 10).
        #[arg(long)]
        enumerate: bool,
        /// Only connected graphs when enumerating.
        #[arg(long, requires = "enumerate")]
        connected: bool,
    },
    /// Check a guarantee constructively over generated graphs.
    Verify {
        /// T1..T5, L, C, L0-balloon or INEQ.
        #[arg(long, value_parser = parse_target)]
        rule: Target,
        #[arg(long, alias = "n", value_parser = parse_range)]
        n_range: Option<RangeInclusive<usize>>,
        #[arg(long, alias = "r", value_parser = parse_range)]
        r_range: Option<RangeInclusive<usize>>,
        /// Samples per (n, r) pair; without it pairs with n <= 10 are enumerated.
        #[arg(long)]
        samples: Option<usize>,
    },
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse()
}

/// `A..B` (inclusive) or a single `A`.
fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {a}..{b}"));
            }
            Ok(a..=b)
        }
        None => num(s).map(|a| a..=a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("REGEXT_LOG", "error"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let common = cli.common;
    let result = match cli.command {
        Command::Extend { target_r, strategy, backtrack } => {
            commands::extend(&common, target_r, strategy, backtrack)
        }
        Command::Check => commands::check(&common),
        Command::Match => commands::matching(&common),
        Command::Analyze => commands::analyze(&common),
        Command::Gen { n, r, count, enumerate, connected } => {
            commands::gen(&common, n, r, if enumerate { None } else { Some(count) }, connected)
        }
        Command::Verify { rule, n_range, r_range, samples } => {
            commands::verify(&common, rule, n_range, r_range, samples)
        }
    };
    match result {
        Ok(commands::Status::Success) => ExitCode::SUCCESS,
        Ok(commands::Status::Failure) => ExitCode::from(1),
        Err(e) => {
            eprintln!("regext: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("18..56"), Ok(18..=56));
        assert_eq!(parse_range("17"), Ok(17..=17));
        assert_eq!(parse_range("4..=6"), Ok(4..=6));
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("a..3").is_err());
    }
}
