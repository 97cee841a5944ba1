//! `mtheta`: levelness, Theta-rank and psd-minimality reports for small matroids.

mod analyze;
mod input;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use matroid_theta::bits;
use matroid_theta::enumeration::{all_classes, is_minimally_k_level};
use matroid_theta::geometry::levelness;
use matroid_theta::iso::canonical_form;
use matroid_theta::{Error, Matroid};

use analyze::{analyze, render_text, AnalyzeFlags, InputInfo};

const EXIT_INCONSISTENT: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_SIZE_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(name = "mtheta", version, about = "Levelness, Theta rank and psd-minimality of small matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Report on one matroid given as a JSON file, an edge-list file or a catalog name.
    Analyze {
        input: String,
        /// Include the slack matrix.
        #[arg(long)]
        slack: bool,
        /// Include the Groebner basis of the base configuration.
        #[arg(long)]
        ideal: bool,
        /// Decide psd-minimality through Hadamard square roots.
        #[arg(long)]
        hrk: bool,
        /// Sign patterns examined per Hadamard search.
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
        /// Run numerical sum-of-squares solves for the Theta upper bound.
        #[arg(long)]
        sos: bool,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Directory receiving Gram matrices of numerical certificates as CSV.
        #[arg(long)]
        gram_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Stream isomorphism classes on exactly `n` elements as JSON lines.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Keep only minimally k-level classes.
        #[arg(long)]
        minimally_level: Option<usize>,
    },
    /// Run a built-in verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES))]
        suite: String,
    },
}

#[derive(Serialize)]
struct ClassLine {
    n: usize,
    rank: usize,
    bases: Vec<Vec<usize>>,
    levelness: usize,
    two_level: bool,
    witness: Option<Witness>,
}

#[derive(Serialize)]
struct Witness {
    subset: Vec<usize>,
    level_values: Vec<usize>,
}

fn class_line(m: &Matroid) -> ClassLine {
    let (lev, facet) = levelness(m);
    ClassLine {
        n: m.ground_size(),
        rank: m.rank(),
        bases: canonical_form(m).into_iter().map(bits::to_vec).collect(),
        levelness: lev,
        two_level: lev <= 2,
        witness: facet.map(|f| Witness { subset: bits::to_vec(f.subset), level_values: f.level_values }),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("MATROID_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call fails harmlessly, e.g. when the pool was already built
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { input, slack, ideal, hrk, budget, sos, max_k, tol, gram_dir, format } => {
            let (m, kind) = match input::resolve(&input) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_BAD_INPUT);
                }
            };
            let flags = AnalyzeFlags { slack, ideal, hrk, budget, sos, max_k, tol, gram_dir };
            let report = match analyze(&m, InputInfo { source: input, kind }, &flags) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_INCONSISTENT);
                }
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
                Format::Text => print!("{}", render_text(&report)),
            }
            if report.consistent() {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: two-level characterizations disagree");
                ExitCode::from(EXIT_INCONSISTENT)
            }
        }
        Command::Enumerate { n, minimally_level } => {
            let classes = match all_classes(n) {
                Ok(c) => c,
                Err(e @ Error::SizeLimit(_)) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_SIZE_LIMIT);
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_INCONSISTENT);
                }
            };
            for m in classes.iter().filter(|m| minimally_level.is_none_or(|k| is_minimally_k_level(m, k))) {
                println!("{}", serde_json::to_string(&class_line(m)).expect("line serializes"));
            }
            ExitCode::SUCCESS
        }
        Command::Verify { suite } => {
            let checks = suites::run(&suite).expect("suite name validated by clap");
            let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &checks {
                println!("{:<width$}  {}  {}", c.name, if c.passed { "PASS" } else { "FAIL" }, c.detail);
            }
            if checks.iter().all(|c| c.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_INCONSISTENT)
            }
        }
    }
}
