//! Command-line front end. Exit codes: 0 pass, 1 verification failure,
//! 2 input error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rinehart::cli::{self, Format, Suite};
use rinehart::homology::{homology_dims, rinehart_complex};
use rinehart::CheckConfig;

#[derive(Parser)]
#[command(
    name = "rinehart",
    version,
    about = "Exact checks for Lie-Rinehart algebras and their generators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random trials per identity.
    #[arg(long, global = true, default_value_t = 32)]
    trials: usize,
    /// Largest total degree of sampled polynomials.
    #[arg(long, global = true, default_value_t = 3)]
    degree_bound: u32,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Run only this suite (repeatable). Overrides the file's `suites` entry.
    #[arg(long, global = true, value_parser = parse_suite)]
    suite: Vec<Suite>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites on an algebra file or catalog entry.
    Check { file: String },
    /// Betti numbers of (Lambda L, D) for a ground-field algebra.
    Homology { file: String },
    /// List the bundled algebras.
    Catalog,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::from_name(s).ok_or_else(|| {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite '{s}', expected one of: {}", names.join(", "))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = &cli.opts;
    let format = match opts.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Machine => Format::Machine,
    };
    let config = CheckConfig {
        seed: opts.seed,
        trials: opts.trials,
        degree_bound: opts.degree_bound,
        ..CheckConfig::default()
    };
    match &cli.command {
        Command::Catalog => {
            for e in cli::catalog() {
                let f = e.load().expect("bundled entries are valid");
                match format {
                    Format::Text => println!(
                        "{:<24} m = {}, n = {}  {}",
                        e.name,
                        f.algebra.nvars(),
                        f.algebra.rank(),
                        e.description
                    ),
                    Format::Machine => {
                        println!("catalog.{}.vars={}", e.name, f.algebra.nvars());
                        println!("catalog.{}.rank={}", e.name, f.algebra.rank());
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Command::Check { file } => {
            let input = match cli::load(file) {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            let suites = if !opts.suite.is_empty() {
                opts.suite.clone()
            } else {
                input.suites.clone().unwrap_or_else(|| Suite::ALL.to_vec())
            };
            let rep = cli::run_suites(&input, file, &suites, &config);
            print!("{}", cli::report(&rep, format));
            ExitCode::from(rep.exit_code() as u8)
        }
        Command::Homology { file } => {
            let input = match cli::load(file) {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            let complex = match rinehart_complex(&input.algebra, &input.generator()) {
                Ok(c) => c,
                Err(e) => return input_error(e),
            };
            match homology_dims(&complex) {
                Ok(betti) => {
                    let list: Vec<String> = betti.iter().map(ToString::to_string).collect();
                    match format {
                        Format::Text => println!("{}: Betti numbers {}", input.name, list.join(" ")),
                        Format::Machine => {
                            println!("algebra={}", input.name);
                            println!("betti={}", list.join(","));
                        }
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}

fn input_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}
