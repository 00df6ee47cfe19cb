use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eja_cli::json::{self, parse_algebra, parse_element, parse_map, UsageError};
use eja_cli::{benchmark_algebras, commands, SuiteSelection};
use eja_core::{Algebra, EjaError};
use serde::Serialize;

/// Randomized law suites and JSON tools for Euclidean Jordan algebras.
///
/// JSON goes to stdout, diagnostics to stderr. Exit status: 0 on success,
/// 1 on a failed law or a domain error, 2 on a usage error.
#[derive(Parser)]
#[command(name = "eja", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Algebra as JSON (`{"factors":[{"kind":"spin","d":4}]}`), shorthand
    /// (`RealSym(2)+Spin(3)`), or `@file`. `laws` defaults to six benchmark algebras.
    #[arg(long, global = true)]
    algebra: Option<String>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,

    /// Base tolerance; each law scales it by a documented factor.
    #[arg(long, global = true, env = "EJA_DEFAULT_TOL", default_value_t = 1e-7)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Run a law suite and print a report.
    Laws {
        /// core, spectral, corner_filter, polar, exchange, diamond, dagger_effectus or all.
        #[arg(long, default_value = "all")]
        suite: SuiteSelection,
    },
    /// Spectral decomposition of an element.
    Spectral {
        /// `{"algebra": ..., "coords": [...]}`, or bare coordinates with `--algebra`.
        #[arg(long)]
        element: String,
        /// Split the idempotents into atomic ones.
        #[arg(long)]
        atomic: bool,
    },
    /// Polar decomposition of `Q_q Q_p` for positive `p`, `q`.
    Polar {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Purity witness for `π_p ∘ ξ_q` (`p` idempotent, `q` an effect).
    Exchange {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Table of `(p, f^⋄(p), f_⋄(p))` for a positive endomap `f`.
    DiamondTable {
        /// `{"domain", "codomain", "matrix", "certificate"}`.
        #[arg(long)]
        map: String,
        /// Random ceilings added to the sampled idempotents (ignored on ℝⁿ,
        /// where the whole lattice is used).
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

enum Failure {
    Usage(UsageError),
    Domain(EjaError),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e)
    }
}

impl From<EjaError> for Failure {
    fn from(e: EjaError) -> Self {
        Failure::Domain(e)
    }
}

fn emit<T: Serialize>(value: &T) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(json::to_string(value).as_bytes());
    let _ = out.flush();
}

fn algebra(cli: &Cli) -> Result<Option<Algebra>, UsageError> {
    cli.algebra.as_deref().map(parse_algebra).transpose()
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    if !(cli.tol >= 0.0) {
        return Err(UsageError(format!("tolerance must be non-negative, got {}", cli.tol)).into());
    }
    let alg = algebra(cli)?;
    match &cli.command {
        Command::Laws { suite } => {
            let algebras = match alg {
                Some(a) => vec![a],
                None => benchmark_algebras(),
            };
            let out = commands::laws(&algebras, *suite, cli.seed, cli.trials, cli.tol);
            for r in &out.reports {
                for l in r.laws.iter().filter(|l| !l.pass) {
                    eprintln!("eja: law {} failed on {:?}", l.law_id, r.algebra_descriptor);
                }
            }
            emit(&out);
            Ok(out.pass)
        }
        Command::Spectral { element, atomic } => {
            let a = parse_element(element, alg.as_ref())?;
            emit(&commands::spectral(&a, *atomic, cli.seed)?);
            Ok(true)
        }
        Command::Polar { p, q } => {
            let p = parse_element(p, alg.as_ref())?;
            let q = parse_element(q, alg.as_ref())?;
            commands::require_positive("p", &p)?;
            commands::require_positive("q", &q)?;
            emit(&commands::polar(&p, &q)?);
            Ok(true)
        }
        Command::Exchange { p, q } => {
            let p = parse_element(p, alg.as_ref())?;
            let q = parse_element(q, alg.as_ref())?;
            emit(&commands::exchange(&p, &q)?);
            Ok(true)
        }
        Command::DiamondTable { map, samples } => {
            let f = parse_map(map)??;
            emit(&commands::diamond_table(&f, *samples, cli.seed)?);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Domain(e)) => {
            eprintln!("eja: {e} [{}]", e.name());
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("eja: usage: {e}");
            ExitCode::from(2)
        }
    }
}
