//! `sigmatau`: superchampion tables, benefit enumeration, reproduction
//! reports and hull data.

mod config;
mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sigmatau_core::arith::DEFAULT_SMALL_SCAN_LIMIT;
use sigmatau_core::benefit::{enumerate, nu_census, BenefitQuery};
use sigmatau_core::primes::DEFAULT_SIEVE_LIMIT;
use sigmatau_core::superchampion::{generate_sequence, generate_until, psi};
use sigmatau_core::verify::{self, export_hull, VerifyContext};
use sigmatau_core::{PrimeTable, RealX};

use config::{Config, OutputFormat};

#[derive(Parser, Debug)]
#[command(
    name = "sigmatau",
    version,
    about = "Superchampions of σ(n)/(n τ(n)^ε) and effective divisor bounds"
)]
struct Cli {
    /// Primes are sieved up to this bound
    #[arg(long, global = true, env = "SIGMATAU_SIEVE_LIMIT", default_value_t = DEFAULT_SIEVE_LIMIT)]
    sieve_limit: u64,
    /// Bound of the exhaustive integer scans
    #[arg(long, global = true, default_value_t = DEFAULT_SMALL_SCAN_LIMIT)]
    small_scan_limit: u64,
    /// Sieve to 10^8 + 100 and enable the checks that need it
    #[arg(long, global = true)]
    heavy: bool,
    /// Informational; arithmetic is double-double (about 31 digits)
    #[arg(long, global = true, default_value_t = 30)]
    precision_digits: u32,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the main output here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Superchampion sequence
    #[command(subcommand)]
    Superchampion(SuperchampionCmd),
    /// Integers of small benefit
    #[command(subcommand)]
    Benefit(BenefitCmd),
    /// Reproduction reports
    Verify(VerifyArgs),
    /// Images (log τ(n), log σ(n)/n) and the superchampion chain
    #[command(subcommand)]
    Hull(HullCmd),
}

#[derive(Subcommand, Debug)]
enum SuperchampionCmd {
    /// All superchampions whose parameter interval reaches eps-min
    List {
        #[arg(long)]
        eps_min: String,
        /// Minimal run length of equal exponents compressed as P(a..b)
        #[arg(long, default_value_t = 4)]
        min_run: usize,
        /// Print every prime of the factorizations
        #[arg(long)]
        expand: bool,
    },
}

#[derive(Subcommand, Debug)]
enum BenefitCmd {
    /// Every n with ben(n) <= budget at ε_i, reference N^(i)
    Enum {
        #[arg(long)]
        eps_index: usize,
        #[arg(long)]
        budget: String,
        /// Express hits relative to this record (46 is M₁)
        #[arg(long, default_value_t = 46)]
        relative_to: usize,
    },
    /// ν(x) = #{n >= 2 : σ(n)/(n log log 3τ(n)) >= x}
    Census {
        #[arg(long)]
        threshold: String,
        /// Also print the counted integers
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Pipeline {
    Theorem1,
    Theorem2,
    Theorem3,
    Inequalities,
    Properties,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    pipeline: Pipeline,
    /// Also write the report to this file
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum HullCmd {
    /// CSV of the images of 1 <= n <= limit
    Export {
        #[arg(long)]
        limit: u64,
        /// Write the vertex chain CSV here
        #[arg(long)]
        vertices: Option<PathBuf>,
    },
}

/// Failure of the command itself, reported on stderr.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
    ClaimsFailed,
}

impl From<sigmatau_core::Error> for Failure {
    fn from(e: sigmatau_core::Error) -> Self {
        match e {
            sigmatau_core::Error::InvalidArgument(m) => Failure::Usage(m),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn parse_real(name: &str, s: &str) -> Result<RealX, Failure> {
    RealX::parse_decimal(s).map_err(|e| Failure::Usage(format!("--{name}: {e}")))
}

fn write_out(path: Option<&Path>, body: &str) -> Result<(), Failure> {
    let mut body = body.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match path {
        Some(p) => fs::write(p, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = Config::new(
        cli.sieve_limit,
        cli.small_scan_limit,
        cli.heavy,
        cli.precision_digits,
        cli.format,
        cli.output,
    );
    if cfg.precision_digits > RealX::DIGITS {
        eprintln!(
            "note: --precision-digits {} exceeds the {} digits carried by the arithmetic",
            cfg.precision_digits,
            RealX::DIGITS
        );
    }
    match cli.command {
        Command::Superchampion(SuperchampionCmd::List {
            eps_min,
            min_run,
            expand,
        }) => {
            let eps = parse_real("eps-min", &eps_min)?;
            if eps <= RealX::ZERO {
                return Err(Failure::Usage("--eps-min must be positive".into()));
            }
            let table = PrimeTable::new(cfg.sieve_limit)?;
            let seq = generate_sequence(&table, eps)?;
            let min_run = if expand { usize::MAX } else { min_run };
            let body = render::superchampions(&seq, &table, min_run, cfg.output_format)?;
            write_out(cfg.output_path.as_deref(), &body)
        }
        Command::Benefit(BenefitCmd::Enum {
            eps_index,
            budget,
            relative_to,
        }) => {
            if eps_index == 0 {
                return Err(Failure::Usage(
                    "--eps-index must be >= 1 (ε_0 is infinite)".into(),
                ));
            }
            let budget = parse_real("budget", &budget)?;
            let table = PrimeTable::new(cfg.sieve_limit)?;
            let need = eps_index.max(relative_to) + 1;
            let seq = generate_until(&table, |s| s.len() >= need)?;
            let rec = seq.record(eps_index)?;
            let q = BenefitQuery::new(&table, rec.eps_hi, &rec, budget)?;
            let hits = enumerate(&table, &q)?;
            let base = seq.factorization(relative_to);
            let body = render::hits(&hits, &base, cfg.output_format)?;
            write_out(cfg.output_path.as_deref(), &body)
        }
        Command::Benefit(BenefitCmd::Census { threshold, list }) => {
            let x = parse_real("threshold", &threshold)?;
            let table = PrimeTable::new(cfg.sieve_limit)?;
            let seq = generate_sequence(&table, psi(175_939, 1))?;
            let census = nu_census(&table, &seq, x)?;
            let base = seq.factorization(46);
            let body = render::census(&census, &base, list, cfg.output_format)?;
            write_out(cfg.output_path.as_deref(), &body)
        }
        Command::Verify(args) => {
            let format = match cfg.output_format {
                OutputFormat::Csv => {
                    return Err(Failure::Usage("verify reports are text or json".into()))
                }
                f => f,
            };
            let ctx = VerifyContext::new(cfg.sieve_limit, cfg.small_scan_limit, cfg.heavy)?;
            let claims = match args.pipeline {
                Pipeline::Theorem1 => verify::verify_theorem1(&ctx)?,
                Pipeline::Theorem2 => verify::verify_theorem2(&ctx)?,
                Pipeline::Theorem3 => verify::verify_theorem3(&ctx)?,
                Pipeline::Inequalities => verify::verify_small_inequalities(&ctx)?,
                Pipeline::Properties => verify::verify_properties(&ctx)?,
                Pipeline::All => verify::verify_all(&ctx)?,
            };
            let body = match format {
                OutputFormat::Json => verify::to_json(&claims),
                _ => verify::to_text(&claims),
            };
            write_out(cfg.output_path.as_deref(), &body)?;
            if let Some(path) = &args.report {
                let report = match format {
                    OutputFormat::Text => verify::to_text(&claims),
                    _ => verify::to_json(&claims),
                };
                write_out(Some(path), &report)?;
            }
            if verify::all_passed(&claims) {
                Ok(())
            } else {
                Err(Failure::ClaimsFailed)
            }
        }
        Command::Hull(HullCmd::Export { limit, vertices }) => {
            if limit == 0 || limit > cfg.small_scan_limit {
                return Err(Failure::Usage(format!(
                    "--limit must lie in [1, {}] (the small-scan limit)",
                    cfg.small_scan_limit
                )));
            }
            let table = PrimeTable::new(cfg.sieve_limit)?;
            let hull = export_hull(&table, limit)?;
            write_out(cfg.output_path.as_deref(), &render::hull_points(&hull)?)?;
            if let Some(path) = vertices {
                write_out(Some(&path), &render::hull_vertices(&hull)?)?;
            }
            if hull.dominated() {
                Ok(())
            } else {
                Err(Failure::Runtime(format!(
                    "n = {} lies {} above the superchampion chain",
                    hull.max_excess_at, hull.max_excess
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::ClaimsFailed) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
    }
}
