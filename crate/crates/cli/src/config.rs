use std::path::PathBuf;

use clap::ValueEnum;
use sigmatau_core::primes::HEAVY_SIEVE_LIMIT;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct Config {
    pub sieve_limit: u64,
    pub small_scan_limit: u64,
    pub heavy: bool,
    /// informational: the arithmetic carries about 31 digits regardless
    pub precision_digits: u32,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl Config {
    pub fn new(
        sieve_limit: u64,
        small_scan_limit: u64,
        heavy: bool,
        precision_digits: u32,
        output_format: OutputFormat,
        output_path: Option<PathBuf>,
    ) -> Self {
        let sieve_limit = if heavy {
            sieve_limit.max(HEAVY_SIEVE_LIMIT)
        } else {
            sieve_limit
        };
        Config {
            sieve_limit,
            small_scan_limit,
            heavy,
            precision_digits,
            output_format,
            output_path,
        }
    }
}
