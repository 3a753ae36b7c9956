//! `littlewood`: command-line access to Littlewood norms, the φ program, and
//! Chebotarev statistics.
//!
//! Exit codes: 0 success, 1 usage or computation error, 2 failed verification.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::{error_json, Format};

#[derive(Parser, Debug)]
#[command(name = "littlewood", version, about = "Littlewood norms, the φ linear program, and Chebotarev statistics")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV where the command has tabular output.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Largest group order accepted.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = positive)]
    pub max_order: u64,
    /// Largest prime-search bound accepted.
    #[arg(long, global = true, default_value = "1e8", value_parser = parse_count)]
    pub max_x: u64,
}

impl Config {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            Format::Text
        }
    }
}

fn positive(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// Accepts integers and scientific notation such as `1e6`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return if v == 0 { Err("must be positive".into()) } else { Ok(v) };
    }
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if !(v >= 1.0) || v.fract() != 0.0 || v > 1e18 {
        return Err(format!("'{s}' is not a positive integer"));
    }
    Ok(v as u64)
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Character table of a group.
    Table {
        group: String,
        #[arg(long)]
        engine: Option<String>,
    },
    /// Littlewood norm of a class set.
    Lambda {
        group: String,
        set: String,
        /// Cross-check against the trace norm of the convolution operator.
        #[arg(long)]
        oracle: bool,
        /// Also report the two-valued sieve weight of the set.
        #[arg(long)]
        sieve: bool,
    },
    /// Bounds or exact value of φ for a class set.
    Phi {
        group: String,
        set: String,
        #[arg(long, conflicts_with = "float")]
        exact: bool,
        #[arg(long)]
        float: bool,
        /// Evaluate the closed-form candidate functions.
        #[arg(long)]
        candidates: bool,
        /// Pass first to the quotient by the largest normal subgroup stabilizing the set.
        #[arg(long)]
        reduce: bool,
    },
    /// Bound λ(D) through a subgroup quotient H/U.
    Serre {
        group: String,
        set: String,
        /// Upper-triangular H and unipotent U in GL2.
        #[arg(long, conflicts_with_all = ["h", "u"])]
        borel: bool,
        /// Generators of H, separated by ';'.
        #[arg(long)]
        h: Option<String>,
        /// Generators of U, separated by ';'.
        #[arg(long)]
        u: Option<String>,
    },
    /// Frobenius distribution for primes below x.
    Chebotarev {
        sampler: String,
        set: String,
        #[arg(long, default_value = "1e6", value_parser = parse_count)]
        x: u64,
    },
    /// Least prime with Frobenius in a set.
    LeastPrime {
        sampler: String,
        set: String,
        #[arg(long, default_value = "1e7", value_parser = parse_count)]
        budget: u64,
    },
    /// Least prime where a polynomial meets a root condition.
    PolyLeast {
        poly: String,
        #[arg(long, default_value = "has_root")]
        mode: String,
        #[arg(long, default_value = "1e7", value_parser = parse_count)]
        budget: u64,
    },
    /// Least prime primitive root modulo ℓ.
    Primroot { ell: u64 },
    /// Count of primes with a_p = a, and a_p mod ℓ statistics.
    LangTrotter {
        curve: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, default_value = "1e5", value_parser = parse_count)]
        x: u64,
        /// Compare a_p mod ℓ with the GL2 trace densities.
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Least prime where two curves have different a_p.
    Disagree {
        first: String,
        second: String,
        #[arg(long, default_value = "1e6", value_parser = parse_count)]
        budget: u64,
    },
    /// Run the randomized property suite and print a scoreboard.
    Verify {
        #[arg(long, default_value_t = 500)]
        cases: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let format = cli.config.format();
    match commands::run(&cli.command, &cli.config) {
        Ok(out) => {
            print!("{}", out.render(format));
            if out.failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            if format == Format::Json {
                println!("{}", error_json(e.kind(), &e.to_string()));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_accept_scientific_notation() {
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("100"), Ok(100));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("0").is_err());
        assert!(parse_count("x").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
