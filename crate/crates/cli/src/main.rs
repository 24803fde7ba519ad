//! `luroth`: reproducible runs of the invariant pipeline from the command line.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use luroth::covariants::MIN_PRIME;
use luroth::exactalg::field::is_prime;

#[derive(Parser, Debug)]
#[command(name = "luroth", version, about = "Invariant computations for plane quartics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Ground field selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldArg {
    Prime(u64),
    Rational,
}

impl std::fmt::Display for FieldArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldArg::Prime(p) => write!(f, "{p}"),
            FieldArg::Rational => f.write_str("rational"),
        }
    }
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|_| format!("{s:?} is not an integer"))?;
    if !(MIN_PRIME..1 << 31).contains(&p) || !is_prime(p) {
        return Err(format!("{p} is not a prime in [{MIN_PRIME}, 2^31)"));
    }
    Ok(p)
}

fn parse_field(s: &str) -> Result<FieldArg, String> {
    if s == "rational" {
        Ok(FieldArg::Rational)
    } else {
        parse_prime(s).map(FieldArg::Prime)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Generic,
    Luroth,
    L2,
    L1,
    Ciani,
    Remark,
}

#[derive(Args, Debug)]
pub struct FindArgs {
    /// Prime field
    #[arg(long, value_parser = parse_prime, default_value = "10007", conflicts_with = "crt")]
    pub prime: u64,
    /// Prime list for the multimodular mode
    #[arg(long, value_parser = parse_prime, value_delimiter = ',', requires = "crt")]
    pub primes: Vec<u64>,
    /// Combine runs over --primes and reconstruct rational coefficients
    #[arg(long)]
    pub crt: bool,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Generic batch size
    #[arg(long, default_value_t = luroth::relfind::DEFAULT_BATCH)]
    pub generic: usize,
    /// Pentalateral batch size
    #[arg(long, default_value_t = luroth::relfind::DEFAULT_BATCH)]
    pub luroth: usize,
    /// Read the generic batch from a quartic file instead of sampling it
    #[arg(long, conflicts_with = "crt")]
    pub generic_file: Option<PathBuf>,
    /// Read the pentalateral batch from a quartic file instead of sampling it
    #[arg(long, conflicts_with = "crt")]
    pub luroth_file: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct InvariantsArgs {
    /// Quartic file
    pub file: PathBuf,
    /// Field; defaults to the `prime` header of the file
    #[arg(long, value_parser = parse_field)]
    pub prime: Option<FieldArg>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long, value_parser = parse_field, default_value = "10007")]
    pub prime: FieldArg,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Attempts per sample for the l1 and remark families
    #[arg(long, default_value_t = luroth::sampling::DEFAULT_RETRIES)]
    pub retries: usize,
    /// Expression used to validate l1 samples; computed when absent
    #[arg(long)]
    pub expression: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ProbeArgs {
    /// Quartic file with the locus samples
    pub samples: PathBuf,
    #[arg(long)]
    pub degree: u32,
    /// Field; defaults to the `prime` header of the samples file
    #[arg(long, value_parser = parse_prime)]
    pub prime: Option<u64>,
    /// Seed of the generic comparison batch
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Expected number of new relations, checked as a checkpoint
    #[arg(long)]
    pub expect_new: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyCianiArgs {
    /// Expression file
    pub expression: PathBuf,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct ExpandCianiArgs {
    #[arg(long, value_parser = parse_field, default_value = "10007")]
    pub prime: FieldArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct InterpolateCianiArgs {
    /// Expression file
    pub expression: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of Ciani samples; defaults to the basis size plus margin
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reconstruct the degree-54 Luroth expression
    FindLuroth(FindArgs),
    /// Print the 13 generator values of each quartic in a file
    Invariants(InvariantsArgs),
    /// Generate a batch of quartics from one family
    Gen(GenArgs),
    /// Find relations vanishing on a batch of quartics but not generically
    Probe(ProbeArgs),
    /// Check the Ciani factorization of an expression
    VerifyCiani(VerifyCianiArgs),
    /// Expand the Ciani product G^4 H^2 J
    ExpandCiani(ExpandCianiArgs),
    /// Interpolate the restriction of an expression to Ciani quartics
    InterpolateCiani(InterpolateCianiArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::FindLuroth(a) => commands::find_luroth(&a),
        Command::Invariants(a) => commands::invariants(&a),
        Command::Gen(a) => commands::gen(&a),
        Command::Probe(a) => commands::probe(&a),
        Command::VerifyCiani(a) => commands::verify_ciani(&a),
        Command::ExpandCiani(a) => commands::expand_ciani(&a),
        Command::InterpolateCiani(a) => commands::interpolate_ciani(&a),
    };
    match result {
        Ok(checks) if checks.all_passed() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
