//! `affmon`: command-line front end for the affine monoid toolkit.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "affmon",
    version,
    about = "Exact computations on affine monoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group, cone and Hilbert basis of a monoid.
    Info(Source),
    /// The saturation of a monoid, as a monoid file.
    Saturate(Source),
    /// The prime spectrum.
    Spec(Source),
    /// The divisor class group.
    Classgroup(Source),
    /// The canonical ideal generated by the relative interior.
    Canonical(Source),
    /// The Gorenstein test `relint Q = c + Q`.
    Gorenstein(Source),
    /// Normal form of a two-dimensional monoid.
    Type2d(Source),
    /// Fractional ideal operations.
    Ideal(IdealArgs),
    /// Brute-force verification.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Runs the randomized property suite against bounded brute force.
    Verify(VerifyArgs),
}

/// Exactly one of `--monoid` and `--name`.
#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Monoid file: {"name", "ambient_rank", "generators"}.
    #[arg(
        long,
        value_name = "FILE",
        conflicts_with = "name",
        required_unless_present = "name"
    )]
    pub monoid: Option<PathBuf>,
    /// Named family: a_n, jungian, free, quadric, twisted.
    #[arg(long)]
    pub name: Option<String>,
    /// Parameters of the named family.
    #[arg(
        long = "param",
        value_name = "P",
        requires = "name",
        allow_negative_numbers = true
    )]
    pub params: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IdealOp {
    /// The ideal itself, reduced to minimal generators.
    Show,
    Star,
    Inverse,
    Sum,
    Product,
    Intersect,
    Colon,
}

impl IdealOp {
    pub fn is_binary(self) -> bool {
        matches!(
            self,
            IdealOp::Sum | IdealOp::Product | IdealOp::Intersect | IdealOp::Colon
        )
    }
}

#[derive(Args, Debug)]
pub struct IdealArgs {
    #[command(flatten)]
    pub source: Source,
    /// Ideal file: {"generators"} in ambient coordinates.
    #[arg(long, value_name = "FILE")]
    pub ideal: PathBuf,
    #[arg(long, value_enum, default_value_t = IdealOp::Show)]
    pub op: IdealOp,
    /// Second ideal for binary operations.
    #[arg(long, value_name = "FILE", required_if_eq_any = [("op", "sum"), ("op", "product"), ("op", "intersect"), ("op", "colon")])]
    pub other: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = affmon::oracle::DEFAULT_BOUND)]
    pub bound: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Info(s) => commands::info(s),
        Command::Saturate(s) => commands::saturate(s),
        Command::Spec(s) => commands::spectrum(s),
        Command::Classgroup(s) => commands::classgroup(s),
        Command::Canonical(s) => commands::canonical(s),
        Command::Gorenstein(s) => commands::gorenstein(s),
        Command::Type2d(s) => commands::type2d(s),
        Command::Ideal(args) => commands::ideal(args),
        Command::Oracle {
            command: OracleCommand::Verify(args),
        } => commands::verify(args),
    };
    let (value, code) = match result {
        Ok(value) => (value, ExitCode::SUCCESS),
        Err(failure) => {
            let code = match failure {
                Failure::Domain(_) => 1,
                Failure::Input { .. } => 2,
            };
            (failure.to_json(), ExitCode::from(code))
        }
    };
    println!("{}", render::render(&value, cli.format));
    code
}
