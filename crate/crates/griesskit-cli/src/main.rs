//! Command line front end for the dihedral pair calculator.
//!
//! Exit status: 0 on success, 1 when a verification or tolerance check
//! fails, 2 on usage or data errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use griesskit::decomp::solve::DEFAULT_BOUND;
use griesskit::griess::definition::PairClass;

use commands::Config;
use report::Format;

#[derive(Parser)]
#[command(
    name = "griesskit",
    version,
    about = "Exact calculator for dihedral axis pairs and their minimal-model decompositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Working precision in bits for numeric evaluation.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,

    /// Tolerance for numeric-versus-exact agreement.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
}

/// The two pair classes with full case tables.
#[derive(Clone, Copy, ValueEnum)]
enum Case {
    /// Order-three pair whose axis complement is a single conformal line.
    C3,
    /// Order-five pair whose axis complement is a conformal pencil.
    A5,
}

impl Case {
    fn class(self) -> PairClass {
        match self {
            Case::C3 => PairClass::ThreeC,
            Case::A5 => PairClass::FiveA,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List every pair class with its order and invariants.
    Catalog,
    /// Print a case table: products, pairing matrix, automorphisms.
    Table {
        #[arg(long, value_enum)]
        case: Case,
    },
    /// Row reduce the pairing matrix of the seven canonical spanning vectors.
    Gram {
        #[arg(long, value_enum)]
        case: Case,
    },
    /// Eigenspaces of the adjoint action of the axis e.
    Eigen {
        #[arg(long, value_enum)]
        case: Case,
    },
    /// Conformal vectors complementing the axis, with their central charges.
    Conformal {
        #[arg(long, value_enum)]
        case: Case,
    },
    /// Weight-four pairing matrix with the tabulated-value discrepancy ledger.
    W4 {
        #[arg(long, value_enum)]
        case: Case,
    },
    /// Fuse two modules of a minimal model.
    Fusion {
        /// Minimal model as `p,q`.
        #[arg(long, value_parser = parse_pair)]
        model: (u64, u64),
        /// Left Kac label as `r,s`.
        #[arg(long, value_parser = parse_pair)]
        left: (u64, u64),
        /// Right Kac label as `r,s`.
        #[arg(long, value_parser = parse_pair)]
        right: (u64, u64),
    },
    /// Quantum dimension of the module with a given conformal weight.
    Qdim {
        /// Minimal model as `p,q`.
        #[arg(long, value_parser = parse_pair)]
        model: (u64, u64),
        /// Conformal weight as a rational, such as `31/16`.
        #[arg(long)]
        h: String,
    },
    /// Solve the multiplicity system for a case.
    Solve {
        #[arg(long, value_enum)]
        case: Case,
        /// Inclusive upper bound for unseeded multiplicities.
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
        /// Pin a variable, as `NAME=VALUE`.  Repeatable.
        #[arg(long, value_parser = parse_force)]
        force: Vec<(String, u64)>,
    },
    /// Run the full decomposition pipeline and report each stage.
    Verify {
        #[arg(long, value_enum)]
        case: Case,
        /// Inclusive upper bound for unseeded multiplicities.
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
    },
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated integers, got {s:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad integer {a:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad integer {b:?}"))?;
    Ok((a, b))
}

fn parse_force(s: &str) -> Result<(String, u64), String> {
    let (var, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got {s:?}"))?;
    let value = value
        .trim()
        .parse()
        .map_err(|_| format!("bad value {value:?}"))?;
    Ok((var.trim().to_string(), value))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        eprintln!("error: --tol must be a positive finite number");
        return ExitCode::from(2);
    }
    if cli.precision < 64 {
        eprintln!("error: --precision must be at least 64 bits");
        return ExitCode::from(2);
    }
    let config = Config {
        precision: cli.precision,
        tol: cli.tol,
    };

    let result = match &cli.command {
        Command::Catalog => commands::catalog_cmd(),
        Command::Table { case } => commands::table_cmd(case.class()),
        Command::Gram { case } => commands::gram_cmd(case.class()),
        Command::Eigen { case } => commands::eigen_cmd(case.class()),
        Command::Conformal { case } => commands::conformal_cmd(case.class()),
        Command::W4 { case } => commands::w4_cmd(case.class()),
        Command::Fusion { model, left, right } => commands::fusion_cmd(*model, *left, *right),
        Command::Qdim { model, h } => commands::qdim_cmd(*model, h, &config),
        Command::Solve { case, bound, force } => commands::solve_cmd(case.class(), *bound, force),
        Command::Verify { case, bound } => commands::verify_cmd(case.class(), *bound),
    };

    match result {
        Ok(output) => {
            if let Err(err) = report::emit(&output, cli.format, cli.out.as_deref()) {
                eprintln!("error: {err}");
                return ExitCode::from(2);
            }
            ExitCode::from(u8::from(output.failed))
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
