use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use oriented_cycles::commands::{
    cmd_check_witness, cmd_compare, cmd_decompose, cmd_gen, cmd_validate, CompareMode, CompareOptions,
    DecomposeOptions, GenOptions, Outcome,
};

/// Decompose and compare oriented cycles of linear mappings, exactly.
///
/// Exit codes: 0 ok/true, 1 false/not equivalent, 2 invalid input,
/// 3 internal invariant violation, 4 reduced to a non-similar operator pair.
#[derive(Parser)]
#[command(name = "oricycle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Iso,
    Topo,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a cycle file parses and every map has the right shape.
    Validate { path: PathBuf },
    /// Regular part, chain summands, stabilization exponent and a witness.
    Decompose {
        path: PathBuf,
        /// Write the full decomposition report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the canonical direct sum here.
        #[arg(long)]
        canonical_out: Option<PathBuf>,
        /// Write the witness from the canonical form to the input here.
        #[arg(long)]
        witness_out: Option<PathBuf>,
        /// Depth of the kernel-dimension table.
        #[arg(long)]
        jmax: Option<usize>,
        /// Cross-check the chains by brute-force peeling (small cycles only).
        #[arg(long)]
        verify: bool,
    },
    /// Decide isomorphism (iso) or reduce topological equivalence (topo).
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "iso")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Generate a random cycle with a known decomposition.
    Gen {
        #[arg(long)]
        t: usize,
        /// Comma-separated `end:length:multiplicity` triples.
        #[arg(long, default_value = "")]
        chains: String,
        #[arg(long, default_value_t = 0)]
        regular_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Q or Q(i).
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a witness transforms cycle A into cycle B.
    CheckWitness { a: PathBuf, b: PathBuf, witness: PathBuf },
}

fn main() -> ExitCode {
    let outcome: Outcome = match Cli::parse().command {
        Command::Validate { path } => cmd_validate(&path),
        Command::Decompose { path, out, canonical_out, witness_out, jmax, verify } => cmd_decompose(
            &path,
            &DecomposeOptions { jmax, out, canonical_out, witness_out, verify },
        ),
        Command::Compare { a, b, mode, out, witness_out } => {
            let mode = match mode {
                Mode::Iso => CompareMode::Iso,
                Mode::Topo => CompareMode::Topo,
            };
            cmd_compare(&a, &b, &CompareOptions { mode, out, witness_out })
        }
        Command::Gen { t, chains, regular_size, seed, field, out } => {
            cmd_gen(&GenOptions { t, chains, regular_size, seed, field, out })
        }
        Command::CheckWitness { a, b, witness } => cmd_check_witness(&a, &b, &witness),
    };
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
