//! `mrgrid`: enumeration, classification and construction campaigns for
//! codes on grid-like topologies.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod parse;

#[derive(Parser, Debug)]
#[command(name = "mrgrid", version, about = "Codes and erasure patterns on grid-like topologies")]
struct Cli {
    /// Worker threads; 1 runs sequentially, default uses all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List all regular patterns of maximal size.
    Enumerate {
        /// Topology `MxN:a,b,h`.
        #[arg(long)]
        topo: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every pattern of a census; writes a verdict CSV.
    Classify {
        #[arg(long)]
        topo: String,
        /// Field `p^d[:modulus-hex]`.
        #[arg(long, default_value = "2^13")]
        field: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Census JSON from `enumerate`; otherwise the cache or a fresh run.
        #[arg(long)]
        census: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and check kernel witnesses for random [5,3] MDS pairs.
    Counterexample {
        #[arg(long, default_value = "2^3")]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add global parities to a base MR code and verify the result.
    Construct {
        #[arg(long)]
        topo: String,
        /// `pmds` or a code JSON file.
        #[arg(long, default_value = "pmds")]
        base: String,
        /// Field of the base code.
        #[arg(long, default_value = "2^3")]
        field: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare maximal patterns of a tensor-product code with the topology.
    Tp {
        /// `MxN:a,b`; `a = m` or `b = n` gives the vacuous case.
        #[arg(long)]
        topo: String,
        #[arg(long, default_value = "2^8")]
        field: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use random component codes instead of a dual-MR certificate.
        #[arg(long)]
        random_instance: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift a pattern to a larger grid.
    Lift {
        /// Pattern JSON; the base counterexample if omitted.
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Base topology of the pattern.
        #[arg(long, default_value = "5x5:2,2,0")]
        topo: String,
        #[arg(long, value_enum, default_value_t = LiftMode::Extend)]
        mode: LiftMode,
        #[arg(long, default_value_t = 1)]
        delta: usize,
        #[arg(long, default_value_t = 1)]
        gamma: usize,
        /// Pad new rows and columns to reach maximal size (extend mode).
        #[arg(long)]
        pad: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LiftMode {
    Extend,
    Puncture,
}

fn run(cli: Cli) -> Result<bool> {
    let ctx = commands::Context::new(cli.jobs)?;
    ctx.install(|| match cli.command {
        Command::Enumerate { topo, out } => commands::enumerate(&ctx, &topo, out.as_deref()),
        Command::Classify {
            topo,
            field,
            trials,
            seed,
            census,
            out,
        } => commands::classify(&ctx, &topo, &field, trials, seed, census.as_deref(), out.as_deref()),
        Command::Counterexample {
            field,
            seed,
            pairs,
            out,
        } => commands::counterexample(&field, seed, pairs, out.as_deref()),
        Command::Construct {
            topo,
            base,
            field,
            trials,
            seed,
            out,
        } => commands::construct(&ctx, &topo, &base, &field, trials, seed, out.as_deref()),
        Command::Tp {
            topo,
            field,
            trials,
            seed,
            random_instance,
            out,
        } => commands::tp(&ctx, &topo, &field, trials, seed, random_instance, out.as_deref()),
        Command::Lift {
            pattern,
            topo,
            mode,
            delta,
            gamma,
            pad,
            out,
        } => commands::lift(
            pattern.as_deref(),
            &topo,
            mode == LiftMode::Puncture,
            delta,
            gamma,
            pad,
            out.as_deref(),
        ),
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
