use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use latticesum_cli::{run, Command};

/// Dipole-dipole lattice sums and exciton dispersion for stacked square
/// lattices.
#[derive(Parser)]
#[command(name = "latticesum", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// J′/J₀ against the angle between k and the dipole, for each θ.
    SweepPhi(Io),
    /// Stack eigenenergies (eV) along ka_values or over the k-grid.
    Dispersion(Io),
    /// Ewald vs direct-sum truncation error of the inter-plane D_zz.
    Convergence(Io),
    /// Stack eigenenergies in units of J₀ (needs n_planes ≥ 2).
    Stack(Io),
}

#[derive(Args)]
struct Io {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// CSV destination; defaults to the config's output_path, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, io) = match cli.command {
        Cmd::SweepPhi(io) => (Command::SweepPhi, io),
        Cmd::Dispersion(io) => (Command::Dispersion, io),
        Cmd::Convergence(io) => (Command::Convergence, io),
        Cmd::Stack(io) => (Command::Stack, io),
    };
    match run(command, &io.config, io.out.as_deref()) {
        Ok((_, summary)) => {
            if let Some(line) = summary {
                eprintln!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("latticesum: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
