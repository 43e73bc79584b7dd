//! Library side of the `latticesum` command: configuration, commands and CSV
//! output.

pub mod commands;
pub mod config;
pub mod error;

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

pub use config::{parse_config, RunConfig};
pub use error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    SweepPhi,
    Dispersion,
    Convergence,
    Stack,
}

/// Rendered command output.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub csv: Vec<u8>,
    /// One-line report for the terminal, if the command has one.
    pub summary: Option<String>,
}

/// Rows as CSV with a header line, `\n` terminators and shortest round-trip
/// floats.
pub fn write_csv<R: Serialize>(rows: &[R]) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("flat rows serialize into memory");
    }
    w.into_inner().expect("in-memory writer does not fail")
}

pub fn execute(command: Command, cfg: &RunConfig) -> Result<Output> {
    Ok(match command {
        Command::SweepPhi => Output { csv: write_csv(&commands::sweep_phi(cfg)?), summary: None },
        Command::Dispersion => Output { csv: write_csv(&commands::dispersion(cfg)?), summary: None },
        Command::Stack => Output { csv: write_csv(&commands::stack(cfg)?), summary: None },
        Command::Convergence => {
            let report = commands::convergence(cfg)?;
            Output { csv: write_csv(&report.rows), summary: Some(report.summary()) }
        }
    })
}

/// Loads the config at `config_path`, runs `command` and writes the CSV to
/// `out`, else the config's `output_path`, else standard output. Returns the
/// file written, if any, and the summary line.
pub fn run(command: Command, config_path: &Path, out: Option<&Path>) -> Result<(Option<PathBuf>, Option<String>)> {
    let text = fs::read_to_string(config_path).map_err(|source| CliError::Read { path: config_path.to_path_buf(), source })?;
    let cfg = parse_config(&text)?;
    let output = execute(command, &cfg)?;
    let target = out.map(Path::to_path_buf).or_else(|| cfg.output_path.as_ref().map(PathBuf::from));
    match &target {
        Some(path) => fs::write(path, &output.csv).map_err(|source| CliError::Write { path: path.clone(), source })?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&output.csv).map_err(|source| CliError::Write { path: "<stdout>".into(), source })?;
        }
    }
    Ok((target, output.summary))
}
