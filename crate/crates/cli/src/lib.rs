//! Command-line front end: configuration, tabular output and the four
//! subcommands.

// `!(x > 0.0)` rejects NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod table;

use std::fmt;

use config::{Cli, Command, FileConfig, RunConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Invalid flags, config file or parameter ranges.
    Config(String),
    /// Numerical failure or a grid too coarse for the requested quantity.
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<subvortex_core::Error> for CliError {
    fn from(e: subvortex_core::Error) -> Self {
        use subvortex_core::Error as E;
        match e {
            E::Range(_) | E::Dimension { .. } | E::Size { .. } => CliError::Config(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

/// Resolve the configuration and run one subcommand.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.flags.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let cfg = RunConfig::resolve(cli.command, &cli.flags, &file);
    if cli.flags.print_config {
        print!("{}", cfg.to_toml());
        return Ok(());
    }
    cfg.validate()?;
    match cli.command {
        Command::SweepEntanglement => commands::cmd_sweep_entanglement(&cfg),
        Command::Wavefunction => commands::cmd_wavefunction(&cfg),
        Command::Herald => commands::cmd_herald(&cfg),
        Command::ReproduceFig2 => commands::cmd_reproduce_fig2(&cfg),
    }
}
