//! Run configuration: command-line flags layered over an optional TOML file
//! layered over per-command defaults.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use subvortex_core::fock::{K_MAX, R_MAX};
use subvortex_core::heralding::HERALD_K_MAX;
use subvortex_core::quadrature::GRID_LIMIT;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "subvortex",
    version,
    about = "Entanglement and vortex structure of photon-subtracted squeezed vacuum"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Log-negativity and entanglement ratios over a range of r, one row per (k, r)
    SweepEntanglement,
    /// Quadrature wavefunction on a grid plus the winding number around a loop
    Wavefunction,
    /// Beam-splitter heralding probability and fidelity, one row per (k, rho2)
    Herald,
    /// Ratio curves for one to four subtracted photons and a discrepancy report
    ReproduceFig2,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::SweepEntanglement => "sweep-entanglement",
            Command::Wavefunction => "wavefunction",
            Command::Herald => "herald",
            Command::ReproduceFig2 => "reproduce-fig2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Flags shared by every subcommand. Unset flags fall through to the config
/// file and then to defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub r_start: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub r_stop: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub r_step: Option<f64>,
    /// Photon counts, comma separated (0 = squeezed vacuum)
    #[arg(long, global = true, value_delimiter = ',')]
    pub k: Option<Vec<usize>>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub grid_min: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub grid_max: Option<f64>,
    #[arg(long, global = true)]
    pub grid_points: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub loop_halfwidth: Option<f64>,
    /// Beam-splitter reflectances, comma separated
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub rho2: Option<Vec<f64>>,
    /// Output file (directory for reproduce-fig2); stdout when omitted
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// TOML file with the same keys as the flags
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Print the effective configuration as TOML and exit
    #[arg(long, global = true)]
    pub print_config: bool,
}

/// Keys accepted in a `--config` file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct FileConfig {
    pub r_start: Option<f64>,
    pub r_stop: Option<f64>,
    pub r_step: Option<f64>,
    pub k: Option<Vec<usize>>,
    pub theta: Option<f64>,
    pub tol: Option<f64>,
    pub grid_min: Option<f64>,
    pub grid_max: Option<f64>,
    pub grid_points: Option<usize>,
    pub loop_halfwidth: Option<f64>,
    pub rho2: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }
}

/// Fully resolved configuration of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct RunConfig {
    pub command: String,
    pub r_start: f64,
    pub r_stop: f64,
    pub r_step: f64,
    pub k: Vec<usize>,
    pub theta: f64,
    pub tol: f64,
    pub grid_min: f64,
    pub grid_max: f64,
    pub grid_points: usize,
    pub loop_halfwidth: f64,
    pub rho2: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    /// Defaults: sweeps cover r in [0, 3] in steps of 0.05; single-point
    /// commands (wavefunction, herald) use `r_start` as their r and default
    /// it to 0.5.
    pub fn defaults(command: Command) -> Self {
        let single_point = matches!(command, Command::Wavefunction | Command::Herald);
        Self {
            command: command.name().to_string(),
            r_start: if single_point { 0.5 } else { 0.0 },
            r_stop: 3.0,
            r_step: 0.05,
            k: match command {
                Command::ReproduceFig2 => vec![1, 2, 3, 4],
                _ => vec![1],
            },
            theta: 0.0,
            tol: 1e-12,
            grid_min: -4.0,
            grid_max: 4.0,
            grid_points: 161,
            loop_halfwidth: 1.0,
            rho2: vec![0.01],
            out: None,
            format: Format::Csv,
        }
    }

    pub fn resolve(command: Command, flags: &Flags, file: &FileConfig) -> Self {
        let d = Self::defaults(command);
        Self {
            command: d.command,
            r_start: flags.r_start.or(file.r_start).unwrap_or(d.r_start),
            r_stop: flags.r_stop.or(file.r_stop).unwrap_or(d.r_stop),
            r_step: flags.r_step.or(file.r_step).unwrap_or(d.r_step),
            k: flags.k.clone().or_else(|| file.k.clone()).unwrap_or(d.k),
            theta: flags.theta.or(file.theta).unwrap_or(d.theta),
            tol: flags.tol.or(file.tol).unwrap_or(d.tol),
            grid_min: flags.grid_min.or(file.grid_min).unwrap_or(d.grid_min),
            grid_max: flags.grid_max.or(file.grid_max).unwrap_or(d.grid_max),
            grid_points: flags.grid_points.or(file.grid_points).unwrap_or(d.grid_points),
            loop_halfwidth: flags.loop_halfwidth.or(file.loop_halfwidth).unwrap_or(d.loop_halfwidth),
            rho2: flags.rho2.clone().or_else(|| file.rho2.clone()).unwrap_or(d.rho2),
            out: flags.out.clone().or_else(|| file.out.clone()),
            format: flags.format.or(file.format).unwrap_or(d.format),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if !(self.r_step > 0.0) || !self.r_step.is_finite() {
            return bad(format!("r-step must be positive, got {}", self.r_step));
        }
        if !(self.r_start >= 0.0) || !(self.r_start <= self.r_stop) {
            return bad(format!(
                "need 0 <= r-start <= r-stop, got [{}, {}]",
                self.r_start, self.r_stop
            ));
        }
        if self.r_stop > R_MAX {
            return bad(format!("r-stop {} exceeds {R_MAX}", self.r_stop));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return bad(format!("tol must lie in (0, 1), got {}", self.tol));
        }
        if !self.theta.is_finite() {
            return bad(format!("theta must be finite, got {}", self.theta));
        }
        if self.k.is_empty() {
            return bad("k list is empty".into());
        }
        let k_cap = if self.command == Command::Herald.name() {
            HERALD_K_MAX
        } else {
            K_MAX
        };
        if let Some(k) = self.k.iter().find(|&&k| k > k_cap) {
            return bad(format!("k = {k} exceeds {k_cap}"));
        }
        if !(self.grid_min < self.grid_max) || self.grid_min < -GRID_LIMIT || self.grid_max > GRID_LIMIT {
            return bad(format!(
                "grid must satisfy -{GRID_LIMIT} <= grid-min < grid-max <= {GRID_LIMIT}, got [{}, {}]",
                self.grid_min, self.grid_max
            ));
        }
        if self.grid_points < 2 {
            return bad(format!("grid-points must be at least 2, got {}", self.grid_points));
        }
        if !(self.loop_halfwidth > 0.0) {
            return bad(format!("loop-halfwidth must be positive, got {}", self.loop_halfwidth));
        }
        if self.rho2.is_empty() {
            return bad("rho2 list is empty".into());
        }
        if let Some(x) = self.rho2.iter().find(|x| !(0.0..1.0).contains(*x)) {
            return bad(format!("rho2 = {x} must lie in [0, 1)"));
        }
        Ok(())
    }

    /// Sampled r values `r_start + i * r_step` up to `r_stop`, rounded to 12
    /// decimals so grid points print cleanly.
    pub fn r_values(&self) -> Vec<f64> {
        let count = ((self.r_stop - self.r_start) / self.r_step + 1e-9).floor() as usize;
        (0..=count)
            .map(|i| ((self.r_start + i as f64 * self.r_step) * 1e12).round() / 1e12)
            .collect()
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_override_defaults() {
        let flags = Flags {
            theta: Some(1.0),
            ..Default::default()
        };
        let file = FileConfig {
            theta: Some(2.0),
            tol: Some(1e-8),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(Command::SweepEntanglement, &flags, &file);
        assert_eq!(cfg.theta, 1.0);
        assert_eq!(cfg.tol, 1e-8);
        assert_eq!(cfg.r_stop, 3.0);
    }

    #[test]
    fn r_grid_includes_endpoint() {
        let cfg = RunConfig::defaults(Command::SweepEntanglement);
        let rs = cfg.r_values();
        assert_eq!(rs.len(), 61);
        assert_eq!(rs[3], 0.15);
        assert_eq!(*rs.last().unwrap(), 3.0);
    }

    #[test]
    fn validation_rejects_bad_values() {
        let base = RunConfig::defaults(Command::SweepEntanglement);
        for mutate in [
            (|c: &mut RunConfig| c.r_step = 0.0) as fn(&mut RunConfig),
            |c| c.r_start = 2.0 + c.r_stop,
            |c| c.tol = 1.0,
            |c| c.k = vec![9],
            |c| c.rho2 = vec![1.0],
            |c| c.grid_max = 9.0,
            |c| c.r_stop = 6.0,
        ] {
            let mut c = base.clone();
            mutate(&mut c);
            assert!(matches!(c.validate(), Err(CliError::Config(_))), "{c:?}");
        }
        assert!(base.validate().is_ok());
    }

    #[test]
    fn file_keys_are_kebab_case() {
        let cfg: FileConfig = toml::from_str("r-start = 0.5\nk = [1, 2]\nformat = \"json\"").unwrap();
        assert_eq!(cfg.r_start, Some(0.5));
        assert_eq!(cfg.k, Some(vec![1, 2]));
        assert_eq!(cfg.format, Some(Format::Json));
        assert!(toml::from_str::<FileConfig>("bogus = 1").is_err());
    }
}
