//! Experiment runner behind the `spectral-ingham` binary.
//!
//! Each experiment computes a set of named checks and CSV tables. Tables are
//! written as `<out>/<table>.csv`; floats use the shortest round-trip decimal.

mod config;
mod experiments;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

pub use config::{ConfigError, ExperimentConfig};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "SPECTRAL_INGHAM_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Orthocheck,
    Parseval,
    ChernoffDemo,
    Moments,
    SpacesVerify,
    KernelBounds,
    InghamBuild,
    JacobiTransfer,
    SplhermiteDecay,
    HermiteTransfer,
    FourierDecay,
}

impl Experiment {
    pub const ALL: [Experiment; 11] = [
        Experiment::Orthocheck,
        Experiment::Parseval,
        Experiment::ChernoffDemo,
        Experiment::Moments,
        Experiment::SpacesVerify,
        Experiment::KernelBounds,
        Experiment::InghamBuild,
        Experiment::JacobiTransfer,
        Experiment::SplhermiteDecay,
        Experiment::HermiteTransfer,
        Experiment::FourierDecay,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Orthocheck => "orthocheck",
            Experiment::Parseval => "parseval",
            Experiment::ChernoffDemo => "chernoff-demo",
            Experiment::Moments => "moments",
            Experiment::SpacesVerify => "spaces-verify",
            Experiment::KernelBounds => "kernel-bounds",
            Experiment::InghamBuild => "ingham-build",
            Experiment::JacobiTransfer => "jacobi-transfer",
            Experiment::SplhermiteDecay => "splhermite-decay",
            Experiment::HermiteTransfer => "hermite-transfer",
            Experiment::FourierDecay => "fourier-decay",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.name() == name)
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One CSV artifact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub csv: String,
}

impl Table {
    pub fn new<R, S>(name: &str, header: &[&str], rows: R) -> crate::Result<Self>
    where
        R: IntoIterator<Item = Vec<S>>,
        S: AsRef<[u8]>,
    {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| crate::Error::Numerical(format!("csv write failed: {e}"));
        w.write_record(header).map_err(io)?;
        for row in rows {
            w.write_record(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| crate::Error::Numerical(format!("csv flush failed: {e}")))?;
        Ok(Self { name: name.to_string(), csv: String::from_utf8(bytes).expect("csv output is UTF-8") })
    }
}

/// A named pass/fail assertion.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }

    /// `value ≤ limit`.
    pub fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self::new(name, value <= limit, format!("{value:e} <= {limit:e}"))
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outcome {
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Io(PathBuf, std::io::Error),
    Numerical(crate::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "config error at {e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Numerical(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Numerical(crate::Error::Parameter(_)) => 2,
            _ => 1,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Numerical(e)
    }
}

/// Reads the config at `path` (defaults when `None`).
pub fn load_config(path: Option<&Path>) -> Result<ExperimentConfig, CliError> {
    match path {
        None => Ok(ExperimentConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::Io(p.to_path_buf(), e))?;
            ExperimentConfig::parse(&text).map_err(CliError::Config)
        }
    }
}

/// Runs `experiment` without touching the filesystem.
pub fn execute(experiment: Experiment, cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    if !cfg.experiment.is_empty() && cfg.experiment != experiment.name() {
        return Err(CliError::Config(ConfigError {
            line: 0,
            column: 0,
            message: format!("config is for {:?}, not {experiment}", cfg.experiment),
        }));
    }
    Ok(experiments::run(experiment, cfg)?)
}

/// Writes every table plus `<experiment>.config` (the canonical config) to `dir`.
pub fn write_outcome(experiment: Experiment, cfg: &ExperimentConfig, outcome: &Outcome, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
    let mut written = Vec::with_capacity(outcome.tables.len() + 1);
    let config_path = dir.join(format!("{}.config", experiment.name()));
    fs::write(&config_path, cfg.canonical()).map_err(|e| CliError::Io(config_path.clone(), e))?;
    written.push(config_path);
    for t in &outcome.tables {
        let p = dir.join(format!("{}.csv", t.name));
        fs::write(&p, &t.csv).map_err(|e| CliError::Io(p.clone(), e))?;
        written.push(p);
    }
    Ok(written)
}
