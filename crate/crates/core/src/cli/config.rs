//! Flat `key = value` experiment configuration.

use std::fmt;
use std::str::FromStr;

/// A parse failure located at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ConfigError {}

/// Every experiment parameter, with defaults matching the acceptance runs.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// If set, must name the subcommand being run.
    pub experiment: String,
    /// `all`, `hermite`, `laguerre`, `psi` or `jacobi`.
    pub basis: String,
    /// `all` or a catalog name such as `S^2`, `RP^3`, `CP^2`, `HP^2`, `CaP^2`.
    pub space: String,
    pub n: usize,
    pub k_max: usize,
    pub jacobi_max: usize,
    pub transfer_max: usize,
    pub moment_max: usize,
    pub grid_points: usize,
    pub samples: usize,
    /// `p` in `θ(t) = (1 + t)^{-p}`.
    pub theta_power: f64,
    pub factors: usize,
    pub delta: f64,
    pub bump_radius: f64,
    pub seed: u64,
    pub out: String,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment: String::new(),
            basis: "all".into(),
            space: "all".into(),
            n: 2,
            k_max: 128,
            jacobi_max: 64,
            transfer_max: 256,
            moment_max: 20,
            grid_points: 512,
            samples: 50,
            theta_power: 0.5,
            factors: 12,
            delta: 0.5,
            bump_radius: 0.25,
            seed: 0,
            out: ".".into(),
        }
    }
}

const KEYS: [&str; 16] = [
    "basis",
    "bump_radius",
    "delta",
    "experiment",
    "factors",
    "grid_points",
    "jacobi_max",
    "k_max",
    "moment_max",
    "n",
    "out",
    "samples",
    "seed",
    "space",
    "theta_power",
    "transfer_max",
];

fn parse_value<T: FromStr>(raw: &str, line: usize, column: usize, key: &str) -> Result<T, ConfigError> {
    raw.parse().map_err(|_| ConfigError {
        line,
        column,
        message: format!("invalid value {raw:?} for {key}"),
    })
}

impl ExperimentConfig {
    /// Parses `text`; later keys may not repeat earlier ones.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        let mut seen: Vec<String> = Vec::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw_line.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let key_col = content.len() - content.trim_start().len() + 1;
            let Some(eq) = content.find('=') else {
                return Err(ConfigError { line, column: key_col, message: "expected `key = value`".into() });
            };
            let key = content[..eq].trim();
            if key.is_empty() {
                return Err(ConfigError { line, column: key_col, message: "missing key".into() });
            }
            if !KEYS.contains(&key) {
                return Err(ConfigError { line, column: key_col, message: format!("unknown key {key:?}") });
            }
            if seen.iter().any(|k| k == key) {
                return Err(ConfigError { line, column: key_col, message: format!("duplicate key {key:?}") });
            }
            seen.push(key.to_string());
            let rest = &content[eq + 1..];
            let value = rest.trim();
            let value_col = eq + 2 + (rest.len() - rest.trim_start().len());
            cfg.set(key, value, line, value_col)?;
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str, line: usize, column: usize) -> Result<(), ConfigError> {
        let out_of_range = |what: &str| ConfigError { line, column, message: format!("{key} must be {what}") };
        match key {
            "experiment" => self.experiment = value.to_string(),
            "basis" => {
                if !["all", "hermite", "laguerre", "psi", "jacobi"].contains(&value) {
                    return Err(out_of_range("one of all, hermite, laguerre, psi, jacobi"));
                }
                self.basis = value.to_string()
            }
            "space" => self.space = value.to_string(),
            "out" => self.out = value.to_string(),
            "k_max" => self.k_max = parse_value(value, line, column, key)?,
            "jacobi_max" => self.jacobi_max = parse_value(value, line, column, key)?,
            "transfer_max" => self.transfer_max = parse_value(value, line, column, key)?,
            "moment_max" => self.moment_max = parse_value(value, line, column, key)?,
            "seed" => self.seed = parse_value(value, line, column, key)?,
            "n" | "samples" | "factors" | "grid_points" => {
                let v: usize = parse_value(value, line, column, key)?;
                let min = if key == "grid_points" { 2 } else { 1 };
                if v < min {
                    return Err(out_of_range(&format!("at least {min}")));
                }
                match key {
                    "n" => self.n = v,
                    "samples" => self.samples = v,
                    "factors" => self.factors = v,
                    _ => self.grid_points = v,
                }
            }
            "theta_power" | "delta" | "bump_radius" => {
                let v: f64 = parse_value(value, line, column, key)?;
                if !(v.is_finite() && v > 0.0) {
                    return Err(out_of_range("positive"));
                }
                match key {
                    "theta_power" => self.theta_power = v,
                    "delta" => self.delta = v,
                    _ => self.bump_radius = v,
                }
            }
            _ => unreachable!("keys are checked before assignment"),
        }
        Ok(())
    }

    /// Sorted `key = value` lines; parsing this text gives back `self`.
    pub fn canonical(&self) -> String {
        let mut out = String::new();
        for key in KEYS {
            let value = match key {
                "basis" => self.basis.clone(),
                "bump_radius" => format!("{:?}", self.bump_radius),
                "delta" => format!("{:?}", self.delta),
                "experiment" => self.experiment.clone(),
                "factors" => self.factors.to_string(),
                "grid_points" => self.grid_points.to_string(),
                "jacobi_max" => self.jacobi_max.to_string(),
                "k_max" => self.k_max.to_string(),
                "moment_max" => self.moment_max.to_string(),
                "n" => self.n.to_string(),
                "out" => self.out.clone(),
                "samples" => self.samples.to_string(),
                "seed" => self.seed.to_string(),
                "space" => self.space.clone(),
                "theta_power" => format!("{:?}", self.theta_power),
                "transfer_max" => self.transfer_max.to_string(),
                _ => unreachable!(),
            };
            out.push_str(key);
            out.push_str(" = ");
            out.push_str(&value);
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let cfg = ExperimentConfig::default();
        assert_eq!(ExperimentConfig::parse(&cfg.canonical()).unwrap(), cfg);
    }

    #[test]
    fn comments_and_blank_lines() {
        let cfg = ExperimentConfig::parse("# header\n\n k_max = 40 # trailing\nspace=CP^2\n").unwrap();
        assert_eq!(cfg.k_max, 40);
        assert_eq!(cfg.space, "CP^2");
    }

    #[test]
    fn unknown_key_location() {
        let err = ExperimentConfig::parse("n = 2\n  colour = red\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
    }

    #[test]
    fn bad_value_location() {
        let err = ExperimentConfig::parse("k_max =  lots\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 10));
    }

    #[test]
    fn duplicate_and_missing_equals() {
        assert!(ExperimentConfig::parse("n = 1\nn = 2\n").is_err());
        assert!(ExperimentConfig::parse("n 2\n").is_err());
    }
}
