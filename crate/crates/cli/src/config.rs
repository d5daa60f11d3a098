//! Sweep configuration: defaults, flat `key = value` files and list syntax.

use std::path::PathBuf;

use serde::Serialize;

use crate::args::Format;
use crate::error::CliError;

pub const DEFAULT_N: [usize; 4] = [5, 11, 25, 101];
pub const DEFAULT_PAIRS: [(f64, f64); 5] = [(1.0, 1.0), (2.0, 1.0), (1.0, 2.0), (3.0, 2.0), (0.5, 0.5)];
pub const DEFAULT_RHO: [f64; 7] = [0.3, 0.5, 1.0, 1.5, 2.0, 3.0, 3.7];
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub distributions: Vec<String>,
    pub n_values: Vec<usize>,
    pub exponent_pairs: Vec<(f64, f64)>,
    pub mc_reps: usize,
    pub seed: u64,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub c_scale: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            distributions: ordmoment::ZOO_NAMES.iter().map(|s| s.to_string()).collect(),
            n_values: DEFAULT_N.to_vec(),
            exponent_pairs: DEFAULT_PAIRS.to_vec(),
            mc_reps: 0,
            seed: DEFAULT_SEED,
            output_path: None,
            format: Format::Csv,
            c_scale: 1.0,
        }
    }
}

impl Serialize for Format {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl SweepConfig {
    /// Applies the entries of a config file on top of `self`.
    pub fn apply_file(&mut self, text: &str) -> Result<(), CliError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", lineno + 1)))?;
            let value = value.trim();
            let at = |e: CliError| CliError::Usage(format!("config line {}: {e}", lineno + 1));
            match key.trim() {
                "distributions" => self.distributions = parse_names(value),
                "n_values" => self.n_values = parse_n_list(value).map_err(at)?,
                "exponent_pairs" => self.exponent_pairs = parse_pairs(value).map_err(at)?,
                "mc_reps" => self.mc_reps = parse_scalar(value, "mc_reps").map_err(at)?,
                "seed" => self.seed = parse_scalar(value, "seed").map_err(at)?,
                "output" => self.output_path = Some(PathBuf::from(value)),
                "format" => {
                    self.format = match value {
                        "csv" => Format::Csv,
                        "json" => Format::Json,
                        other => return Err(at(CliError::Usage(format!("unknown format `{other}`")))),
                    }
                }
                other => return Err(at(CliError::Usage(format!("unknown key `{other}`")))),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.distributions.is_empty() {
            return Err(CliError::Usage("distribution list is empty".into()));
        }
        if self.n_values.is_empty() {
            return Err(CliError::Usage("n list is empty".into()));
        }
        if self.exponent_pairs.is_empty() {
            return Err(CliError::Usage("exponent pair list is empty".into()));
        }
        if self.mc_reps == 1 {
            return Err(CliError::Usage("mc_reps must be 0 or at least 2".into()));
        }
        if !(self.c_scale > 0.0 && self.c_scale.is_finite()) {
            return Err(CliError::Usage(format!(
                "c_scale must be positive, got {}",
                self.c_scale
            )));
        }
        Ok(())
    }
}

fn parse_scalar<T: std::str::FromStr>(value: &str, what: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid {what} `{value}`")))
}

pub fn parse_names(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// `5, 11, 20..25` → `[5, 11, 20, 21, 22, 23, 24, 25]`.
pub fn parse_n_list(value: &str) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for item in parse_names(value) {
        if let Some((a, b)) = item.split_once("..") {
            let a: usize = parse_scalar(a.trim(), "n")?;
            let b: usize = parse_scalar(b.trim(), "n")?;
            if a > b {
                return Err(CliError::Usage(format!("empty range `{item}`")));
            }
            out.extend(a..=b);
        } else {
            out.push(parse_scalar(&item, "n")?);
        }
    }
    if out.contains(&0) {
        return Err(CliError::Usage("n must be positive".into()));
    }
    Ok(out)
}

pub fn parse_reals(value: &str, what: &str) -> Result<Vec<f64>, CliError> {
    parse_names(value)
        .iter()
        .map(|s| {
            let x: f64 = parse_scalar(s, what)?;
            if x > 0.0 && x.is_finite() {
                Ok(x)
            } else {
                Err(CliError::Usage(format!("{what} must be positive, got `{s}`")))
            }
        })
        .collect()
}

/// `1:1, 2:0.5` → `[(1, 1), (2, 0.5)]`.
pub fn parse_pairs(value: &str) -> Result<Vec<(f64, f64)>, CliError> {
    parse_names(value)
        .iter()
        .map(|item| {
            let (k, d) = item
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("pair `{item}` is not of the form k:delta")))?;
            let k = parse_reals(k, "k")?;
            let d = parse_reals(d, "delta")?;
            match (k.as_slice(), d.as_slice()) {
                ([k], [d]) => Ok((*k, *d)),
                _ => Err(CliError::Usage(format!("pair `{item}` is not of the form k:delta"))),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_n_list("5, 11,3..5").unwrap(), vec![5, 11, 3, 4, 5]);
        assert!(parse_n_list("0").is_err());
        assert!(parse_n_list("6..5").is_err());
        assert_eq!(parse_pairs("1:1, 0.5:0.25").unwrap(), vec![(1.0, 1.0), (0.5, 0.25)]);
        assert!(parse_pairs("1").is_err());
        assert!(parse_pairs("1:-2").is_err());
    }

    #[test]
    fn config_file_overrides_defaults() {
        let mut c = SweepConfig::default();
        c.apply_file("# sweep\ndistributions = uniform, normal\nn_values = 5..7\nseed = 9 # trailing\nformat=json\n")
            .unwrap();
        assert_eq!(c.distributions, vec!["uniform", "normal"]);
        assert_eq!(c.n_values, vec![5, 6, 7]);
        assert_eq!(c.seed, 9);
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.exponent_pairs, DEFAULT_PAIRS.to_vec());
        assert!(c.apply_file("bogus = 1").is_err());
        assert!(c.apply_file("seed").is_err());
    }

    #[test]
    fn empty_distribution_list_is_rejected() {
        let mut c = SweepConfig::default();
        c.apply_file("distributions =").unwrap();
        assert!(c.validate().is_err());
    }
}
