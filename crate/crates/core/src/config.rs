//! Plain-text experiment configuration.
//!
//! One `key = value` per line; `#` starts a comment. `symbol` may repeat,
//! list-valued keys take comma-separated items.
//!
//! ```text
//! symbol = automorphism a=0.5+0i
//! symbol = dilation s=0.9
//! alpha = 0.5, 1, 2
//! estimators = E1, E2, E3
//! radial_levels = 40
//! ladder_N = 2048
//! format = csv
//! output = report.csv
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::disk::SamplingScheme;
use crate::error::{Error, Result};
use crate::symbol::SymbolSpec;

/// Estimators an experiment can request.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Estimator {
    E1,
    E2,
    E3,
    BoundedSup,
    PowerBoundedness,
    Margin,
    Sandwich,
}

impl Estimator {
    pub const ALL: [Estimator; 7] = [
        Estimator::E1,
        Estimator::E2,
        Estimator::E3,
        Estimator::BoundedSup,
        Estimator::PowerBoundedness,
        Estimator::Margin,
        Estimator::Sandwich,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Estimator::E1 => "E1",
            Estimator::E2 => "E2",
            Estimator::E3 => "E3",
            Estimator::BoundedSup => "bounded_sup",
            Estimator::PowerBoundedness => "power_boundedness",
            Estimator::Margin => "margin",
            Estimator::Sandwich => "sandwich",
        }
    }
}

impl FromStr for Estimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Estimator::ALL
            .into_iter()
            .find(|e| e.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown estimator '{}'", s.trim())))
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse(format!("unknown format '{other}'"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// A batch of estimator runs over symbols and exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub symbols: Vec<SymbolSpec>,
    pub alphas: Vec<f64>,
    pub estimators: Vec<Estimator>,
    pub scheme: SamplingScheme,
    pub ladder_n: u32,
    /// Shells used by E2.
    pub boundary_shells: u32,
    /// Number of threshold levels `s_j = 1 - 2^-j` used by E1.
    pub threshold_levels: u32,
    /// Length of the `L_n` schedule used by the sandwich.
    pub approximant_n: u32,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            symbols: Vec::new(),
            alphas: Vec::new(),
            estimators: Vec::new(),
            scheme: SamplingScheme::default(),
            ladder_n: 2048,
            boundary_shells: 40,
            threshold_levels: 20,
            approximant_n: 16,
            output_path: None,
            format: Format::Csv,
        }
    }
}

fn list<T, E: fmt::Display>(value: &str, parse: impl Fn(&str) -> std::result::Result<T, E>) -> std::result::Result<Vec<T>, String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse(s).map_err(|e| e.to_string()))
        .collect()
}

fn number<T: FromStr>(value: &str) -> std::result::Result<T, String> {
    value.parse::<T>().map_err(|_| format!("bad number '{value}'"))
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        let mut last_line = 0;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fail = |message: String| Error::Config { line, message };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| fail(format!("expected 'key = value', got '{content}'")))?;
            let (key, value) = (key.trim(), value.trim());
            let r: std::result::Result<(), String> = (|| {
                match key {
                    "symbol" => cfg.symbols.push(value.parse::<SymbolSpec>().map_err(|e| e.to_string())?),
                    "alpha" | "alphas" => cfg.alphas.extend(list(value, number::<f64>)?),
                    "estimators" => cfg.estimators.extend(list(value, Estimator::from_str)?),
                    "radial_levels" => cfg.scheme.radial_levels = number(value)?,
                    "angular_base" => cfg.scheme.angular_base = number(value)?,
                    "angular_growth" => cfg.scheme.angular_growth = number(value)?,
                    "refinement_rounds" => cfg.scheme.refinement_rounds = number(value)?,
                    "seed" => cfg.scheme.seed = number(value)?,
                    "jitter" => cfg.scheme.jitter = number(value)?,
                    "point_cap" => cfg.scheme.point_cap = number(value)?,
                    "ladder_N" | "ladder_n" => cfg.ladder_n = number(value)?,
                    "boundary_shells" => cfg.boundary_shells = number(value)?,
                    "threshold_levels" => cfg.threshold_levels = number(value)?,
                    "approximant_n" => cfg.approximant_n = number(value)?,
                    "output" | "output_path" => cfg.output_path = Some(PathBuf::from(value)),
                    "format" => cfg.format = value.parse().map_err(|e: Error| e.to_string())?,
                    other => return Err(format!("unknown key '{other}'")),
                }
                Ok(())
            })();
            r.map_err(fail)?;
        }
        cfg.estimators.sort();
        cfg.estimators.dedup();
        cfg.validate().map_err(|message| Error::Config { line: last_line, message })?;
        Ok(cfg)
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.symbols.is_empty() {
            return Err("at least one symbol is required".into());
        }
        if self.alphas.is_empty() {
            return Err("at least one alpha is required".into());
        }
        if let Some(a) = self.alphas.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
            return Err(format!("alpha must be positive, got {a}"));
        }
        if self.estimators.is_empty() {
            return Err("at least one estimator is required".into());
        }
        self.scheme.validate().map_err(|e| e.to_string())?;
        if self.ladder_n < 16 {
            return Err(format!("ladder_N must be at least 16, got {}", self.ladder_n));
        }
        if !(5..=52).contains(&self.boundary_shells) {
            return Err(format!("boundary_shells must be in 5..=52, got {}", self.boundary_shells));
        }
        if !(1..=52).contains(&self.threshold_levels) {
            return Err(format!("threshold_levels must be in 1..=52, got {}", self.threshold_levels));
        }
        if !(1..=28).contains(&self.approximant_n) {
            return Err(format!("approximant_n must be in 1..=28, got {}", self.approximant_n));
        }
        Ok(())
    }

    /// Canonical `key = value` echo of the configuration.
    pub fn echo(&self) -> Vec<(String, String)> {
        let join = |v: Vec<String>| v.join(", ");
        let mut out: Vec<(String, String)> = self.symbols.iter().map(|s| ("symbol".into(), s.to_string())).collect();
        out.push(("alpha".into(), join(self.alphas.iter().map(|a| a.to_string()).collect())));
        out.push(("estimators".into(), join(self.estimators.iter().map(|e| e.to_string()).collect())));
        let s = &self.scheme;
        out.push(("radial_levels".into(), s.radial_levels.to_string()));
        out.push(("angular_base".into(), s.angular_base.to_string()));
        out.push(("angular_growth".into(), s.angular_growth.to_string()));
        out.push(("refinement_rounds".into(), s.refinement_rounds.to_string()));
        out.push(("seed".into(), s.seed.to_string()));
        out.push(("jitter".into(), s.jitter.to_string()));
        out.push(("point_cap".into(), s.point_cap.to_string()));
        out.push(("ladder_N".into(), self.ladder_n.to_string()));
        out.push(("boundary_shells".into(), self.boundary_shells.to_string()));
        out.push(("threshold_levels".into(), self.threshold_levels.to_string()));
        out.push(("approximant_n".into(), self.approximant_n.to_string()));
        out.push(("format".into(), self.format.to_string()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# regression run
symbol = automorphism a=0.5+0i
symbol = dilation s=0.9   # compact case
alpha = 0.5, 1
estimators = E2, E1, e1
radial_levels = 30
ladder_N = 512
format = json
output = out.json
";

    #[test]
    fn parses_sample() {
        let c = ExperimentConfig::parse(SAMPLE).unwrap();
        assert_eq!(c.symbols.len(), 2);
        assert_eq!(c.alphas, vec![0.5, 1.0]);
        assert_eq!(c.estimators, vec![Estimator::E1, Estimator::E2]);
        assert_eq!(c.scheme.radial_levels, 30);
        assert_eq!(c.ladder_n, 512);
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.output_path, Some(PathBuf::from("out.json")));
    }

    #[test]
    fn reports_line_numbers() {
        let bad = "symbol = identity\nalpha = 1\nestimators = E9\n";
        assert_eq!(ExperimentConfig::parse(bad).unwrap_err(), Error::Config { line: 3, message: "parse error: unknown estimator 'E9'".into() });
        let bad = "symbol = identity\nwhat\n";
        assert!(matches!(ExperimentConfig::parse(bad), Err(Error::Config { line: 2, .. })));
        let bad = "symbol = identity\nalpha = -1\nestimators = E1\n";
        assert!(matches!(ExperimentConfig::parse(bad), Err(Error::Config { .. })));
        assert!(ExperimentConfig::parse("alpha = 1\nestimators = E1\n").is_err());
    }

    #[test]
    fn echo_round_trips() {
        let c = ExperimentConfig::parse(SAMPLE).unwrap();
        let text: String = c.echo().iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        let mut again = ExperimentConfig::parse(&text).unwrap();
        again.output_path = c.output_path.clone();
        assert_eq!(again, c);
    }
}
