//! Line-oriented `key = value` run configuration.
//!
//! ```text
//! # equal photonic and electronic loss
//! kappa_c = 5e-3
//! kappa   = 1e-2
//! g       = 0.05
//! gamma   = 1e-2
//! mode    = chart
//! ```
//!
//! Frequencies and rates are in units of `omega_r`. When `omega_r` is given
//! explicitly every frequency-valued key is divided by it, so absolute values
//! (e.g. in GHz) can be entered directly and outputs come back normalized.
//! A repeated key overrides the earlier line.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use jcspec_core::SystemParams;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("omega_q = {omega_q} and delta = {delta} disagree (omega_r = 1)")]
    ConflictingKeys { omega_q: f64, delta: f64 },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Spectrum,
    Chart,
    Modes,
    Weak,
    Fit,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Spectrum => "spectrum",
            Mode::Chart => "chart",
            Mode::Modes => "modes",
            Mode::Weak => "weak",
            Mode::Fit => "fit",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "spectrum" => Mode::Spectrum,
            "chart" => Mode::Chart,
            "modes" => Mode::Modes,
            "weak" => Mode::Weak,
            "fit" => Mode::Fit,
            other => return Err(format!("unknown mode `{other}`")),
        })
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRange {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl GridRange {
    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.points - 1) as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    /// Absent only in fit mode, which needs no physical model.
    pub params: Option<SystemParams>,
    pub omega: GridRange,
    /// Whether the omega range was given rather than defaulted.
    pub omega_explicit: bool,
    pub delta: GridRange,
    pub output: Option<PathBuf>,
    /// Trace to fit, `omega,T` CSV.
    pub input: Option<PathBuf>,
}

const KEYS: &[&str] = &[
    "omega_r", "omega_q", "delta", "kappa_c", "kappa", "g", "gamma", "omega_min", "omega_max",
    "omega_points", "delta_min", "delta_max", "delta_points", "mode", "output", "input",
];

const DEFAULT_OMEGA: GridRange = GridRange { min: 0.8, max: 1.2, points: 2001 };
const DEFAULT_DELTA: GridRange = GridRange { min: -0.3, max: 0.3, points: 61 };

#[derive(Debug, Clone, PartialEq)]
struct Entry {
    /// Zero for command-line overrides.
    line: usize,
    value: String,
}

/// Raw key/value pairs, validated for syntax and key names only.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigEntries {
    entries: BTreeMap<&'static str, Entry>,
}

pub fn parse_entries(text: &str) -> Result<ConfigEntries, ConfigError> {
    let mut entries = ConfigEntries::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        entries.insert(line, i + 1)?;
    }
    Ok(entries)
}

/// Parses a complete configuration; the text itself must name the mode.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    parse_entries(text)?.resolve(None)
}

impl ConfigEntries {
    /// Applies a `key=value` override from the command line.
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), ConfigError> {
        self.insert(assignment.trim(), 0)
    }

    fn insert(&mut self, assignment: &str, line: usize) -> Result<(), ConfigError> {
        let err = |message: String| ConfigError::Parse { line, message };
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{assignment}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let key = KEYS
            .iter()
            .copied()
            .find(|k| *k == key)
            .ok_or_else(|| err(format!("unknown key `{key}`")))?;
        if value.is_empty() {
            return Err(err(format!("empty value for `{key}`")));
        }
        self.entries.insert(key, Entry { line, value: value.to_string() });
        Ok(())
    }

    fn raw(&self, key: &str) -> Option<&Entry> {
        self.entries.get(key)
    }

    fn number(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        let Some(e) = self.raw(key) else { return Ok(None) };
        let v: f64 = e.value.parse().map_err(|_| ConfigError::Parse {
            line: e.line,
            message: format!("`{key}` expects a number, got `{}`", e.value),
        })?;
        if !v.is_finite() {
            return Err(ConfigError::Parse { line: e.line, message: format!("`{key}` must be finite") });
        }
        Ok(Some(v))
    }

    fn count(&self, key: &str) -> Result<Option<usize>, ConfigError> {
        let Some(e) = self.raw(key) else { return Ok(None) };
        e.value.parse().map(Some).map_err(|_| ConfigError::Parse {
            line: e.line,
            message: format!("`{key}` expects a non-negative integer, got `{}`", e.value),
        })
    }

    /// Builds the run configuration. `mode` (from a subcommand) takes
    /// precedence over a `mode` key in the text.
    pub fn resolve(&self, mode: Option<Mode>) -> Result<RunConfig, ConfigError> {
        let mode = match mode {
            Some(m) => m,
            None => {
                let e = self.raw("mode").ok_or(ConfigError::MissingKey("mode"))?;
                e.value
                    .parse()
                    .map_err(|message| ConfigError::Parse { line: e.line, message })?
            }
        };

        let omega_r = match self.number("omega_r")? {
            Some(w) if w > 0.0 => w,
            Some(w) => return Err(ConfigError::Invalid(format!("omega_r must be positive, got {w}"))),
            None => 1.0,
        };
        // every frequency- or rate-valued key
        let scaled = |key: &'static str| -> Result<Option<f64>, ConfigError> {
            Ok(self.number(key)?.map(|v| v / omega_r))
        };

        let delta = match (scaled("omega_q")?, scaled("delta")?) {
            (Some(q), Some(d)) => {
                if (q - 1.0 - d).abs() > 1e-12 * q.abs().max(1.0) {
                    return Err(ConfigError::ConflictingKeys { omega_q: q, delta: d });
                }
                Some(d)
            }
            (Some(q), None) => Some(q - 1.0),
            (None, d) => d,
        };

        let params = if mode == Mode::Fit {
            None
        } else {
            let require = |key: &'static str| scaled(key)?.ok_or(ConfigError::MissingKey(key));
            let delta = match delta {
                Some(d) => d,
                None if mode == Mode::Spectrum => return Err(ConfigError::MissingKey("omega_q")),
                None => 0.0,
            };
            Some(SystemParams::new(
                1.0,
                1.0 + delta,
                require("kappa_c")?,
                require("kappa")?,
                require("g")?,
                require("gamma")?,
            ))
        };

        let omega_explicit = self.raw("omega_min").is_some() || self.raw("omega_max").is_some();
        let omega = GridRange {
            min: scaled("omega_min")?.unwrap_or(DEFAULT_OMEGA.min),
            max: scaled("omega_max")?.unwrap_or(DEFAULT_OMEGA.max),
            points: self.count("omega_points")?.unwrap_or(DEFAULT_OMEGA.points),
        };
        let delta_range = GridRange {
            min: scaled("delta_min")?.unwrap_or(DEFAULT_DELTA.min),
            max: scaled("delta_max")?.unwrap_or(DEFAULT_DELTA.max),
            points: self.count("delta_points")?.unwrap_or(DEFAULT_DELTA.points),
        };
        for (name, r) in [("omega", &omega), ("delta", &delta_range)] {
            if !(r.min < r.max) {
                return Err(ConfigError::Invalid(format!(
                    "{name} range is degenerate: [{}, {}]",
                    r.min, r.max
                )));
            }
            if r.points < 2 {
                return Err(ConfigError::Invalid(format!("{name}_points must be at least 2")));
            }
        }

        let path = |key| self.raw(key).map(|e| PathBuf::from(&e.value));
        let input = path("input");
        if mode == Mode::Fit && input.is_none() {
            return Err(ConfigError::MissingKey("input"));
        }

        Ok(RunConfig {
            mode,
            params,
            omega,
            omega_explicit,
            delta: delta_range,
            output: path("output"),
            input,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EQUAL_LOSS: &str = "kappa_c = 5e-3\nkappa = 1e-2\ng = 0.05\ngamma = 1e-2\nmode = chart";

    #[test]
    fn equal_loss_chart() {
        let c = parse_config(EQUAL_LOSS).unwrap();
        assert_eq!(c.mode, Mode::Chart);
        assert_eq!(c.params, Some(SystemParams::equal_loss()));
        assert_eq!(c.omega, DEFAULT_OMEGA);
        assert!(!c.omega_explicit);
    }

    #[test]
    fn later_line_overrides() {
        let c = parse_config(&format!("{EQUAL_LOSS}\ngamma = 1e-4")).unwrap();
        assert_eq!(c.params, Some(SystemParams::high_coherence()));

        let mut e = parse_entries(EQUAL_LOSS).unwrap();
        e.apply_override("g=0.02").unwrap();
        e.apply_override("gamma = 0.2").unwrap();
        assert_eq!(e.resolve(Some(Mode::Weak)).unwrap().params, Some(SystemParams::weak_coupling()));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\nkappa_c = 5e-3 # port\nkappa=1e-2\n  g = 0.05\ngamma = 1e-2\ndelta = 0.1\nmode = spectrum\n";
        let c = parse_config(text).unwrap();
        assert!((c.params.unwrap().delta() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn absolute_units_are_normalized() {
        let text = "omega_r = 5\nomega_q = 5.5\nkappa_c = 0.025\nkappa = 0.05\ng = 0.25\ngamma = 0.05\n\
                    omega_min = 4\nomega_max = 6\nmode = spectrum";
        let c = parse_config(text).unwrap();
        let p = c.params.unwrap();
        assert_eq!(p.omega_r, 1.0);
        assert!((p.delta() - 0.1).abs() < 1e-15);
        assert!((p.kappa_c - 5e-3).abs() < 1e-18);
        assert!((p.g - 0.05).abs() < 1e-17);
        assert!((c.omega.min - 0.8).abs() < 1e-15 && (c.omega.max - 1.2).abs() < 1e-15);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_config("kappa_c = 5e-3\nfoo = 1\n").unwrap_err();
        assert_eq!(e, ConfigError::Parse { line: 2, message: "unknown key `foo`".into() });

        let e = parse_config("kappa_c = 5e-3\nkappa = 1e-2\ng 0.05\n").unwrap_err();
        assert!(matches!(e, ConfigError::Parse { line: 3, .. }));

        let e = parse_config("kappa_c = 5e-3\nkappa = abc\ng = 0.05\ngamma = 1\nmode = chart").unwrap_err();
        assert!(matches!(e, ConfigError::Parse { line: 2, .. }));

        let e = parse_config("mode = sideways").unwrap_err();
        assert!(matches!(e, ConfigError::Parse { line: 1, .. }));
    }

    #[test]
    fn missing_and_conflicting() {
        assert_eq!(parse_config("kappa_c = 5e-3\nkappa = 1e-2\ng = 0.05\nmode = chart").unwrap_err(), ConfigError::MissingKey("gamma"));
        assert_eq!(parse_config("kappa_c = 5e-3").unwrap_err(), ConfigError::MissingKey("mode"));
        assert_eq!(parse_config(&EQUAL_LOSS.replace("chart", "spectrum")).unwrap_err(), ConfigError::MissingKey("omega_q"));
        assert_eq!(parse_config("mode = fit").unwrap_err(), ConfigError::MissingKey("input"));

        let e = parse_config(&format!("{EQUAL_LOSS}\nomega_q = 1.1\ndelta = 0.2")).unwrap_err();
        assert!(matches!(e, ConfigError::ConflictingKeys { .. }));
        assert!(parse_config(&format!("{EQUAL_LOSS}\nomega_q = 1.1\ndelta = 0.1")).is_ok());
    }

    #[test]
    fn degenerate_ranges() {
        let e = parse_config(&format!("{EQUAL_LOSS}\nomega_min = 1.1\nomega_max = 0.9")).unwrap_err();
        assert!(matches!(e, ConfigError::Invalid(_)));
        let e = parse_config(&format!("{EQUAL_LOSS}\ndelta_points = 1")).unwrap_err();
        assert!(matches!(e, ConfigError::Invalid(_)));
    }

    #[test]
    fn subcommand_mode_wins() {
        let c = parse_entries(EQUAL_LOSS).unwrap().resolve(Some(Mode::Modes)).unwrap();
        assert_eq!(c.mode, Mode::Modes);
    }
}
