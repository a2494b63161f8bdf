//! Run configuration: the surface/grading JSON plus suite selection.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use laxg2_core::sphere::{Configuration, GradingSpec, SurfaceSpec};
use laxg2_core::Error;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    G2,
    Jets,
    Tyurin,
    Grading,
    Cocycle,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::G2, Suite::Jets, Suite::Tyurin, Suite::Grading, Suite::Cocycle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::G2 => "g2",
            Suite::Jets => "jets",
            Suite::Tyurin => "tyurin",
            Suite::Grading => "grading",
            Suite::Cocycle => "cocycle",
        }
    }

    /// Comma separated list, duplicates removed, in canonical order.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>, ConfigError> {
        let mut out = s
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Suite>, _>>()?;
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(ConfigError::invalid("suites", "no suite selected"));
        }
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| ConfigError::invalid("suites", format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}, column {column}, field `{field}`: {message}")]
    Syntax {
        line: usize,
        column: usize,
        field: String,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Invalid { field: String, message: String },
}

impl ConfigError {
    pub fn invalid(field: &str, message: impl fmt::Display) -> Self {
        ConfigError::Invalid {
            field: field.to_string(),
            message: message.to_string(),
        }
    }
}

pub const DEFAULT_TRUNCATION: i32 = 3;
pub const DEFAULT_TRIALS: usize = 20;
pub const DEFAULT_WINDOW: (i32, i32) = (-3, 3);

fn default_truncation() -> i32 {
    DEFAULT_TRUNCATION
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    surface: SurfaceSpec,
    grading: GradingSpec,
    #[serde(rename = "T", default = "default_truncation")]
    truncation: i32,
    #[serde(default)]
    suites: Option<Vec<Suite>>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    trials: Option<usize>,
    #[serde(default)]
    window: Option<(i32, i32)>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub configuration: Configuration,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub trials: usize,
    pub truncation: i32,
    pub window: (i32, i32),
}

impl RunConfig {
    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: ConfigFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            let inner = e.into_inner();
            ConfigError::Syntax {
                line: inner.line(),
                column: inner.column(),
                field,
                message: strip_position(&inner.to_string()),
            }
        })?;
        let configuration = Configuration::new(file.surface, file.grading).map_err(|e| {
            let field = match e {
                Error::InvalidGrading(_) => "grading",
                _ => "surface",
            };
            ConfigError::invalid(field, e)
        })?;
        let cfg = RunConfig {
            configuration,
            suites: file.suites.unwrap_or_else(|| Suite::ALL.to_vec()),
            seed: file.seed.unwrap_or(0),
            trials: file.trials.unwrap_or(DEFAULT_TRIALS),
            truncation: file.truncation,
            window: file.window.unwrap_or(DEFAULT_WINDOW),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_configuration(configuration: Configuration) -> Self {
        RunConfig {
            configuration,
            suites: Suite::ALL.to_vec(),
            seed: 0,
            trials: DEFAULT_TRIALS,
            truncation: DEFAULT_TRUNCATION,
            window: DEFAULT_WINDOW,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(3..=8).contains(&self.truncation) {
            return Err(ConfigError::invalid("T", format!("{} is not in 3..=8", self.truncation)));
        }
        if self.trials == 0 {
            return Err(ConfigError::invalid("trials", "must be positive"));
        }
        let (lo, hi) = self.window;
        if lo > hi || lo < -6 || hi > 6 {
            return Err(ConfigError::invalid("window", format!("[{lo}, {hi}] must satisfy −6 ≤ lo ≤ hi ≤ 6")));
        }
        if self.suites.is_empty() {
            return Err(ConfigError::invalid("suites", "no suite selected"));
        }
        Ok(())
    }

    /// Seed of the random stream owned by one suite. Independent of which
    /// other suites are selected.
    pub fn suite_seed(&self, suite: Suite) -> u64 {
        let tag = suite.name().bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
        });
        self.seed ^ tag
    }

    pub fn echo(&self) -> serde_json::Value {
        serde_json::json!({
            "surface": self.configuration.surface(),
            "grading": self.configuration.grading(),
            "T": self.truncation,
            "suites": self.suites,
            "seed": self.seed,
            "trials": self.trials,
            "window": [self.window.0, self.window.1],
        })
    }
}

/// `serde_json` appends "at line L column C"; the position is reported
/// separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// `lo:hi`, either bound possibly negative.
pub fn parse_range(s: &str) -> Result<(i32, i32), ConfigError> {
    let bad = || ConfigError::invalid("mrange", format!("{s:?} is not of the form lo:hi"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let lo = a.trim().parse().map_err(|_| bad())?;
    let hi = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}
