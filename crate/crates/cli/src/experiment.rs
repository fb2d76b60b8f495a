//! Experiment specifications: which algorithms run on which datasets at
//! which thresholds, how often, and with what overrides.
//!
//! Specs live in TOML files committed next to the data they drive:
//!
//! ```toml
//! datasets = ["data/breast_cancer.csv"]
//! algorithms = ["graank", "aco-graank"]
//! sigmas = [0.5, 0.7]
//! repeats = 3
//! seed_base = 42
//! id_column = false
//!
//! [overrides.aco-graank]
//! max_iter = 100
//! rho = 0.5
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize,
)]
pub enum Algorithm {
    #[serde(rename = "graank")]
    Graank,
    #[serde(rename = "paraminer")]
    Paraminer,
    #[serde(rename = "aco-graank")]
    AcoGraank,
    #[serde(rename = "aco-paraminer")]
    AcoParaminer,
    #[serde(rename = "ga")]
    Ga,
    #[serde(rename = "pso")]
    Pso,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Graank,
        Algorithm::Paraminer,
        Algorithm::AcoGraank,
        Algorithm::AcoParaminer,
        Algorithm::Ga,
        Algorithm::Pso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Graank => "graank",
            Algorithm::Paraminer => "paraminer",
            Algorithm::AcoGraank => "aco-graank",
            Algorithm::AcoParaminer => "aco-paraminer",
            Algorithm::Ga => "ga",
            Algorithm::Pso => "pso",
        }
    }

    /// True for the miners whose output depends on the seed.
    pub fn is_stochastic(self) -> bool {
        !matches!(self, Algorithm::Graank | Algorithm::Paraminer)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("unknown algorithm '{got}'; valid names: graank, paraminer, aco-graank, aco-paraminer, ga, pso")]
pub struct UnknownAlgorithm {
    pub got: String,
}

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| UnknownAlgorithm { got: s.to_owned() })
    }
}

/// Per-algorithm knob overrides; anything left out keeps its default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub max_iter: Option<u64>,
    pub rho: Option<f64>,
    pub alpha: Option<f64>,
    pub tau_min: Option<f64>,
    pub tau_max: Option<f64>,
    pub stall_window: Option<u64>,
    pub node_budget: Option<usize>,
    pub pop_size: Option<usize>,
    pub pc: Option<f64>,
    pub mutation_rate: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub inertia: Option<f64>,
    pub candidate_cap: Option<usize>,
    pub work_limit: Option<u64>,
}

impl Overrides {
    pub fn merged_over(&self, base: &Overrides) -> Overrides {
        macro_rules! pick {
            ($field:ident) => {
                self.$field.or(base.$field)
            };
        }
        Overrides {
            max_iter: pick!(max_iter),
            rho: pick!(rho),
            alpha: pick!(alpha),
            tau_min: pick!(tau_min),
            tau_max: pick!(tau_max),
            stall_window: pick!(stall_window),
            node_budget: pick!(node_budget),
            pop_size: pick!(pop_size),
            pc: pick!(pc),
            mutation_rate: pick!(mutation_rate),
            c1: pick!(c1),
            c2: pick!(c2),
            inertia: pick!(inertia),
            candidate_cap: pick!(candidate_cap),
            work_limit: pick!(work_limit),
        }
    }
}

fn default_repeats() -> u32 {
    3
}

/// A full experiment matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub datasets: Vec<String>,
    pub algorithms: Vec<Algorithm>,
    pub sigmas: Vec<f64>,
    #[serde(default = "default_repeats")]
    pub repeats: u32,
    #[serde(default)]
    pub seed_base: u64,
    #[serde(default)]
    pub id_column: bool,
    /// Keyed by algorithm name; applied on top of built-in defaults.
    #[serde(default)]
    pub overrides: BTreeMap<String, Overrides>,
}

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("cannot read spec {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed spec {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: toml::de::Error,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    UnknownAlgorithm(#[from] UnknownAlgorithm),
}

impl ExperimentSpec {
    pub fn from_toml_str(text: &str, origin: &str) -> Result<Self, SpecError> {
        let spec: ExperimentSpec = toml::from_str(text).map_err(|source| SpecError::Parse {
            path: origin.to_owned(),
            source,
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text, &path.display().to_string())
    }

    fn validate(&self) -> Result<(), SpecError> {
        if self.datasets.is_empty() {
            return Err(SpecError::Invalid("spec lists no datasets".into()));
        }
        if self.algorithms.is_empty() {
            return Err(SpecError::Invalid("spec lists no algorithms".into()));
        }
        if self.repeats < 1 {
            return Err(SpecError::Invalid("repeats must be at least 1".into()));
        }
        for &s in &self.sigmas {
            if !(s > 0.0 && s <= 1.0) {
                return Err(SpecError::Invalid(format!(
                    "sigma {s} outside (0, 1]"
                )));
            }
        }
        for name in self.overrides.keys() {
            Algorithm::from_str(name)?;
        }
        Ok(())
    }

    pub fn overrides_for(&self, algo: Algorithm) -> Overrides {
        self.overrides.get(algo.name()).cloned().unwrap_or_default()
    }
}
