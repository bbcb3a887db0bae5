//! Model selection and the plain-text `key = value` configuration format.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{build_agassi, build_lipkin, AgassiParams, LipkinParams, ModelDecomposition};
use crate::vqe::{AdamConfig, CostContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    LipkinSymmetric,
    LipkinFree,
    Agassi,
}

impl ModelKind {
    pub fn is_lipkin(self) -> bool {
        !matches!(self, ModelKind::Agassi)
    }

    pub fn default_layers_rule(self) -> LayersRule {
        if self.is_lipkin() {
            LayersRule::EqualToN
        } else {
            LayersRule::EqualToJ
        }
    }

    /// Sizes scanned when none are given: `n` for Lipkin, `j` for Agassi.
    pub fn default_sizes(self) -> Vec<usize> {
        if self.is_lipkin() {
            vec![4, 6, 8, 10, 12]
        } else {
            vec![1, 2, 3]
        }
    }

    /// Sampling interval used when none is given.
    pub fn default_param_range(self) -> (f64, f64) {
        if self.is_lipkin() {
            (-2.0 * std::f64::consts::PI, 2.0 * std::f64::consts::PI)
        } else {
            (-10.0, 10.0)
        }
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "lipkin" | "lipkin_symmetric" => Ok(ModelKind::LipkinSymmetric),
            "lipkin_free" => Ok(ModelKind::LipkinFree),
            "agassi" | "agassi_hva" => Ok(ModelKind::Agassi),
            other => Err(Error::InvalidParameter(format!("unknown model '{other}'"))),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::LipkinSymmetric => "lipkin_symmetric",
            ModelKind::LipkinFree => "lipkin_free",
            ModelKind::Agassi => "agassi",
        })
    }
}

/// How many ansatz layers a size gets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayersRule {
    /// One layer per qubit.
    EqualToN,
    /// One layer per unit of `j` (Agassi only).
    EqualToJ,
    Fixed(usize),
}

impl FromStr for LayersRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "equal_to_n" | "n" => Ok(LayersRule::EqualToN),
            "equal_to_j" | "j" => Ok(LayersRule::EqualToJ),
            other => other
                .parse()
                .map(LayersRule::Fixed)
                .map_err(|_| Error::InvalidParameter(format!("unknown layers rule '{other}'"))),
        }
    }
}

impl fmt::Display for LayersRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LayersRule::EqualToN => f.write_str("equal_to_n"),
            LayersRule::EqualToJ => f.write_str("equal_to_j"),
            LayersRule::Fixed(l) => write!(f, "{l}"),
        }
    }
}

/// A model family plus its couplings; sizes are supplied per call.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub kind: ModelKind,
    pub lambda: f64,
    pub h: f64,
    pub epsilon: f64,
    pub v: f64,
    pub g: f64,
    /// Penalty weight; `None` uses the default for each `j`.
    pub beta: Option<f64>,
}

impl ModelConfig {
    pub fn new(kind: ModelKind) -> Self {
        let a = AgassiParams::new(1);
        Self {
            kind,
            lambda: 1.0,
            h: 1.0,
            epsilon: a.epsilon,
            v: a.v,
            g: a.g,
            beta: None,
        }
    }

    pub fn lipkin_params(&self, n: usize) -> LipkinParams {
        LipkinParams {
            n,
            lambda: self.lambda,
            h: self.h,
        }
    }

    pub fn agassi_params(&self, j: usize) -> AgassiParams {
        let mut p = AgassiParams::with_couplings(j, self.epsilon, self.v, self.g);
        if let Some(beta) = self.beta {
            p.beta = beta;
        }
        p
    }

    pub fn n_qubits(&self, size: usize) -> usize {
        if self.kind.is_lipkin() {
            size
        } else {
            4 * size
        }
    }

    pub fn layers(&self, rule: LayersRule, size: usize) -> Result<usize> {
        match rule {
            LayersRule::EqualToN => Ok(self.n_qubits(size)),
            LayersRule::EqualToJ if self.kind.is_lipkin() => Err(Error::InvalidParameter(
                "the equal_to_j layers rule applies to the Agassi model only".into(),
            )),
            LayersRule::EqualToJ => Ok(size),
            LayersRule::Fixed(l) => Ok(l),
        }
    }

    pub fn decomposition(&self, size: usize) -> Result<ModelDecomposition> {
        if self.kind.is_lipkin() {
            build_lipkin(&self.lipkin_params(size))
        } else {
            build_agassi(&self.agassi_params(size))
        }
    }

    pub fn context(&self, size: usize, layers: usize) -> Result<CostContext> {
        match self.kind {
            ModelKind::LipkinSymmetric => CostContext::lipkin(&self.lipkin_params(size), layers, true),
            ModelKind::LipkinFree => CostContext::lipkin(&self.lipkin_params(size), layers, false),
            ModelKind::Agassi => CostContext::agassi(&self.agassi_params(size), layers),
        }
    }

    fn from_map(map: &ConfigMap) -> Result<Self> {
        let kind = map.get_or("model", ModelKind::Agassi)?;
        let d = Self::new(kind);
        Ok(Self {
            kind,
            lambda: map.get_or("lambda", d.lambda)?,
            h: map.get_or("h", d.h)?,
            epsilon: map.get_or("epsilon", d.epsilon)?,
            v: map.get_or("v", d.v)?,
            g: map.get_or("g", d.g)?,
            beta: map.get("beta")?,
        })
    }
}

/// Keys accepted in configuration files.
pub const CONFIG_KEYS: &[&str] = &[
    "model", "n", "j", "sizes", "layers_rule", "samples", "param_lo", "param_hi",
    "normalized", "runs", "steps", "seed", "out", "lambda", "h", "epsilon", "v", "g",
    "beta", "learning_rate", "beta1", "beta2", "adam_epsilon", "threshold", "j_max",
    "penalized",
];

/// Flat `key = value` settings. Blank lines and `#` comments are ignored;
/// later assignments win, so command-line flags are applied with [`set`].
///
/// [`set`]: ConfigMap::set
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigMap {
    entries: BTreeMap<String, String>,
}

impl ConfigMap {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: format!("expected key = value, got '{line}'"),
            })?;
            let key = k.trim().replace('-', "_");
            if !CONFIG_KEYS.contains(&key.as_str()) {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("unknown key '{key}'"),
                });
            }
            map.entries.insert(key, v.trim().to_string());
        }
        Ok(map)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.entries.insert(key.replace('-', "_"), value.to_string());
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        self.raw(key)
            .map(|v| {
                v.parse().map_err(|e: T::Err| {
                    Error::InvalidParameter(format!("bad value '{v}' for '{key}': {e}"))
                })
            })
            .transpose()
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        Ok(self.get(key)?.unwrap_or(default))
    }

    /// Comma-separated list of sizes under `sizes`, or else the model's own
    /// size key (`n` or `j`).
    pub fn sizes(&self, kind: ModelKind) -> Result<Option<Vec<usize>>> {
        let key = if self.raw("sizes").is_some() {
            "sizes"
        } else if kind.is_lipkin() {
            "n"
        } else {
            "j"
        };
        self.raw(key)
            .map(|v| {
                v.split(',')
                    .map(|s| {
                        s.trim().parse().map_err(|_| {
                            Error::InvalidParameter(format!("bad size '{s}' in '{key}'"))
                        })
                    })
                    .collect()
            })
            .transpose()
    }

    pub fn model(&self) -> Result<ModelConfig> {
        ModelConfig::from_map(self)
    }

    pub fn adam(&self) -> Result<AdamConfig> {
        let d = AdamConfig::default();
        Ok(AdamConfig {
            learning_rate: self.get_or("learning_rate", d.learning_rate)?,
            beta1: self.get_or("beta1", d.beta1)?,
            beta2: self.get_or("beta2", d.beta2)?,
            epsilon: self.get_or("adam_epsilon", d.epsilon)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_override() {
        let mut m = ConfigMap::parse(
            "# scan settings\nmodel = lipkin_free\nsizes = 4, 6,8\n\nsamples=16 # fewer\nparam-lo = -1.5\n",
        )
        .unwrap();
        assert_eq!(m.get::<usize>("samples").unwrap(), Some(16));
        assert_eq!(m.get::<f64>("param_lo").unwrap(), Some(-1.5));
        assert_eq!(m.sizes(ModelKind::LipkinFree).unwrap(), Some(vec![4, 6, 8]));
        m.set("samples", 8);
        assert_eq!(m.get::<usize>("samples").unwrap(), Some(8));
        assert_eq!(m.model().unwrap().kind, ModelKind::LipkinFree);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(ConfigMap::parse("model lipkin"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(ConfigMap::parse("\nbogus = 1"), Err(Error::Parse { line: 2, .. })));
        let m = ConfigMap::parse("samples = many").unwrap();
        assert!(m.get::<usize>("samples").is_err());
    }

    #[test]
    fn layer_rules() {
        let lip = ModelConfig::new(ModelKind::LipkinSymmetric);
        let ag = ModelConfig::new(ModelKind::Agassi);
        assert_eq!(lip.layers(LayersRule::EqualToN, 6).unwrap(), 6);
        assert!(lip.layers(LayersRule::EqualToJ, 6).is_err());
        assert_eq!(ag.layers(LayersRule::EqualToJ, 3).unwrap(), 3);
        assert_eq!(ag.layers(LayersRule::EqualToN, 3).unwrap(), 12);
        assert_eq!("2".parse::<LayersRule>().unwrap(), LayersRule::Fixed(2));
        assert_eq!("equal_to_j".parse::<LayersRule>().unwrap(), LayersRule::EqualToJ);
        assert_eq!("lipkin-free".parse::<ModelKind>().unwrap(), ModelKind::LipkinFree);
    }
}
