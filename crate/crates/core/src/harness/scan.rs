//! Cost-variance scans over random parameter draws.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ConfigMap, LayersRule, ModelConfig};
use super::rng::{keyed_rng, Stream};
use super::stats::{fit_scaling, log_variance, mean, sample_variance, ScalingFit};
use crate::ansatz::ParameterVector;
use crate::error::{Error, Result};
use crate::vqe::{cost, normalize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceScanConfig {
    pub model: ModelConfig,
    /// `n` for Lipkin, `j` for Agassi.
    pub sizes: Vec<usize>,
    pub samples: usize,
    pub param_lo: f64,
    pub param_hi: f64,
    pub layers_rule: LayersRule,
    pub master_seed: u64,
    pub normalized: bool,
}

impl VarianceScanConfig {
    /// Desk-scale defaults for a model: 32 samples, the model's default
    /// sizes, interval and layers rule.
    pub fn new(model: ModelConfig) -> Self {
        let (param_lo, param_hi) = model.kind.default_param_range();
        Self {
            sizes: model.kind.default_sizes(),
            samples: 32,
            param_lo,
            param_hi,
            layers_rule: model.kind.default_layers_rule(),
            master_seed: 0,
            normalized: false,
            model,
        }
    }

    pub fn from_map(map: &ConfigMap) -> Result<Self> {
        let d = Self::new(map.model()?);
        Ok(Self {
            sizes: map.sizes(d.model.kind)?.unwrap_or(d.sizes),
            samples: map.get_or("samples", d.samples)?,
            param_lo: map.get_or("param_lo", d.param_lo)?,
            param_hi: map.get_or("param_hi", d.param_hi)?,
            layers_rule: map.get_or("layers_rule", d.layers_rule)?,
            master_seed: map.get_or("seed", d.master_seed)?,
            normalized: map.get_or("normalized", d.normalized)?,
            model: d.model,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < 2 {
            return Err(Error::InvalidParameter("a variance needs at least 2 samples".into()));
        }
        if !(self.param_lo < self.param_hi) {
            return Err(Error::InvalidParameter(format!(
                "empty parameter range [{}, {}]",
                self.param_lo, self.param_hi
            )));
        }
        if self.sizes.is_empty() {
            return Err(Error::InvalidParameter("no sizes to scan".into()));
        }
        Ok(())
    }
}

/// Statistics for one size. Normalized columns are `None` unless requested;
/// the log-variance is also `None` when some normalized value is not
/// strictly positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub size: usize,
    pub n_qubits: usize,
    pub layers: usize,
    pub mean: f64,
    pub variance: f64,
    pub mean_normalized: Option<f64>,
    pub variance_normalized: Option<f64>,
    pub log_variance_normalized: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
    /// Fit of the (normalized, if requested) variance against qubit count;
    /// absent with fewer than 3 sizes or a zero variance.
    pub fit: Option<ScalingFit>,
}

impl ScanResult {
    /// `scan.csv` layout.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let mut out = csv::Writer::from_writer(w);
        out.write_record([
            "size",
            "n_qubits",
            "variance",
            "variance_normalized",
            "log_variance_normalized",
        ])?;
        for r in &self.rows {
            out.write_record([
                r.size.to_string(),
                r.n_qubits.to_string(),
                r.variance.to_string(),
                opt(r.variance_normalized),
                opt(r.log_variance_normalized),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

pub fn variance_scan(cfg: &VarianceScanConfig) -> Result<ScanResult> {
    cfg.validate()?;
    let mut rows = Vec::with_capacity(cfg.sizes.len());
    for &size in &cfg.sizes {
        let layers = cfg.model.layers(cfg.layers_rule, size)?;
        let ctx = cfg.model.context(size, layers)?;
        let energies = (0..cfg.samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = keyed_rng(cfg.master_seed, Stream::ScanSample, size as u64, i as u64);
                let theta = ParameterVector::uniform(ctx.n_params(), cfg.param_lo, cfg.param_hi, &mut rng);
                cost(&ctx, &theta)
            })
            .collect::<Result<Vec<f64>>>()?;
        let normalized = if cfg.normalized {
            Some(
                energies
                    .iter()
                    .map(|&e| normalize(&ctx, e))
                    .collect::<Result<Vec<f64>>>()?,
            )
        } else {
            None
        };
        rows.push(ScanRow {
            size,
            n_qubits: ctx.ansatz().n_qubits(),
            layers,
            mean: mean(&energies).expect("samples ≥ 2"),
            variance: sample_variance(&energies).expect("samples ≥ 2"),
            mean_normalized: normalized.as_deref().and_then(mean),
            variance_normalized: normalized.as_deref().and_then(sample_variance),
            log_variance_normalized: normalized.as_deref().and_then(log_variance),
        });
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| {
            let v = if cfg.normalized {
                r.variance_normalized.unwrap_or(0.0)
            } else {
                r.variance
            };
            (r.n_qubits as f64, v)
        })
        .collect();
    Ok(ScanResult {
        fit: fit_scaling(&points).ok(),
        rows,
    })
}
