//! Training ensembles and the warm-start sweep.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ConfigMap, LayersRule, ModelConfig, ModelKind};
use super::rng::{derived_seed, init_params, keyed_rng, Stream};
use super::stats::{mean, median, sample_std};
use crate::ansatz::{build_agassi_ansatz, warm_start_extend, ParameterVector};
use crate::error::{Error, Result};
use crate::vqe::{train, AdamConfig, CostContext, TrainTrace};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub model: ModelConfig,
    pub size: usize,
    pub layers_rule: LayersRule,
    pub runs: usize,
    pub init_lo: f64,
    pub init_hi: f64,
    pub steps: usize,
    pub master_seed: u64,
    pub adam: AdamConfig,
}

impl EnsembleConfig {
    /// 20 runs of 500 steps with the model's default interval and layers.
    pub fn new(model: ModelConfig, size: usize) -> Self {
        let (init_lo, init_hi) = model.kind.default_param_range();
        Self {
            size,
            layers_rule: model.kind.default_layers_rule(),
            runs: 20,
            init_lo,
            init_hi,
            steps: 500,
            master_seed: 0,
            adam: AdamConfig::default(),
            model,
        }
    }

    pub fn from_map(map: &ConfigMap) -> Result<Self> {
        let model = map.model()?;
        let size = match map.sizes(model.kind)?.as_deref() {
            Some([s]) => *s,
            Some(_) => {
                return Err(Error::InvalidParameter(
                    "training takes a single size".into(),
                ))
            }
            None if model.kind.is_lipkin() => 4,
            None => 1,
        };
        let d = Self::new(model, size);
        Ok(Self {
            layers_rule: map.get_or("layers_rule", d.layers_rule)?,
            runs: map.get_or("runs", d.runs)?,
            init_lo: map.get_or("param_lo", d.init_lo)?,
            init_hi: map.get_or("param_hi", d.init_hi)?,
            steps: map.get_or("steps", d.steps)?,
            master_seed: map.get_or("seed", d.master_seed)?,
            adam: map.adam()?,
            ..d
        })
    }

    /// Seed of run `index`; the run's initial point is
    /// `init_params(n, init_lo, init_hi, seed)`.
    pub fn run_seed(&self, index: usize) -> u64 {
        derived_seed(self.master_seed, Stream::TrainInit, self.size as u64, index as u64)
    }
}

/// Per-step mean and standard deviation of percent error across runs, plus
/// final-step statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSummary {
    pub size: usize,
    pub layers: usize,
    pub runs: usize,
    pub mean_percent_error: Vec<f64>,
    pub std_percent_error: Vec<f64>,
    pub final_mean: f64,
    pub final_std: f64,
    pub final_median: f64,
    pub exact_ground_energy: f64,
}

impl EnsembleSummary {
    pub fn from_traces(size: usize, layers: usize, traces: &[TrainTrace]) -> Result<Self> {
        let first = traces
            .first()
            .ok_or_else(|| Error::Experiment("an ensemble needs at least one run".into()))?;
        let steps = first.percent_error.len();
        if traces.iter().any(|t| t.percent_error.len() != steps) {
            return Err(Error::Experiment("ensemble traces differ in length".into()));
        }
        let column = |k: usize| -> Vec<f64> { traces.iter().map(|t| t.percent_error[k]).collect() };
        let finals = column(steps - 1);
        Ok(Self {
            size,
            layers,
            runs: traces.len(),
            mean_percent_error: (0..steps).map(|k| mean(&column(k)).unwrap()).collect(),
            std_percent_error: (0..steps).map(|k| sample_std(&column(k)).unwrap()).collect(),
            final_mean: mean(&finals).unwrap(),
            final_std: sample_std(&finals).unwrap(),
            final_median: median(&finals).unwrap(),
            exact_ground_energy: first.exact_ground_energy,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleResult {
    pub summary: EnsembleSummary,
    pub traces: Vec<TrainTrace>,
}

/// Trains every initial point independently, in parallel; output order
/// follows `inits`.
pub fn train_all(
    ctx: &CostContext,
    inits: &[(u64, ParameterVector)],
    steps: usize,
    adam: AdamConfig,
) -> Result<Vec<TrainTrace>> {
    inits
        .par_iter()
        .map(|(seed, theta)| train(ctx, theta, steps, *seed, adam))
        .collect()
}

pub fn training_ensemble(cfg: &EnsembleConfig) -> Result<EnsembleResult> {
    if cfg.runs == 0 {
        return Err(Error::InvalidParameter("an ensemble needs at least one run".into()));
    }
    let layers = cfg.model.layers(cfg.layers_rule, cfg.size)?;
    let ctx = cfg.model.context(cfg.size, layers)?;
    let inits: Vec<(u64, ParameterVector)> = (0..cfg.runs)
        .map(|r| {
            let seed = cfg.run_seed(r);
            (seed, init_params(ctx.n_params(), cfg.init_lo, cfg.init_hi, seed))
        })
        .collect();
    let traces = train_all(&ctx, &inits, cfg.steps, cfg.adam)?;
    Ok(EnsembleResult {
        summary: EnsembleSummary::from_traces(cfg.size, layers, &traces)?,
        traces,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WarmStartConfig {
    /// Agassi couplings; the kind is always Agassi.
    pub model: ModelConfig,
    pub j_max: usize,
    /// Pool admission threshold on final percent error.
    pub threshold_pct: f64,
    pub runs: usize,
    pub steps: usize,
    pub init_lo: f64,
    pub init_hi: f64,
    pub master_seed: u64,
    pub adam: AdamConfig,
}

impl WarmStartConfig {
    pub fn new(j_max: usize) -> Self {
        let model = ModelConfig::new(ModelKind::Agassi);
        let (init_lo, init_hi) = model.kind.default_param_range();
        Self {
            model,
            j_max,
            threshold_pct: 2.0,
            runs: 20,
            steps: 500,
            init_lo,
            init_hi,
            master_seed: 0,
            adam: AdamConfig::default(),
        }
    }

    pub fn from_map(map: &ConfigMap) -> Result<Self> {
        let model = map.model()?;
        if model.kind != ModelKind::Agassi {
            return Err(Error::InvalidParameter("warm starts apply to the Agassi model".into()));
        }
        let j_max = match map.get("j_max")? {
            Some(j) => j,
            None => match map.sizes(ModelKind::Agassi)?.as_deref() {
                Some([j]) => *j,
                Some(list) => list.iter().copied().max().unwrap_or(3),
                None => 3,
            },
        };
        let d = Self::new(j_max);
        Ok(Self {
            model,
            threshold_pct: map.get_or("threshold", d.threshold_pct)?,
            runs: map.get_or("runs", d.runs)?,
            steps: map.get_or("steps", d.steps)?,
            init_lo: map.get_or("param_lo", d.init_lo)?,
            init_hi: map.get_or("param_hi", d.init_hi)?,
            master_seed: map.get_or("seed", d.master_seed)?,
            adam: map.adam()?,
            ..d
        })
    }

    fn cold(&self, j: usize) -> EnsembleConfig {
        EnsembleConfig {
            model: self.model,
            size: j,
            layers_rule: LayersRule::EqualToJ,
            runs: self.runs,
            init_lo: self.init_lo,
            init_hi: self.init_hi,
            steps: self.steps,
            master_seed: self.master_seed,
            adam: self.adam,
        }
    }
}

/// Cold and warm ensembles at one `j`. Reductions are
/// `100·(cold − warm)/cold`, `None` when the cold value is zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WarmStartLevel {
    pub j: usize,
    pub cold: EnsembleSummary,
    pub warm: Option<EnsembleSummary>,
    /// Number of `j − 1` solutions the warm runs sampled from.
    pub pool_size: usize,
    pub mean_reduction_pct: Option<f64>,
    pub std_reduction_pct: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WarmStartReport {
    pub levels: Vec<WarmStartLevel>,
    /// First `j` whose pool came up empty.
    pub halted_at: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WarmStartResult {
    pub report: WarmStartReport,
    /// Cold traces per level, starting at `j = 1`.
    pub cold_traces: Vec<Vec<TrainTrace>>,
    /// Warm traces per level, starting at `j = 2`.
    pub warm_traces: Vec<Vec<TrainTrace>>,
}

pub fn reduction_pct(cold: f64, warm: f64) -> Option<f64> {
    (cold != 0.0).then(|| 100.0 * (cold - warm) / cold)
}

/// Initial points for the warm runs at `cfg.size`: run `r` draws one member
/// of `pool` (solutions at `j − 1` with `j − 1` layers) and appends a
/// near-identity layer. Seeds match the cold runs of `cfg`.
pub fn warm_inits(cfg: &EnsembleConfig, pool: &[ParameterVector]) -> Result<Vec<(u64, ParameterVector)>> {
    let j = cfg.size;
    if j < 2 || pool.is_empty() {
        return Err(Error::InvalidParameter("warm starts need j ≥ 2 and a non-empty pool".into()));
    }
    let prev_program = build_agassi_ansatz(j - 1, j - 1)?;
    (0..cfg.runs)
        .map(|r| {
            let pick = keyed_rng(cfg.master_seed, Stream::WarmPick, j as u64, r as u64)
                .random_range(0..pool.len());
            let mut layer_rng = keyed_rng(cfg.master_seed, Stream::WarmLayer, j as u64, r as u64);
            let theta = warm_start_extend(&pool[pick], &prev_program, &mut layer_rng)?;
            Ok((cfg.run_seed(r), theta))
        })
        .collect()
}

/// Warm-start sweep over `j = 1 … j_max`.
///
/// `j = 1` is a cold ensemble. At each `j ≥ 2`, run `r` draws one member of
/// the pool of `j − 1` solutions below the threshold, appends a near-identity
/// layer and trains. A cold ensemble with the same run seeds and budget is
/// trained alongside. The next pool is the warm solutions below threshold.
pub fn warm_start_sweep(cfg: &WarmStartConfig) -> Result<WarmStartResult> {
    if cfg.j_max < 2 {
        return Err(Error::InvalidParameter("warm-start sweeps need j_max ≥ 2".into()));
    }
    if cfg.runs == 0 {
        return Err(Error::InvalidParameter("an ensemble needs at least one run".into()));
    }
    let admit = |traces: &[TrainTrace]| -> Vec<ParameterVector> {
        traces
            .iter()
            .filter(|t| t.final_percent_error() < cfg.threshold_pct)
            .map(|t| t.final_params.clone())
            .collect()
    };

    let base = training_ensemble(&cfg.cold(1))?;
    let mut pool = admit(&base.traces);
    let mut levels = Vec::new();
    let mut cold_traces = vec![base.traces];
    let mut warm_traces = Vec::new();
    let mut halted_at = None;
    levels.push(WarmStartLevel {
        j: 1,
        cold: base.summary,
        warm: None,
        pool_size: 0,
        mean_reduction_pct: None,
        std_reduction_pct: None,
    });

    for j in 2..=cfg.j_max {
        let cold_cfg = cfg.cold(j);
        let cold = training_ensemble(&cold_cfg)?;
        if pool.is_empty() {
            halted_at = Some(j);
            levels.push(WarmStartLevel {
                j,
                cold: cold.summary,
                warm: None,
                pool_size: 0,
                mean_reduction_pct: None,
                std_reduction_pct: None,
            });
            cold_traces.push(cold.traces);
            break;
        }
        let ctx = cfg.model.context(j, j)?;
        let inits = warm_inits(&cold_cfg, &pool)?;
        let traces = train_all(&ctx, &inits, cfg.steps, cfg.adam)?;
        let warm = EnsembleSummary::from_traces(j, j, &traces)?;
        levels.push(WarmStartLevel {
            j,
            mean_reduction_pct: reduction_pct(cold.summary.final_mean, warm.final_mean),
            std_reduction_pct: reduction_pct(cold.summary.final_std, warm.final_std),
            pool_size: pool.len(),
            cold: cold.summary,
            warm: Some(warm),
        });
        pool = admit(&traces);
        cold_traces.push(cold.traces);
        warm_traces.push(traces);
    }
    Ok(WarmStartResult {
        report: WarmStartReport { levels, halted_at },
        cold_traces,
        warm_traces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replicated_seeds_have_zero_spread() {
        let model = ModelConfig::new(ModelKind::LipkinSymmetric);
        let ctx = model.context(2, 1).unwrap();
        let init = (7, init_params(2, -1.0, 1.0, 7));
        let traces = train_all(&ctx, &[init.clone(), init], 5, AdamConfig::default()).unwrap();
        let s = EnsembleSummary::from_traces(2, 1, &traces).unwrap();
        assert!(s.std_percent_error.iter().all(|&v| v == 0.0));
        assert_eq!(s.final_std, 0.0);
    }

    #[test]
    fn single_run_matches_train() {
        let mut cfg = EnsembleConfig::new(ModelConfig::new(ModelKind::Agassi), 1);
        cfg.runs = 1;
        cfg.steps = 10;
        let e = training_ensemble(&cfg).unwrap();
        let ctx = cfg.model.context(1, 1).unwrap();
        let seed = cfg.run_seed(0);
        let direct = train(&ctx, &init_params(3, -10.0, 10.0, seed), 10, seed, cfg.adam).unwrap();
        assert_eq!(e.traces[0], direct);
        assert_eq!(e.summary.final_mean, direct.final_percent_error());
    }

    #[test]
    fn singleton_pool_shares_the_prefix() {
        let mut cfg = EnsembleConfig::new(ModelConfig::new(ModelKind::Agassi), 2);
        cfg.runs = 5;
        let member = ParameterVector(vec![0.5, -1.5, 2.5]);
        let inits = warm_inits(&cfg, std::slice::from_ref(&member)).unwrap();
        for (r, (seed, theta)) in inits.iter().enumerate() {
            assert_eq!(*seed, cfg.run_seed(r));
            assert_eq!(theta.0[..3], member.0[..]);
            assert!(theta.0[3..].iter().all(|v| v.abs() <= 1e-4));
        }
        assert_ne!(inits[0].1, inits[1].1);
        assert!(warm_inits(&cfg, &[]).is_err());
    }

    #[test]
    fn reductions() {
        assert_eq!(reduction_pct(4.0, 1.0), Some(75.0));
        assert_eq!(reduction_pct(0.0, 1.0), None);
    }
}
