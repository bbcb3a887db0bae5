//! Experiment orchestration: variance scans, training ensembles, warm-start
//! sweeps, scaling fits and run records.

pub mod config;
pub mod record;
pub mod rng;
pub mod scan;
pub mod stats;
pub mod training;

pub use config::{ConfigMap, LayersRule, ModelConfig, ModelKind};
pub use record::{write_ensemble, write_scan, write_warm_start, Experiment, RunOutcome, RunRecord};
pub use scan::{variance_scan, ScanResult, ScanRow, VarianceScanConfig};
pub use stats::{fit_scaling, LinearFit, ScalingFit};
pub use training::{
    train_all, training_ensemble, warm_inits, warm_start_sweep, EnsembleConfig, EnsembleResult, EnsembleSummary,
    WarmStartConfig, WarmStartLevel, WarmStartReport, WarmStartResult,
};
