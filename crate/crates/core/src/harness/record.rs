//! Persisted run records and artifact writers.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::scan::{ScanResult, VarianceScanConfig};
use super::training::{EnsembleConfig, EnsembleResult, EnsembleSummary, WarmStartConfig, WarmStartReport, WarmStartResult};
use crate::ansatz::ParameterVector;
use crate::error::Result;
use crate::vqe::TrainTrace;

pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// Final state of one training run, kept in the record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub seed: u64,
    pub final_energy: f64,
    pub final_percent_error: f64,
    pub final_params: ParameterVector,
}

impl From<&TrainTrace> for RunOutcome {
    fn from(t: &TrainTrace) -> Self {
        Self {
            seed: t.seed,
            final_energy: t.final_energy(),
            final_percent_error: t.final_percent_error(),
            final_params: t.final_params.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "snake_case")]
pub enum Experiment {
    VarianceScan {
        config: VarianceScanConfig,
        result: ScanResult,
    },
    Ensemble {
        config: EnsembleConfig,
        summary: EnsembleSummary,
        runs: Vec<RunOutcome>,
    },
    WarmStart {
        config: WarmStartConfig,
        report: WarmStartReport,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub version: String,
    pub master_seed: u64,
    #[serde(flatten)]
    pub experiment: Experiment,
    /// Files written next to the record, relative to its directory.
    pub artifacts: Vec<String>,
}

impl RunRecord {
    pub fn new(experiment: Experiment) -> Self {
        let master_seed = match &experiment {
            Experiment::VarianceScan { config, .. } => config.master_seed,
            Experiment::Ensemble { config, .. } => config.master_seed,
            Experiment::WarmStart { config, .. } => config.master_seed,
        };
        Self {
            version: CODE_VERSION.to_string(),
            master_seed,
            experiment,
            artifacts: Vec::new(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn write_trace(dir: &Path, name: String, trace: &TrainTrace, artifacts: &mut Vec<String>) -> Result<()> {
    trace.write_csv(fs::File::create(dir.join(&name))?)?;
    artifacts.push(name);
    Ok(())
}

fn finish(dir: &Path, mut record: RunRecord, mut artifacts: Vec<String>) -> Result<PathBuf> {
    artifacts.push("record.json".into());
    record.artifacts = artifacts;
    let path = dir.join("record.json");
    fs::write(&path, record.to_json()? + "\n")?;
    Ok(path)
}

/// Writes `scan.csv` and `record.json` into `dir`.
pub fn write_scan(dir: &Path, config: &VarianceScanConfig, result: &ScanResult) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    result.write_csv(fs::File::create(dir.join("scan.csv"))?)?;
    let record = RunRecord::new(Experiment::VarianceScan {
        config: config.clone(),
        result: result.clone(),
    });
    finish(dir, record, vec!["scan.csv".into()])
}

/// Writes `trace_<run>.csv` per run and `record.json` into `dir`.
pub fn write_ensemble(dir: &Path, config: &EnsembleConfig, result: &EnsembleResult) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let mut artifacts = Vec::new();
    for (r, t) in result.traces.iter().enumerate() {
        write_trace(dir, format!("trace_{r}.csv"), t, &mut artifacts)?;
    }
    let record = RunRecord::new(Experiment::Ensemble {
        config: config.clone(),
        summary: result.summary.clone(),
        runs: result.traces.iter().map(RunOutcome::from).collect(),
    });
    finish(dir, record, artifacts)
}

/// Writes `trace_j<j>_{cold,warm}_<run>.csv` and `record.json` into `dir`.
pub fn write_warm_start(dir: &Path, config: &WarmStartConfig, result: &WarmStartResult) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let mut artifacts = Vec::new();
    for (level, traces) in result.cold_traces.iter().enumerate() {
        for (r, t) in traces.iter().enumerate() {
            write_trace(dir, format!("trace_j{}_cold_{r}.csv", level + 1), t, &mut artifacts)?;
        }
    }
    for (level, traces) in result.warm_traces.iter().enumerate() {
        for (r, t) in traces.iter().enumerate() {
            write_trace(dir, format!("trace_j{}_warm_{r}.csv", level + 2), t, &mut artifacts)?;
        }
    }
    let record = RunRecord::new(Experiment::WarmStart {
        config: config.clone(),
        report: result.report.clone(),
    });
    finish(dir, record, artifacts)
}
