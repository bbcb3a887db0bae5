use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nuclear_hva::ansatz::{build_agassi_ansatz, warm_start_extend, AnsatzKind, ParameterFile};
use nuclear_hva::engine::{extremal_eigs, extremal_eigs_in_sector};
use nuclear_hva::harness::rng::{keyed_rng, Stream};
use nuclear_hva::harness::{
    training_ensemble, variance_scan, warm_start_sweep, write_ensemble, write_scan,
    write_warm_start, ConfigMap, EnsembleConfig, EnsembleResult, EnsembleSummary,
    VarianceScanConfig, WarmStartConfig,
};
use nuclear_hva::vqe::train;
use nuclear_hva::{Error, Result};

/// Variational ground-state experiments for the Lipkin and Agassi models.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Command {
    /// Cost variance over random parameters, per system size.
    VarianceScan,
    /// One ADAM training run.
    Train {
        /// Start from a saved parameter file; an Agassi file one layer short
        /// is extended with a near-identity layer.
        #[arg(long)]
        init: Option<PathBuf>,
    },
    /// Independent training runs from random initial points.
    Ensemble,
    /// Cold versus warm-started ensembles for j = 1 … j_max.
    WarmStartSweep,
    /// Extremal eigenvalues of the model Hamiltonian.
    Exact,
    /// Print the Hamiltonian as `<real> <imag> <letters>` lines.
    DumpHamiltonian,
}

#[derive(Args)]
struct Flags {
    /// key = value file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// lipkin_symmetric, lipkin_free or agassi.
    #[arg(long, global = true)]
    model: Option<String>,
    /// Lipkin size(s), comma separated.
    #[arg(long, global = true)]
    n: Option<String>,
    /// Agassi size(s), comma separated.
    #[arg(long, global = true)]
    j: Option<String>,
    /// equal_to_n, equal_to_j or a fixed count.
    #[arg(long, global = true)]
    layers_rule: Option<String>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    param_lo: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    param_hi: Option<f64>,
    /// Also report the spectrum-normalized cost.
    #[arg(long, global = true)]
    normalized: bool,
    #[arg(long, global = true)]
    runs: Option<usize>,
    #[arg(long, global = true)]
    steps: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Warm-start pool threshold in percent.
    #[arg(long, global = true)]
    threshold: Option<f64>,
    /// Include the half-filling penalty (Agassi).
    #[arg(long, global = true)]
    penalized: bool,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl Flags {
    fn settings(&self) -> Result<ConfigMap> {
        let mut map = match &self.config {
            Some(path) => ConfigMap::from_file(path)?,
            None => ConfigMap::default(),
        };
        let text = [
            ("model", self.model.clone()),
            ("n", self.n.clone()),
            ("j", self.j.clone()),
            ("layers_rule", self.layers_rule.clone()),
        ];
        for (key, value) in text {
            if let Some(v) = value {
                map.set(key, v);
            }
        }
        let numbers = [
            ("samples", self.samples.map(|v| v.to_string())),
            ("param_lo", self.param_lo.map(|v| v.to_string())),
            ("param_hi", self.param_hi.map(|v| v.to_string())),
            ("runs", self.runs.map(|v| v.to_string())),
            ("steps", self.steps.map(|v| v.to_string())),
            ("seed", self.seed.map(|v| v.to_string())),
            ("threshold", self.threshold.map(|v| v.to_string())),
            ("out", self.out.as_ref().map(|p| p.display().to_string())),
        ];
        for (key, value) in numbers {
            if let Some(v) = value {
                map.set(key, v);
            }
        }
        if self.normalized {
            map.set("normalized", true);
        }
        if self.penalized {
            map.set("penalized", true);
        }
        Ok(map)
    }
}

fn out_dir(map: &ConfigMap) -> Option<PathBuf> {
    map.raw("out").map(PathBuf::from)
}

fn print_summary(s: &EnsembleSummary) {
    println!(
        "size {} layers {} runs {}: final percent error mean {:.6} std {:.6} median {:.6} (E0 = {})",
        s.size, s.layers, s.runs, s.final_mean, s.final_std, s.final_median, s.exact_ground_energy
    );
}

fn write_params(dir: &Path, cfg: &EnsembleConfig, result: &EnsembleResult) -> Result<()> {
    let layers = result.summary.layers;
    let program = cfg.model.context(cfg.size, layers)?;
    for (r, t) in result.traces.iter().enumerate() {
        let file = ParameterFile::new(program.ansatz(), t.final_params.clone(), t.seed);
        fs::write(dir.join(format!("params_{r}.json")), file.to_json()? + "\n")?;
    }
    Ok(())
}

fn variance_scan_cmd(map: &ConfigMap) -> Result<()> {
    let cfg = VarianceScanConfig::from_map(map)?;
    let result = variance_scan(&cfg)?;
    match out_dir(map) {
        Some(dir) => {
            let path = write_scan(&dir, &cfg, &result)?;
            eprintln!("wrote {}", path.display());
        }
        None => result.write_csv(std::io::stdout())?,
    }
    if let Some(fit) = result.fit {
        eprintln!(
            "power law: exponent {:.4} (r² {:.4}); exponential: rate {:.4} (r² {:.4})",
            fit.exponent(),
            fit.power_law.r_squared,
            fit.rate(),
            fit.exponential.r_squared
        );
    }
    Ok(())
}

fn ensemble_cmd(map: &ConfigMap, runs_override: Option<usize>) -> Result<()> {
    let mut cfg = EnsembleConfig::from_map(map)?;
    if let Some(r) = runs_override {
        cfg.runs = r;
    }
    let result = training_ensemble(&cfg)?;
    print_summary(&result.summary);
    if let Some(dir) = out_dir(map) {
        let path = write_ensemble(&dir, &cfg, &result)?;
        write_params(&dir, &cfg, &result)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn train_from_file(map: &ConfigMap, init: &Path) -> Result<()> {
    let mut cfg = EnsembleConfig::from_map(map)?;
    cfg.runs = 1;
    let file = ParameterFile::from_json(&fs::read_to_string(init)?)?;
    let layers = cfg.model.layers(cfg.layers_rule, cfg.size)?;
    let ctx = cfg.model.context(cfg.size, layers)?;
    let seed = cfg.run_seed(0);
    let theta = if file.layers == layers && file.values.len() == ctx.n_params() {
        file.values
    } else if file.kind == AnsatzKind::AgassiHva && file.layers + 1 == layers {
        let prev = build_agassi_ansatz(file.j.unwrap_or(cfg.size - 1), file.layers)?;
        let mut rng = keyed_rng(cfg.master_seed, Stream::WarmLayer, cfg.size as u64, 0);
        warm_start_extend(&file.values, &prev, &mut rng)?
    } else {
        return Err(Error::InvalidParameter(format!(
            "{} holds {} layers, the target circuit has {layers}",
            init.display(),
            file.layers
        )));
    };
    let trace = train(&ctx, &theta, cfg.steps, seed, cfg.adam)?;
    let result = EnsembleResult {
        summary: EnsembleSummary::from_traces(cfg.size, layers, std::slice::from_ref(&trace))?,
        traces: vec![trace],
    };
    print_summary(&result.summary);
    if let Some(dir) = out_dir(map) {
        let path = write_ensemble(&dir, &cfg, &result)?;
        write_params(&dir, &cfg, &result)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn warm_start_cmd(map: &ConfigMap) -> Result<()> {
    let cfg = WarmStartConfig::from_map(map)?;
    let result = warm_start_sweep(&cfg)?;
    for level in &result.report.levels {
        print!("j={} cold: ", level.j);
        print_summary(&level.cold);
        if let Some(w) = &level.warm {
            print!("j={} warm (pool {}): ", level.j, level.pool_size);
            print_summary(w);
            println!(
                "j={} reduction of mean {:?} %, of std {:?} %",
                level.j, level.mean_reduction_pct, level.std_reduction_pct
            );
        }
    }
    if let Some(j) = result.report.halted_at {
        println!("halted at j={j}: no j-1 solution below {}%", cfg.threshold_pct);
    }
    if let Some(dir) = out_dir(map) {
        let path = write_warm_start(&dir, &cfg, &result)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn exact_cmd(map: &ConfigMap) -> Result<()> {
    let model = map.model()?;
    let sizes = map.sizes(model.kind)?.unwrap_or_else(|| model.kind.default_sizes());
    println!("size,n_qubits,hamiltonian,e_min,e_max");
    for size in sizes {
        let d = model.decomposition(size)?;
        let n_qubits = d.n_qubits();
        if model.kind.is_lipkin() {
            let b = extremal_eigs(&d.full_hamiltonian)?;
            println!("{size},{n_qubits},full,{},{}", b.e_min, b.e_max);
        } else {
            let filling = 2 * size as u32;
            let b = extremal_eigs_in_sector(&d.full_hamiltonian, &|i: usize| i.count_ones() == filling)?;
            println!("{size},{n_qubits},half_filling,{},{}", b.e_min, b.e_max);
            if let Some(p) = &d.penalized_hamiltonian {
                let b = extremal_eigs(p)?;
                println!("{size},{n_qubits},penalized,{},{}", b.e_min, b.e_max);
            }
        }
    }
    Ok(())
}

fn dump_cmd(map: &ConfigMap) -> Result<()> {
    let model = map.model()?;
    let size = match map.sizes(model.kind)?.as_deref() {
        Some([s]) => *s,
        _ => return Err(Error::InvalidParameter("dump-hamiltonian needs one --n or --j".into())),
    };
    let d = model.decomposition(size)?;
    let penalized: bool = map.get_or("penalized", false)?;
    let h = match (&d.penalized_hamiltonian, penalized) {
        (Some(p), true) => p,
        (None, true) => {
            return Err(Error::InvalidParameter("only the Agassi model has a penalty".into()))
        }
        _ => &d.full_hamiltonian,
    };
    let text = h.to_text();
    match out_dir(map) {
        Some(dir) => {
            fs::create_dir_all(&dir)?;
            let path = dir.join("hamiltonian.txt");
            fs::write(&path, text)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let map = cli.flags.settings()?;
    match cli.command {
        Command::VarianceScan => variance_scan_cmd(&map),
        Command::Train { init: Some(path) } => train_from_file(&map, &path),
        Command::Train { init: None } => ensemble_cmd(&map, Some(1)),
        Command::Ensemble => ensemble_cmd(&map, None),
        Command::WarmStartSweep => warm_start_cmd(&map),
        Command::Exact => exact_cmd(&map),
        Command::DumpHamiltonian => dump_cmd(&map),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
