//! An ensemble of training runs with artifacts written to a directory.
//!
//! `cargo run --release --example training_ensemble [out_dir]`

use std::path::PathBuf;

use nuclear_hva::harness::{training_ensemble, write_ensemble, EnsembleConfig, ModelConfig, ModelKind};

fn main() -> nuclear_hva::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("nuclear-hva-ensemble"));
    let mut cfg = EnsembleConfig::new(ModelConfig::new(ModelKind::Agassi), 2);
    cfg.runs = 8;
    let result = training_ensemble(&cfg)?;
    let s = &result.summary;
    println!(
        "j={} L={}: final error mean {:.4}% std {:.4}% median {:.4}%",
        s.size, s.layers, s.final_mean, s.final_std, s.final_median
    );
    for (r, t) in result.traces.iter().enumerate() {
        println!("  run {r} seed {:>20}: {:.4}%", t.seed, t.final_percent_error());
    }
    let record = write_ensemble(&out, &cfg, &result)?;
    println!("wrote {}", record.display());
    Ok(())
}
