//! Cold versus warm-started ensembles up the Agassi size ladder.

use nuclear_hva::harness::{warm_start_sweep, WarmStartConfig};

fn main() -> nuclear_hva::Result<()> {
    let mut cfg = WarmStartConfig::new(2);
    cfg.runs = 10;
    cfg.steps = 300;
    let result = warm_start_sweep(&cfg)?;
    for level in &result.report.levels {
        println!("j={} cold: mean {:.4}% std {:.4}%", level.j, level.cold.final_mean, level.cold.final_std);
        if let Some(w) = &level.warm {
            println!(
                "j={} warm from a pool of {}: mean {:.4}% std {:.4}% (mean reduced by {:?}%)",
                level.j, level.pool_size, w.final_mean, w.final_std, level.mean_reduction_pct
            );
        }
    }
    if let Some(j) = result.report.halted_at {
        println!("halted at j={j}");
    }
    Ok(())
}
