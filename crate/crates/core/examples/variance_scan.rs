//! Cost variance over random parameters versus system size, with power-law
//! and exponential fits.

use nuclear_hva::harness::{variance_scan, ModelConfig, ModelKind, VarianceScanConfig};

fn main() -> nuclear_hva::Result<()> {
    for (kind, sizes) in [
        (ModelKind::LipkinSymmetric, vec![4, 6, 8, 10]),
        (ModelKind::LipkinFree, vec![4, 6, 8, 10]),
        (ModelKind::Agassi, vec![1, 2, 3]),
    ] {
        let mut cfg = VarianceScanConfig::new(ModelConfig::new(kind));
        cfg.sizes = sizes;
        cfg.normalized = true;
        let result = variance_scan(&cfg)?;
        println!("{kind}");
        result.write_csv(std::io::stdout())?;
        if let Some(fit) = result.fit {
            println!(
                "  power law exponent {:.3} (r² {:.3}), exponential rate {:.3} (r² {:.3})",
                fit.exponent(),
                fit.power_law.r_squared,
                fit.rate(),
                fit.exponential.r_squared
            );
        }
    }
    Ok(())
}
