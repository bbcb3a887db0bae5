//! Experiment settings from a key = value file, with programmatic overrides.

use nuclear_hva::harness::{ConfigMap, EnsembleConfig, VarianceScanConfig};

const SETTINGS: &str = "
# Lipkin scan settings
model = lipkin_free
sizes = 4, 6, 8
samples = 16
param-lo = -3.14
param-hi = 3.14
normalized = true
seed = 5
";

fn main() -> nuclear_hva::Result<()> {
    let mut map = ConfigMap::parse(SETTINGS)?;
    let scan = VarianceScanConfig::from_map(&map)?;
    println!("scan: {:?} sizes {:?}, {} samples in [{}, {}]", scan.model.kind, scan.sizes, scan.samples, scan.param_lo, scan.param_hi);

    // command-line flags win over the file
    map.set("model", "agassi");
    map.set("sizes", "2");
    map.set("steps", 100);
    let ensemble = EnsembleConfig::from_map(&map)?;
    println!("ensemble: j={} {} runs of {} steps, seed {}", ensemble.size, ensemble.runs, ensemble.steps, ensemble.master_seed);

    match ConfigMap::parse("bogus_key = 1") {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
