//! One ADAM training run on the Agassi model, printing the energy trace.

use nuclear_hva::harness::rng::init_params;
use nuclear_hva::models::AgassiParams;
use nuclear_hva::vqe::{normalized_cost, train, AdamConfig, CostContext};

fn main() -> nuclear_hva::Result<()> {
    let j = 2;
    let ctx = CostContext::agassi(&AgassiParams::new(j), j)?;
    let seed = 11;
    let theta0 = init_params(ctx.n_params(), -10.0, 10.0, seed);
    println!("initial normalized cost {:.4}", normalized_cost(&ctx, &theta0)?);

    let trace = train(&ctx, &theta0, 500, seed, AdamConfig::default())?;
    for (step, (e, pct)) in trace.energies.iter().zip(&trace.percent_error).enumerate().step_by(50) {
        println!("step {:>3}: E = {e:.10} ({pct:.4}% error)", step + 1);
    }
    println!(
        "final E = {:.10}, exact {:.10}, error {:.4}%",
        trace.final_energy(),
        trace.exact_ground_energy,
        trace.final_percent_error()
    );
    Ok(())
}
