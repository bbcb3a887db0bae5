//! Training the symmetric and free Lipkin ansätze at the same size.

use std::f64::consts::PI;

use nuclear_hva::harness::rng::init_params;
use nuclear_hva::models::LipkinParams;
use nuclear_hva::vqe::{train, AdamConfig, CostContext};

fn main() -> nuclear_hva::Result<()> {
    let n = 4;
    for symmetric in [true, false] {
        let ctx = CostContext::lipkin(&LipkinParams::new(n), n, symmetric)?;
        let theta0 = init_params(ctx.n_params(), -2.0 * PI, 2.0 * PI, 3);
        let trace = train(&ctx, &theta0, 300, 3, AdamConfig::default())?;
        println!(
            "{} ({} parameters): final error {:.4}%",
            ctx.ansatz().kind(),
            ctx.n_params(),
            trace.final_percent_error()
        );
    }
    Ok(())
}
