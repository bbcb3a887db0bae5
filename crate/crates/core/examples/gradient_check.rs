//! Adjoint gradients compared with central finite differences.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nuclear_hva::ansatz::ParameterVector;
use nuclear_hva::models::{AgassiParams, LipkinParams};
use nuclear_hva::vqe::{cost, value_and_gradient, CostContext};

fn main() -> nuclear_hva::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let contexts = [
        ("lipkin_symmetric n=6", CostContext::lipkin(&LipkinParams::new(6), 6, true)?),
        ("lipkin_free n=4", CostContext::lipkin(&LipkinParams::new(4), 4, false)?),
        ("agassi j=2", CostContext::agassi(&AgassiParams::new(2), 2)?),
    ];
    let h = 1e-5;
    for (name, ctx) in &contexts {
        let theta = ParameterVector::uniform(ctx.n_params(), -3.0, 3.0, &mut rng);
        let (energy, grad) = value_and_gradient(ctx, &theta)?;
        let mut worst = 0.0f64;
        for (k, g) in grad.iter().enumerate() {
            let mut plus = theta.clone();
            let mut minus = theta.clone();
            plus.0[k] += h;
            minus.0[k] -= h;
            let fd = (cost(ctx, &plus)? - cost(ctx, &minus)?) / (2.0 * h);
            worst = worst.max((g - fd).abs());
        }
        println!("{name}: E = {energy:.8}, {} parameters, max |adjoint − fd| = {worst:.2e}", grad.len());
    }
    Ok(())
}
