//! Building and running Hamiltonian variational circuits, and saving their
//! parameters.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nuclear_hva::ansatz::{
    build_agassi_ansatz, build_lipkin_ansatz, run_ansatz, warm_start_extend, ParameterFile,
    ParameterVector,
};
use nuclear_hva::engine::particle_number;
use nuclear_hva::state::StateVector;

fn main() -> nuclear_hva::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    for symmetric in [true, false] {
        let a = build_lipkin_ansatz(4, 4, symmetric)?;
        println!("{}: {} gates, {} parameters", a.kind(), a.n_gates(), a.n_params());
    }

    let j = 2;
    let a = build_agassi_ansatz(j, j)?;
    let theta = ParameterVector::uniform(a.n_params(), -10.0, 10.0, &mut rng);
    let psi0 = StateVector::basis(a.n_qubits(), (1 << (2 * j)) - 1)?;
    let out = run_ansatz(&a, &theta, &psi0)?;
    println!("agassi j={j}: ⟨N⟩ = {:.12}, norm {:.12}", particle_number(&out, j)?, out.norm());

    let file = ParameterFile::new(&a, theta.clone(), 7);
    println!("{}", file.to_json()?);

    let extended = warm_start_extend(&theta, &a, &mut rng)?;
    println!("warm start appends {} near-zero angles: {:?}", extended.len() - theta.len(), &extended.0[theta.len()..]);
    Ok(())
}
