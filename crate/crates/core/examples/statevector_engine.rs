//! The statevector engine: Pauli-sum action, expectation values and the
//! exponential routes chosen for different generators.

use std::f64::consts::FRAC_PI_4;

use nuclear_hva::engine::{apply_exp, expectation, ExpKernel};
use nuclear_hva::models::{build_agassi, build_lipkin, AgassiParams, LipkinParams};
use nuclear_hva::pauli::PauliSum;
use nuclear_hva::state::StateVector;

fn main() -> nuclear_hva::Result<()> {
    // exp(−iπ/4·X) on |0⟩ gives (|0⟩ − i|1⟩)/√2
    let x = PauliSum::from_labels(1, &[(1.0, "X")])?;
    let out = apply_exp(&x, FRAC_PI_4, &StateVector::zero_state(1)?)?;
    println!("exp(−iπ/4 X)|0⟩ = {:?}", out.amplitudes());

    let z = PauliSum::from_labels(1, &[(1.0, "Z")])?;
    println!("⟨Z⟩ = {}", expectation(&z, &out)?);

    let lipkin = build_lipkin(&LipkinParams::new(6))?;
    let agassi = build_agassi(&AgassiParams::new(2))?;
    for (name, g) in [
        ("Lipkin Σ XX", &lipkin.generators[0]),
        ("Lipkin Σ Z", &lipkin.generators[1]),
        ("Agassi H1", &agassi.generators[0]),
        ("Agassi H2", &agassi.generators[1]),
        ("Agassi H3", &agassi.generators[2]),
        ("Agassi H", &agassi.full_hamiltonian),
    ] {
        println!("{name:<12} → {:?}", ExpKernel::new(g)?.method());
    }

    let psi0 = StateVector::basis(8, 0b1111)?;
    let evolved = apply_exp(&agassi.full_hamiltonian, 0.3, &psi0)?;
    println!(
        "energy before {:.12}, after exp(−i·0.3·H) {:.12}",
        expectation(&agassi.full_hamiltonian, &psi0)?,
        expectation(&agassi.full_hamiltonian, &evolved)?
    );
    Ok(())
}
