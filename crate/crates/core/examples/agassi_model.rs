//! Agassi model: collective operators, the Hamiltonian, its penalty and the
//! half-filling ground energy.

use nuclear_hva::engine::{extremal_eigs, extremal_eigs_in_sector};
use nuclear_hva::fermion::jordan_wigner;
use nuclear_hva::models::{build_agassi, build_agassi_operators, commutes_with_number, AgassiParams};

fn main() -> nuclear_hva::Result<()> {
    let ops = build_agassi_operators(1)?;
    for (name, op) in ops.named() {
        let q = jordan_wigner(op, ops.n_modes())?;
        println!("{name}: {} fermion terms, {} Pauli strings", op.len(), q.len());
    }

    for j in 1..=3 {
        let p = AgassiParams::new(j);
        let d = build_agassi(&p)?;
        let filling = 2 * j as u32;
        let sector = extremal_eigs_in_sector(&d.full_hamiltonian, &|i: usize| i.count_ones() == filling)?;
        let penalized = extremal_eigs(d.target_hamiltonian())?;
        println!(
            "j={j}: {} qubits, conserves N: {}, half-filling E0 {:.10}, penalized E0 {:.10}, penalized E_max {:.2}",
            p.n_qubits(),
            commutes_with_number(&d.full_hamiltonian, j)?,
            sector.e_min,
            penalized.e_min,
            penalized.e_max
        );
        for (k, g) in d.generators.iter().enumerate() {
            println!("  H{} has {} Pauli strings", k + 1, g.len());
        }
    }
    Ok(())
}
