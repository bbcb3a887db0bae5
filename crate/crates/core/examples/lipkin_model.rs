//! Lipkin Hamiltonian: construction, text dump and exact extremal energies.

use nuclear_hva::engine::{dense_spectrum, extremal_eigs};
use nuclear_hva::models::{build_lipkin, LipkinParams};

fn main() -> nuclear_hva::Result<()> {
    let d = build_lipkin(&LipkinParams::new(2))?;
    print!("n=2 Hamiltonian:\n{}", d.full_hamiltonian.to_text());
    println!("dense spectrum {:?}", dense_spectrum(&d.full_hamiltonian)?);
    println!("closed form ground energy {}", -(4.0f64 + 0.25).sqrt());

    for n in [4, 6, 8, 10, 12] {
        let d = build_lipkin(&LipkinParams::new(n))?;
        let b = extremal_eigs(&d.full_hamiltonian)?;
        println!("n={n:>2}: {:>4} terms, E_min {:.10}, E_max {:.10}", d.full_hamiltonian.len(), b.e_min, b.e_max);
    }
    Ok(())
}
