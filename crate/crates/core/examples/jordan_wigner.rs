//! Fermionic operators mapped to qubits with the Jordan–Wigner transform.

use num_complex::Complex64;
use nuclear_hva::fermion::{jordan_wigner, FermionOpSum, LadderOp};
use nuclear_hva::pauli::PauliSum;

fn main() -> nuclear_hva::Result<()> {
    let modes = 3;
    let one = Complex64::new(1.0, 0.0);
    let c = |p| FermionOpSum::product(one, vec![LadderOp::annihilate(p)]);
    let cd = |p| FermionOpSum::product(one, vec![LadderOp::create(p)]);

    for p in 0..modes {
        println!("c_{p} ↦\n{}", jordan_wigner(&c(p), modes)?);
    }

    // canonical anticommutators
    for p in 0..modes {
        for q in 0..modes {
            let anti = c(p).mul(&cd(q)).add(&cd(q).mul(&c(p)));
            let qubit = jordan_wigner(&anti, modes)?;
            let expected = if p == q { PauliSum::identity(modes)? } else { PauliSum::zero(modes)? };
            assert!(qubit.max_difference(&expected)? < 1e-14);
        }
    }
    println!("{{c_p, c_q†}} = δ_pq holds on {modes} modes");

    let hop = FermionOpSum::hop(0, 2).add(&FermionOpSum::hop(2, 0));
    println!("c₀†c₂ + c₂†c₀ ↦\n{}", jordan_wigner(&hop, modes)?);
    println!("n₁ ↦\n{}", jordan_wigner(&FermionOpSum::number(1), modes)?);
    Ok(())
}
