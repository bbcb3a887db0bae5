//! Pauli strings and sums: products, commutators, adjoints and the text format.

use num_complex::Complex64;
use nuclear_hva::pauli::{pauli_multiply, Pauli, PauliString, PauliSum};

fn main() -> nuclear_hva::Result<()> {
    // the first letter is qubit 0
    let x0 = PauliString::single(2, 0, Pauli::X)?;
    let y0 = PauliString::single(2, 0, Pauli::Y)?;
    println!("X0 · Y0 = {}", pauli_multiply(&x0, &y0)?);
    println!("X0 and Y0 commute: {}", x0.commutes_with(&y0));

    let h = PauliSum::from_labels(2, &[(1.0, "XX"), (0.5, "ZI"), (0.5, "IZ")])?;
    let g = PauliSum::from_labels(2, &[(1.0, "YY")])?;
    println!("[H, G] =\n{}", h.commutator(&g)?);
    println!("H² =\n{}", h.try_mul(&h)?);

    let mut lowering = PauliSum::from_labels(1, &[(0.5, "X")])?;
    lowering.add_string(PauliString::single(1, 0, Pauli::Y)?.with_coeff(Complex64::new(0.0, 0.5)))?;
    println!("σ⁺ hermitian: {}, σ⁺† =\n{}", lowering.is_hermitian(), lowering.adjoint());

    let text = h.to_text();
    let back = PauliSum::parse_text(&text, None)?;
    println!("text form:\n{text}round trip difference {:.1e}", back.max_difference(&h)?);
    Ok(())
}
