//! Statevector engine: operator application, exponentials, expectations and
//! spectral bounds.

mod expm;
mod operator;
mod spectrum;

pub use expm::{expm_krylov, ExpKernel, ExpMethod, KrylovOptions, BLOCK_LIMIT};
pub use operator::SparseOperator;
pub use spectrum::{
    dense_matrix, dense_spectrum, extremal_eigs, extremal_eigs_dense, extremal_eigs_in_sector,
    extremal_eigs_with, LanczosOptions, SpectrumBounds, DENSE_MAX_QUBITS,
};

use crate::error::{Error, Result};
use crate::pauli::PauliSum;
use crate::state::StateVector;

/// Imaginary residue tolerated in `⟨ψ|H|ψ⟩` for Hermitian `H`.
pub const EXPECTATION_IMAG_TOL: f64 = 1e-10;

/// `H|ψ⟩` without building a matrix.
pub fn pauli_sum_apply(h: &PauliSum, psi: &StateVector) -> Result<StateVector> {
    check_size(h, psi)?;
    let out = SparseOperator::new(h).apply(psi.amplitudes())?;
    StateVector::from_amplitudes(out)
}

/// `Re⟨ψ|H|ψ⟩` for Hermitian `H`.
pub fn expectation(h: &PauliSum, psi: &StateVector) -> Result<f64> {
    h.ensure_hermitian()?;
    check_size(h, psi)?;
    expectation_with(&SparseOperator::new(h), psi)
}

/// [`expectation`] with a precompiled operator.
pub fn expectation_with(op: &SparseOperator, psi: &StateVector) -> Result<f64> {
    let v = op.quadratic_form(psi.amplitudes())?;
    if v.im.abs() > EXPECTATION_IMAG_TOL * v.re.abs().max(1.0) {
        return Err(Error::NotHermitian(v.im.abs()));
    }
    Ok(v.re)
}

/// `exp(−iθG)|ψ⟩`.
pub fn apply_exp(g: &PauliSum, theta: f64, psi: &StateVector) -> Result<StateVector> {
    check_size(g, psi)?;
    let kernel = ExpKernel::new(g)?;
    let mut out = psi.clone();
    kernel.apply_in_place(theta, out.amplitudes_mut())?;
    Ok(out)
}

/// `⟨N₁ + N₋₁⟩` on `4j` qubits: the expected number of occupied modes.
pub fn particle_number(psi: &StateVector, j: usize) -> Result<f64> {
    if psi.n_qubits() != 4 * j {
        return Err(Error::SizeMismatch {
            expected: 4 * j,
            actual: psi.n_qubits(),
        });
    }
    Ok(psi
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| a.norm_sqr() * i.count_ones() as f64)
        .sum())
}

fn check_size(h: &PauliSum, psi: &StateVector) -> Result<()> {
    if h.n_qubits() == psi.n_qubits() {
        Ok(())
    } else {
        Err(Error::SizeMismatch {
            expected: h.n_qubits(),
            actual: psi.n_qubits(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expectation_of_z_sum_on_zero_state() {
        let h = PauliSum::from_labels(2, &[(1.0, "ZI"), (1.0, "IZ")]).unwrap();
        let psi = StateVector::zero_state(2).unwrap();
        assert_eq!(expectation(&h, &psi).unwrap(), 2.0);
    }

    #[test]
    fn particle_number_of_basis_states() {
        let filled = StateVector::basis(8, 0b1111).unwrap();
        assert_eq!(particle_number(&filled, 2).unwrap(), 4.0);
        assert_eq!(particle_number(&StateVector::zero_state(8).unwrap(), 2).unwrap(), 0.0);
        assert!(particle_number(&filled, 1).is_err());
    }

    #[test]
    fn x0_on_00() {
        let h = PauliSum::from_labels(2, &[(1.0, "XI")]).unwrap();
        let out = pauli_sum_apply(&h, &StateVector::zero_state(2).unwrap()).unwrap();
        assert_eq!(out, StateVector::basis(2, 1).unwrap());
    }
}
