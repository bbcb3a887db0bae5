//! Matrix-free action of a [`PauliSum`] on amplitude vectors.
//!
//! Terms are grouped by X-mask. Every group is a matrix with exactly one
//! nonzero per column: `H|i⟩ = Σ_x d_x(i) |i ⊕ x⟩`, where `d_x(i)` folds
//! the coefficients, `i^{#Y}` phases and Z-signs of all terms sharing `x`.
//! The product is evaluated in gather form, `(Hψ)[k] = Σ_x d_x(k⊕x) ψ[k⊕x]`,
//! so each output amplitude is an independent, fixed-order sum and the
//! result does not depend on how the work is split across threads.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pauli::{PauliSum, I_POWERS};

/// Tables are precomputed while `groups × 2^n` stays below this many entries.
const TABLE_BUDGET: usize = 1 << 24;

/// Below this dimension the product runs on the calling thread.
const PARALLEL_DIM: usize = 1 << 14;

const CHUNK: usize = 1 << 12;

#[derive(Debug, Clone)]
struct Group {
    x: u64,
    /// `(z, coeff · i^{#Y})` for every term with this X-mask.
    terms: Vec<(u64, Complex64)>,
    /// `d_x(i)` for all `i`, when within budget.
    table: Option<Vec<Complex64>>,
}

impl Group {
    #[inline]
    fn coefficient(&self, basis: usize) -> Complex64 {
        match &self.table {
            Some(t) => t[basis],
            None => self
                .terms
                .iter()
                .map(|&(z, c)| {
                    if (basis as u64 & z).count_ones() % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .sum(),
        }
    }
}

/// Compiled, reusable form of a [`PauliSum`].
#[derive(Debug, Clone)]
pub struct SparseOperator {
    n_qubits: usize,
    groups: Vec<Group>,
}

impl SparseOperator {
    pub fn new(h: &PauliSum) -> Self {
        let n_qubits = h.n_qubits();
        let dim = 1usize << n_qubits;
        let mut groups: Vec<Group> = Vec::new();
        for p in h.iter() {
            let phase = I_POWERS[((p.x_mask() & p.z_mask()).count_ones() % 4) as usize];
            let entry = (p.z_mask(), p.coeff * phase);
            match groups.iter_mut().find(|g| g.x == p.x_mask()) {
                Some(g) => g.terms.push(entry),
                None => groups.push(Group {
                    x: p.x_mask(),
                    terms: vec![entry],
                    table: None,
                }),
            }
        }
        groups.sort_by_key(|g| g.x);
        if groups.len().saturating_mul(dim) <= TABLE_BUDGET {
            for g in &mut groups {
                let table = (0..dim).map(|i| g.coefficient(i)).collect();
                g.table = Some(table);
            }
        }
        Self { n_qubits, groups }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    /// Number of distinct X-masks.
    pub fn n_groups(&self) -> usize {
        self.groups.len()
    }

    /// Nonzero off-diagonal couplings `(i, i ⊕ x, ⟨i⊕x|H|i⟩)`, used to find
    /// invariant blocks.
    pub(crate) fn for_each_coupling(&self, tol: f64, mut f: impl FnMut(usize, usize)) {
        for g in self.groups.iter().filter(|g| g.x != 0) {
            for i in 0..self.dim() {
                if g.coefficient(i).norm() > tol {
                    f(i, i ^ g.x as usize);
                }
            }
        }
    }

    /// Matrix element `⟨row|H|col⟩`.
    pub fn element(&self, row: usize, col: usize) -> Complex64 {
        let x = (row ^ col) as u64;
        self.groups
            .iter()
            .find(|g| g.x == x)
            .map(|g| g.coefficient(col))
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.dim() {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: self.n_qubits,
                actual: len.trailing_zeros() as usize,
            })
        }
    }

    /// `out = H·psi`.
    pub fn apply_into(&self, psi: &[Complex64], out: &mut [Complex64]) -> Result<()> {
        self.check_len(psi.len())?;
        self.check_len(out.len())?;
        let fill = |offset: usize, chunk: &mut [Complex64]| {
            chunk.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
            for g in &self.groups {
                let x = g.x as usize;
                match &g.table {
                    Some(t) => {
                        for (k, o) in chunk.iter_mut().enumerate() {
                            let src = (offset + k) ^ x;
                            *o += t[src] * psi[src];
                        }
                    }
                    None => {
                        for (k, o) in chunk.iter_mut().enumerate() {
                            let src = (offset + k) ^ x;
                            *o += g.coefficient(src) * psi[src];
                        }
                    }
                }
            }
        };
        if out.len() >= PARALLEL_DIM {
            out.par_chunks_mut(CHUNK)
                .enumerate()
                .for_each(|(c, chunk)| fill(c * CHUNK, chunk));
        } else {
            fill(0, out);
        }
        Ok(())
    }

    pub fn apply(&self, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        self.apply_into(psi, &mut out)?;
        Ok(out)
    }

    /// `⟨psi|H|psi⟩` (complex; the imaginary part vanishes for Hermitian H).
    pub fn quadratic_form(&self, psi: &[Complex64]) -> Result<Complex64> {
        let h_psi = self.apply(psi)?;
        Ok(crate::state::inner(psi, &h_psi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn x0_flips_bit_zero() {
        let h = PauliSum::from_labels(2, &[(1.0, "XI")]).unwrap();
        let op = SparseOperator::new(&h);
        let out = op.apply(&[c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap();
        assert_eq!(out, vec![c(0.0), c(1.0), c(0.0), c(0.0)]);
    }

    #[test]
    fn z_sum_on_all_zeros() {
        let h = PauliSum::from_labels(2, &[(1.0, "ZI"), (1.0, "IZ")]).unwrap();
        let out = SparseOperator::new(&h).apply(&[c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap();
        assert_eq!(out[0], c(2.0));
    }

    #[test]
    fn y_action() {
        // Y|0⟩ = i|1⟩, Y|1⟩ = −i|0⟩
        let op = SparseOperator::new(&PauliSum::from_labels(1, &[(1.0, "Y")]).unwrap());
        assert_eq!(op.element(1, 0), Complex64::new(0.0, 1.0));
        assert_eq!(op.element(0, 1), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn size_mismatch() {
        let op = SparseOperator::new(&PauliSum::from_labels(2, &[(1.0, "ZZ")]).unwrap());
        assert!(op.apply(&[c(1.0), c(0.0)]).is_err());
    }
}
