//! Extremal eigenvalues: restarted Lanczos and a dense oracle.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::expm::{lanczos_basis, tridiagonal_eigen};
use crate::engine::operator::SparseOperator;
use crate::error::{Error, Result};
use crate::pauli::PauliSum;
use crate::state::{norm, StateVector};

/// Largest register the dense solver accepts.
pub const DENSE_MAX_QUBITS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBounds {
    pub e_min: f64,
    pub e_max: f64,
}

impl SpectrumBounds {
    pub fn width(&self) -> f64 {
        self.e_max - self.e_min
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    pub max_basis: usize,
    pub max_restarts: usize,
    /// Ritz residual target, relative to `max(1, |λ|)`.
    pub tol: f64,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            max_basis: 100,
            max_restarts: 200,
            tol: 1e-10,
            seed: 0x5eed,
        }
    }
}

/// Smallest and largest eigenvalue of `h` by matrix-free Lanczos.
pub fn extremal_eigs(h: &PauliSum) -> Result<SpectrumBounds> {
    extremal_eigs_with(h, None, &LanczosOptions::default())
}

/// Extremal eigenvalues of `h` restricted to the basis states accepted by
/// `sector`. `h` must not couple the sector to its complement.
pub fn extremal_eigs_in_sector(h: &PauliSum, sector: &dyn Fn(usize) -> bool) -> Result<SpectrumBounds> {
    extremal_eigs_with(h, Some(sector), &LanczosOptions::default())
}

pub fn extremal_eigs_with(
    h: &PauliSum,
    sector: Option<&dyn Fn(usize) -> bool>,
    opts: &LanczosOptions,
) -> Result<SpectrumBounds> {
    h.ensure_hermitian()?;
    let op = SparseOperator::new(h);
    let dim = op.dim();
    let mask: Option<Vec<bool>> = sector.map(|s| (0..dim).map(s).collect());
    let sector_dim = mask.as_ref().map_or(dim, |m| m.iter().filter(|&&b| b).count());
    if sector_dim == 0 {
        return Err(Error::InvalidParameter("empty sector".into()));
    }
    if h.is_diagonal() {
        // eigenvalues are the diagonal entries themselves
        let (mut e_min, mut e_max) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in (0..dim).filter(|&i| mask.as_ref().map_or(true, |m| m[i])) {
            let e = op.element(i, i).re;
            e_min = e_min.min(e);
            e_max = e_max.max(e);
        }
        return Ok(SpectrumBounds { e_min, e_max });
    }
    let project = |v: &mut [Complex64]| {
        if let Some(m) = &mask {
            for (a, &keep) in v.iter_mut().zip(m) {
                if !keep {
                    *a = Complex64::new(0.0, 0.0);
                }
            }
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut start = StateVector::random(op.n_qubits(), &mut rng)?.into_amplitudes();
    project(&mut start);

    let max_basis = opts.max_basis.min(sector_dim);
    let mut worst = f64::INFINITY;
    for _ in 0..=opts.max_restarts {
        let basis = lanczos_basis(&op, &start, max_basis, Some(&project))?;
        let m = basis.alpha.len();
        let eig = tridiagonal_eigen(&basis.alpha, &basis.beta[..m - 1]);
        let coupling = basis.beta[m - 1];
        let (lo, hi) = extreme_indices(eig.eigenvalues.as_slice());
        let (e_min, e_max) = (eig.eigenvalues[lo], eig.eigenvalues[hi]);
        let res_lo = coupling * eig.eigenvectors[(m - 1, lo)].abs();
        let res_hi = coupling * eig.eigenvectors[(m - 1, hi)].abs();
        let ok_lo = res_lo <= opts.tol * e_min.abs().max(1.0);
        let ok_hi = res_hi <= opts.tol * e_max.abs().max(1.0);
        worst = res_lo.max(res_hi);
        if ok_lo && ok_hi {
            return Ok(SpectrumBounds { e_min, e_max });
        }
        // restart from the unconverged Ritz vectors
        let mut next = vec![Complex64::new(0.0, 0.0); dim];
        for (k, ok) in [(lo, ok_lo), (hi, ok_hi)] {
            if ok {
                continue;
            }
            for (r, q) in basis.vectors.iter().enumerate() {
                let c = eig.eigenvectors[(r, k)];
                for (ni, qi) in next.iter_mut().zip(q) {
                    *ni += qi * c;
                }
            }
        }
        project(&mut next);
        let n = norm(&next);
        next.iter_mut().for_each(|a| *a /= n);
        start = next;
    }
    Err(Error::NotConverged {
        what: "Lanczos extremal eigenvalues",
        iterations: opts.max_restarts,
        residual: worst,
    })
}

fn extreme_indices(values: &[f64]) -> (usize, usize) {
    let mut lo = 0;
    let mut hi = 0;
    for (i, &v) in values.iter().enumerate() {
        if v < values[lo] {
            lo = i;
        }
        if v > values[hi] {
            hi = i;
        }
    }
    (lo, hi)
}

/// Dense `2^n × 2^n` matrix of `h`.
pub fn dense_matrix(h: &PauliSum) -> Result<DMatrix<Complex64>> {
    if h.n_qubits() > DENSE_MAX_QUBITS {
        return Err(Error::InvalidParameter(format!(
            "dense matrices are limited to {DENSE_MAX_QUBITS} qubits"
        )));
    }
    let op = SparseOperator::new(h);
    Ok(DMatrix::from_fn(op.dim(), op.dim(), |r, c| op.element(r, c)))
}

/// Full ascending spectrum by dense diagonalization.
pub fn dense_spectrum(h: &PauliSum) -> Result<Vec<f64>> {
    h.ensure_hermitian()?;
    let eig = SymmetricEigen::new(dense_matrix(h)?);
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Dense fallback for [`extremal_eigs`] on at most [`DENSE_MAX_QUBITS`] qubits.
pub fn extremal_eigs_dense(h: &PauliSum) -> Result<SpectrumBounds> {
    let values = dense_spectrum(h)?;
    Ok(SpectrumBounds {
        e_min: values[0],
        e_max: values[values.len() - 1],
    })
}
