//! Exact application of `exp(−iθG)` for Hermitian Pauli-sum generators.
//!
//! Three evaluation routes are available and picked automatically:
//!
//! * **Commuting terms.** When every pair of terms commutes the exponential
//!   factorizes into single-string rotations
//!   `exp(−iθcP) = cos(θc) − i sin(θc) P`; a purely diagonal generator is a
//!   pointwise phase.
//! * **Block spectral.** The generator's nonzero couplings split the basis
//!   into invariant blocks. When every block is small each one is
//!   diagonalized once and the exponential is applied blockwise for any θ.
//!   The number-conserving pair and monopole generators of the two-level
//!   models fall in this class.
//! * **Krylov.** Lanczos exponential-times-vector with full
//!   reorthogonalization and adaptive substeps, for everything else.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::engine::operator::SparseOperator;
use crate::error::{Error, Result};
use crate::pauli::{PauliSum, I_POWERS};
use crate::state::{inner, norm};

/// Largest invariant block the spectral route will diagonalize.
pub const BLOCK_LIMIT: usize = 256;

/// Couplings below this modulus do not join blocks.
const COUPLING_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpMethod {
    Auto,
    Commuting,
    BlockSpectral,
    Krylov,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrylovOptions {
    /// Maximum Krylov subspace dimension per substep.
    pub dim: usize,
    /// Target L2 error of the full propagation.
    pub tol: f64,
    /// Substep budget before giving up.
    pub max_substeps: usize,
}

impl Default for KrylovOptions {
    fn default() -> Self {
        Self {
            dim: 30,
            tol: 1e-12,
            max_substeps: 100_000,
        }
    }
}

#[derive(Debug, Clone)]
struct Rotation {
    x: usize,
    z: u64,
    /// `i^{#Y}`
    phase: Complex64,
    coeff: f64,
}

#[derive(Debug, Clone)]
struct Block {
    indices: Vec<usize>,
    eigenvalues: Vec<f64>,
    /// Column-major eigenvectors, `dim × dim`.
    vectors: Vec<Complex64>,
}

#[derive(Debug, Clone)]
enum Kind {
    Diagonal(Vec<f64>),
    Rotations(Vec<Rotation>),
    Blocks {
        singletons: Vec<(usize, f64)>,
        blocks: Vec<Block>,
    },
    Krylov {
        op: SparseOperator,
        opts: KrylovOptions,
    },
}

/// Precompiled propagator for one generator, reusable for any angle.
#[derive(Debug, Clone)]
pub struct ExpKernel {
    n_qubits: usize,
    kind: Kind,
}

impl ExpKernel {
    pub fn new(g: &PauliSum) -> Result<Self> {
        Self::with_method(g, ExpMethod::Auto)
    }

    /// Forces a route. `Commuting` and `BlockSpectral` fail when the
    /// generator does not have the required structure.
    pub fn with_method(g: &PauliSum, method: ExpMethod) -> Result<Self> {
        g.ensure_hermitian()?;
        let n_qubits = g.n_qubits();
        let kind = match method {
            ExpMethod::Auto => {
                if g.terms_commute() {
                    commuting_kind(g)
                } else {
                    let op = SparseOperator::new(g);
                    match block_kind(&op) {
                        Some(k) => k,
                        None => Kind::Krylov {
                            op,
                            opts: KrylovOptions::default(),
                        },
                    }
                }
            }
            ExpMethod::Commuting => {
                if !g.terms_commute() {
                    return Err(Error::InvalidParameter(
                        "generator terms do not all commute".into(),
                    ));
                }
                commuting_kind(g)
            }
            ExpMethod::BlockSpectral => block_kind(&SparseOperator::new(g)).ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "generator has an invariant block larger than {BLOCK_LIMIT}"
                ))
            })?,
            ExpMethod::Krylov => Kind::Krylov {
                op: SparseOperator::new(g),
                opts: KrylovOptions::default(),
            },
        };
        Ok(Self { n_qubits, kind })
    }

    pub fn krylov(g: &PauliSum, opts: KrylovOptions) -> Result<Self> {
        g.ensure_hermitian()?;
        Ok(Self {
            n_qubits: g.n_qubits(),
            kind: Kind::Krylov {
                op: SparseOperator::new(g),
                opts,
            },
        })
    }

    /// The route in use; never `Auto`.
    pub fn method(&self) -> ExpMethod {
        match self.kind {
            Kind::Diagonal(_) | Kind::Rotations(_) => ExpMethod::Commuting,
            Kind::Blocks { .. } => ExpMethod::BlockSpectral,
            Kind::Krylov { .. } => ExpMethod::Krylov,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// `psi ← exp(−iθG) psi`
    pub fn apply_in_place(&self, theta: f64, psi: &mut [Complex64]) -> Result<()> {
        let dim = 1usize << self.n_qubits;
        if psi.len() != dim {
            return Err(Error::SizeMismatch {
                expected: self.n_qubits,
                actual: psi.len().trailing_zeros() as usize,
            });
        }
        if theta == 0.0 {
            return Ok(());
        }
        match &self.kind {
            Kind::Diagonal(d) => {
                for (a, &e) in psi.iter_mut().zip(d) {
                    *a *= Complex64::from_polar(1.0, -theta * e);
                }
            }
            Kind::Rotations(rots) => {
                for r in rots {
                    apply_rotation(r, theta, psi);
                }
            }
            Kind::Blocks { singletons, blocks } => {
                for &(i, e) in singletons {
                    psi[i] *= Complex64::from_polar(1.0, -theta * e);
                }
                let mut coeffs = Vec::new();
                for b in blocks {
                    apply_block(b, theta, psi, &mut coeffs);
                }
            }
            Kind::Krylov { op, opts } => {
                let out = expm_krylov(op, theta, psi, opts)?;
                psi.copy_from_slice(&out);
            }
        }
        Ok(())
    }
}

fn commuting_kind(g: &PauliSum) -> Kind {
    if g.is_diagonal() {
        let dim = 1usize << g.n_qubits();
        let mut diag = vec![0.0; dim];
        for p in g.iter() {
            let (z, c) = (p.z_mask(), p.coeff.re);
            for (i, d) in diag.iter_mut().enumerate() {
                if (i as u64 & z).count_ones() % 2 == 0 {
                    *d += c;
                } else {
                    *d -= c;
                }
            }
        }
        Kind::Diagonal(diag)
    } else {
        Kind::Rotations(
            g.iter()
                .map(|p| Rotation {
                    x: p.x_mask() as usize,
                    z: p.z_mask(),
                    phase: I_POWERS[((p.x_mask() & p.z_mask()).count_ones() % 4) as usize],
                    coeff: p.coeff.re,
                })
                .collect(),
        )
    }
}

#[inline]
fn z_sign(i: usize, z: u64) -> f64 {
    if (i as u64 & z).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn apply_rotation(r: &Rotation, theta: f64, psi: &mut [Complex64]) {
    let angle = theta * r.coeff;
    if r.x == 0 {
        // no Y letters, so the phase is 1
        let plus = Complex64::from_polar(1.0, -angle);
        let minus = plus.conj();
        for (i, a) in psi.iter_mut().enumerate() {
            *a *= if z_sign(i, r.z) > 0.0 { plus } else { minus };
        }
        return;
    }
    let (s, c) = angle.sin_cos();
    let mis = Complex64::new(0.0, -s) * r.phase;
    let high = 1usize << (usize::BITS - 1 - r.x.leading_zeros());
    for k in 0..psi.len() {
        if k & high != 0 {
            continue;
        }
        let l = k ^ r.x;
        let (a, b) = (psi[k], psi[l]);
        // (Pψ)[k] = phase·sign(l)·ψ[l], (Pψ)[l] = phase·sign(k)·ψ[k]
        psi[k] = a * c + mis * z_sign(l, r.z) * b;
        psi[l] = b * c + mis * z_sign(k, r.z) * a;
    }
}

fn apply_block(b: &Block, theta: f64, psi: &mut [Complex64], coeffs: &mut Vec<Complex64>) {
    let d = b.indices.len();
    coeffs.clear();
    for (k, &lambda) in b.eigenvalues.iter().enumerate() {
        let col = &b.vectors[k * d..(k + 1) * d];
        let proj: Complex64 = col
            .iter()
            .zip(&b.indices)
            .map(|(v, &i)| v.conj() * psi[i])
            .sum();
        coeffs.push(proj * Complex64::from_polar(1.0, -theta * lambda));
    }
    for (r, &i) in b.indices.iter().enumerate() {
        psi[i] = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| b.vectors[k * d + r] * c)
            .sum();
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn block_kind(op: &SparseOperator) -> Option<Kind> {
    let dim = op.dim();
    let mut parent: Vec<usize> = (0..dim).collect();
    let mut size = vec![1usize; dim];
    let mut too_big = false;
    op.for_each_coupling(COUPLING_TOL, |i, j| {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            let (big, small) = if size[ri] >= size[rj] { (ri, rj) } else { (rj, ri) };
            parent[small] = big;
            size[big] += size[small];
            too_big |= size[big] > BLOCK_LIMIT;
        }
    });
    if too_big {
        return None;
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); dim];
    for i in 0..dim {
        let r = find(&mut parent, i);
        members[r].push(i);
    }
    let mut singletons = Vec::new();
    let mut blocks = Vec::new();
    for indices in members.into_iter().filter(|m| !m.is_empty()) {
        if indices.len() == 1 {
            singletons.push((indices[0], op.element(indices[0], indices[0]).re));
            continue;
        }
        let d = indices.len();
        let m = DMatrix::from_fn(d, d, |r, c| op.element(indices[r], indices[c]));
        let eig = SymmetricEigen::new(m);
        let mut vectors = Vec::with_capacity(d * d);
        for k in 0..d {
            vectors.extend(eig.eigenvectors.column(k).iter().copied());
        }
        blocks.push(Block {
            indices,
            eigenvalues: eig.eigenvalues.iter().copied().collect(),
            vectors,
        });
    }
    Some(Kind::Blocks { singletons, blocks })
}

/// Lanczos basis of `op` started from `v`.
pub(crate) struct LanczosBasis {
    pub vectors: Vec<Vec<Complex64>>,
    pub alpha: Vec<f64>,
    /// Off-diagonal couplings; `beta[k]` links vectors `k` and `k+1`.
    /// Has one more entry than `alpha` minus one; the last entry is the
    /// residual norm (zero on breakdown).
    pub beta: Vec<f64>,
}

/// Runs up to `max_dim` Lanczos steps with full reorthogonalization.
/// `project` is applied to every new vector (sector restriction).
pub(crate) fn lanczos_basis(
    op: &SparseOperator,
    start: &[Complex64],
    max_dim: usize,
    project: Option<&dyn Fn(&mut [Complex64])>,
) -> Result<LanczosBasis> {
    let n0 = norm(start);
    let mut q: Vec<Complex64> = start.iter().map(|a| a / n0).collect();
    let mut vectors: Vec<Vec<Complex64>> = Vec::with_capacity(max_dim);
    let mut alpha = Vec::with_capacity(max_dim);
    let mut beta = Vec::with_capacity(max_dim);
    let mut w = vec![Complex64::new(0.0, 0.0); start.len()];
    let max_dim = max_dim.min(start.len());
    for _ in 0..max_dim {
        op.apply_into(&q, &mut w)?;
        if let Some(p) = project {
            p(&mut w);
        }
        let a = inner(&q, &w).re;
        vectors.push(q);
        alpha.push(a);
        // two passes of classical Gram–Schmidt against the whole basis
        for _ in 0..2 {
            for v in &vectors {
                let c = inner(v, &w);
                for (wi, vi) in w.iter_mut().zip(v) {
                    *wi -= c * vi;
                }
            }
        }
        let b = norm(&w);
        let scale = alpha.iter().map(|a: &f64| a.abs()).fold(1e-300, f64::max)
            + beta.iter().copied().fold(0.0, f64::max);
        if b <= 1e-13 * scale || vectors.len() == start.len() {
            beta.push(0.0);
            return Ok(LanczosBasis { vectors, alpha, beta });
        }
        beta.push(b);
        q = w.iter().map(|x| x / b).collect();
    }
    Ok(LanczosBasis { vectors, alpha, beta })
}

pub(crate) fn tridiagonal_eigen(alpha: &[f64], beta: &[f64]) -> SymmetricEigen<f64, nalgebra::Dyn> {
    let m = alpha.len();
    let t = DMatrix::from_fn(m, m, |r, c| {
        if r == c {
            alpha[r]
        } else if r + 1 == c {
            beta[r]
        } else if c + 1 == r {
            beta[c]
        } else {
            0.0
        }
    });
    SymmetricEigen::new(t)
}

/// `exp(−iθH)ψ` by Lanczos with adaptive substeps.
pub fn expm_krylov(
    op: &SparseOperator,
    theta: f64,
    psi: &[Complex64],
    opts: &KrylovOptions,
) -> Result<Vec<Complex64>> {
    let total = theta.abs();
    let sign = theta.signum();
    let mut v = psi.to_vec();
    let mut done = 0.0;
    let mut substeps = 0;
    let mut last_err = 0.0;
    while done < total {
        if substeps >= opts.max_substeps {
            return Err(Error::NotConverged {
                what: "Krylov exponential",
                iterations: substeps,
                residual: last_err,
            });
        }
        substeps += 1;
        let beta0 = norm(&v);
        if beta0 == 0.0 {
            return Ok(v);
        }
        let basis = lanczos_basis(op, &v, opts.dim, None)?;
        let m = basis.alpha.len();
        let eig = tridiagonal_eigen(&basis.alpha, &basis.beta[..m - 1]);
        let residual = basis.beta[m - 1];
        // f(h) = S exp(−i·sign·h·Λ) Sᵀ e₁
        let f = |h: f64| -> Vec<Complex64> {
            let s = &eig.eigenvectors;
            let w: Vec<Complex64> = (0..m)
                .map(|k| Complex64::from_polar(s[(0, k)], -sign * h * eig.eigenvalues[k]))
                .collect();
            (0..m)
                .map(|r| (0..m).map(|k| w[k] * s[(r, k)]).sum())
                .collect()
        };
        let mut h = total - done;
        let mut coeffs = f(h);
        let mut err = beta0 * residual * coeffs[m - 1].norm();
        let mut halvings = 0;
        while residual > 0.0 && err > opts.tol * h / total && halvings < 60 {
            h *= 0.5;
            coeffs = f(h);
            err = beta0 * residual * coeffs[m - 1].norm();
            halvings += 1;
        }
        last_err = err;
        v.iter_mut().for_each(|a| *a = Complex64::new(0.0, 0.0));
        for (c, q) in coeffs.iter().zip(&basis.vectors) {
            let c = c * beta0;
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi += c * qi;
            }
        }
        done += h;
        if total - done <= total * 1e-15 {
            break;
        }
    }
    Ok(v)
}
