//! Fermionic ladder-operator algebra and the Jordan–Wigner map.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum, DROP_TOLERANCE};

/// Label `(σ, m)` of a single-particle mode in the two-level models.
///
/// `σ ∈ {−1, +1}` selects the level and `m ∈ {−j,…,−1, 1,…,j}` the
/// magnetic substate; `m = 0` does not exist. The lower level occupies
/// qubits `0..2j`, the upper level `2j..4j`, with `m` ascending inside
/// each block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    pub sigma: i8,
    pub m: i32,
}

impl ModeIndex {
    pub fn new(sigma: i8, m: i32) -> Self {
        Self { sigma, m }
    }

    /// Qubit carrying this mode for maximum spin `j`.
    pub fn qubit(&self, j: usize) -> Result<usize> {
        let jj = j as i32;
        if self.sigma != 1 && self.sigma != -1 {
            return Err(Error::InvalidParameter(format!("σ must be ±1, got {}", self.sigma)));
        }
        if self.m == 0 || self.m.abs() > jj {
            return Err(Error::InvalidParameter(format!(
                "m must lie in ±1..=±{j}, got {}",
                self.m
            )));
        }
        let rank = if self.m < 0 { self.m + jj } else { self.m + jj - 1 } as usize;
        Ok(rank + if self.sigma == 1 { 2 * j } else { 0 })
    }

    /// Inverse of [`ModeIndex::qubit`].
    pub fn from_qubit(p: usize, j: usize) -> Result<Self> {
        if p >= 4 * j {
            return Err(Error::ModeOutOfRange { mode: p, n_modes: 4 * j });
        }
        let sigma = if p >= 2 * j { 1 } else { -1 };
        let rank = (p % (2 * j)) as i32;
        let jj = j as i32;
        let m = if rank < jj { rank - jj } else { rank - jj + 1 };
        Ok(Self { sigma, m })
    }

    /// All magnetic substates `−j,…,−1,1,…,j` in qubit order.
    pub fn magnetisations(j: usize) -> Vec<i32> {
        let jj = j as i32;
        (-jj..=jj).filter(|&m| m != 0).collect()
    }
}

/// Creation (`dagger`) or annihilation operator on one mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LadderOp {
    pub mode: usize,
    pub dagger: bool,
}

impl LadderOp {
    pub fn create(mode: usize) -> Self {
        Self { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        Self { mode, dagger: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FermionTerm {
    pub coeff: Complex64,
    /// Operators applied right-to-left, as written left-to-right.
    pub factors: Vec<LadderOp>,
}

/// Linear combination of products of ladder operators.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FermionOpSum {
    pub terms: Vec<FermionTerm>,
}

impl FermionOpSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::product(Complex64::new(1.0, 0.0), vec![])
    }

    pub fn product(coeff: Complex64, factors: Vec<LadderOp>) -> Self {
        Self {
            terms: vec![FermionTerm { coeff, factors }],
        }
    }

    /// `c†_p c_q`
    pub fn hop(p: usize, q: usize) -> Self {
        Self::product(
            Complex64::new(1.0, 0.0),
            vec![LadderOp::create(p), LadderOp::annihilate(q)],
        )
    }

    /// `n_p = c†_p c_p`
    pub fn number(p: usize) -> Self {
        Self::hop(p, p)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_mode(&self) -> Option<usize> {
        self.terms
            .iter()
            .flat_map(|t| t.factors.iter().map(|f| f.mode))
            .max()
    }

    pub fn add(&self, other: &FermionOpSum) -> FermionOpSum {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        FermionOpSum { terms }
    }

    pub fn scaled(&self, factor: Complex64) -> FermionOpSum {
        FermionOpSum {
            terms: self
                .terms
                .iter()
                .map(|t| FermionTerm {
                    coeff: t.coeff * factor,
                    factors: t.factors.clone(),
                })
                .collect(),
        }
    }

    pub fn scaled_real(&self, factor: f64) -> FermionOpSum {
        self.scaled(Complex64::new(factor, 0.0))
    }

    /// Operator product `self · other` (concatenated factor lists).
    pub fn mul(&self, other: &FermionOpSum) -> FermionOpSum {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut factors = a.factors.clone();
                factors.extend_from_slice(&b.factors);
                terms.push(FermionTerm {
                    coeff: a.coeff * b.coeff,
                    factors,
                });
            }
        }
        FermionOpSum { terms }
    }

    pub fn adjoint(&self) -> FermionOpSum {
        FermionOpSum {
            terms: self
                .terms
                .iter()
                .map(|t| FermionTerm {
                    coeff: t.coeff.conj(),
                    factors: t
                        .factors
                        .iter()
                        .rev()
                        .map(|f| LadderOp {
                            mode: f.mode,
                            dagger: !f.dagger,
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Rewrites every product with creators left of annihilators, both in
    /// descending mode order, using the canonical anticommutation relations.
    /// Equal products are merged and vanishing coefficients dropped.
    pub fn normal_ordered(&self) -> FermionOpSum {
        let mut collected: BTreeMap<Vec<LadderOp>, Complex64> = BTreeMap::new();
        let mut work: Vec<FermionTerm> = self.terms.clone();
        while let Some(term) = work.pop() {
            if let Some(ordered) = order_term(term, &mut work) {
                *collected
                    .entry(ordered.factors)
                    .or_insert(Complex64::new(0.0, 0.0)) += ordered.coeff;
            }
        }
        FermionOpSum {
            terms: collected
                .into_iter()
                .filter(|(_, c)| c.norm() >= DROP_TOLERANCE)
                .map(|(factors, coeff)| FermionTerm { coeff, factors })
                .collect(),
        }
    }
}

fn in_normal_order(a: &LadderOp, b: &LadderOp) -> bool {
    match (a.dagger, b.dagger) {
        (true, false) => true,
        (false, true) => false,
        _ => a.mode > b.mode,
    }
}

/// Bubble-sorts one product. Contraction terms produced by `{c_p, c†_p} = 1`
/// are pushed onto `work`. Returns `None` when the product vanishes.
fn order_term(mut term: FermionTerm, work: &mut Vec<FermionTerm>) -> Option<FermionTerm> {
    let f = &mut term.factors;
    let n = f.len();
    for i in 1..n {
        let mut k = i;
        while k > 0 && !in_normal_order(&f[k - 1], &f[k]) {
            let (left, right) = (f[k - 1], f[k]);
            if left.mode == right.mode {
                if left.dagger == right.dagger {
                    return None;
                }
                // c_p c†_p = 1 − c†_p c_p
                let mut contracted = f.clone();
                contracted.drain(k - 1..=k);
                work.push(FermionTerm {
                    coeff: term.coeff,
                    factors: contracted,
                });
            }
            f.swap(k - 1, k);
            term.coeff = -term.coeff;
            k -= 1;
        }
    }
    Some(term)
}

fn ladder_image(op: LadderOp, n_modes: usize) -> Result<PauliSum> {
    if op.mode >= n_modes {
        return Err(Error::ModeOutOfRange {
            mode: op.mode,
            n_modes,
        });
    }
    let mut letters = vec![Pauli::I; n_modes];
    for l in letters.iter_mut().take(op.mode) {
        *l = Pauli::Z;
    }
    letters[op.mode] = Pauli::X;
    let x = PauliString::from_letters(&letters, Complex64::new(0.5, 0.0))?;
    letters[op.mode] = Pauli::Y;
    let y_coeff = if op.dagger { -0.5 } else { 0.5 };
    let y = PauliString::from_letters(&letters, Complex64::new(0.0, y_coeff))?;
    PauliSum::from_strings(n_modes, [x, y])
}

/// Maps `c_p ↦ (∏_{q<p} Z_q)(X_p + iY_p)/2` and `c†_p` to its adjoint.
pub fn jordan_wigner(f: &FermionOpSum, n_modes: usize) -> Result<PauliSum> {
    let mut images: BTreeMap<LadderOp, PauliSum> = BTreeMap::new();
    let mut out = PauliSum::zero(n_modes)?;
    for term in &f.terms {
        let mut product = PauliSum::identity(n_modes)?.scaled(term.coeff);
        for op in &term.factors {
            let image = match images.get(op) {
                Some(img) => img,
                None => {
                    let img = ladder_image(*op, n_modes)?;
                    images.entry(*op).or_insert(img)
                }
            };
            product = product.try_mul(image)?;
        }
        for p in product.iter() {
            out.add_string(p)?;
        }
    }
    out.chop();
    Ok(out)
}
