//! Lipkin and Agassi Hamiltonians with their variational generators.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fermion::{jordan_wigner, FermionOpSum, LadderOp, ModeIndex};
use crate::pauli::{Pauli, PauliString, PauliSum};

/// Transverse-field Lipkin model on `n` spins,
/// `H = −(λ/n) Σ_{i<k} X_i X_k − h Σ_i Z_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LipkinParams {
    pub n: usize,
    pub lambda: f64,
    pub h: f64,
}

impl LipkinParams {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            lambda: 1.0,
            h: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParameter(format!("Lipkin model needs n ≥ 2, got {}", self.n)));
        }
        if !self.lambda.is_finite() || !self.h.is_finite() {
            return Err(Error::InvalidParameter("λ and h must be finite".into()));
        }
        Ok(())
    }
}

/// Two-level Agassi model at maximum spin `j` on `4j` modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgassiParams {
    pub j: usize,
    pub epsilon: f64,
    pub v: f64,
    pub g: f64,
    /// Weight of the half-filling penalty `β(N − 2j)²`.
    pub beta: f64,
}

impl AgassiParams {
    /// Default couplings `ε = 1, V = 0.5, g = 0.5` with the default penalty.
    pub fn new(j: usize) -> Self {
        Self::with_couplings(j, 1.0, 0.5, 0.5)
    }

    /// Couplings as given, `β = 10·max(|ε|, |V|, |g|)·j`.
    pub fn with_couplings(j: usize, epsilon: f64, v: f64, g: f64) -> Self {
        Self {
            j,
            epsilon,
            v,
            g,
            beta: default_beta(j, epsilon, v, g),
        }
    }

    pub fn n_qubits(&self) -> usize {
        4 * self.j
    }

    pub fn validate(&self) -> Result<()> {
        if self.j < 1 {
            return Err(Error::InvalidParameter("Agassi model needs j ≥ 1".into()));
        }
        if !(self.beta > 0.0) {
            return Err(Error::InvalidParameter(format!("penalty β must be positive, got {}", self.beta)));
        }
        if ![self.epsilon, self.v, self.g, self.beta].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidParameter("couplings must be finite".into()));
        }
        Ok(())
    }
}

pub fn default_beta(j: usize, epsilon: f64, v: f64, g: f64) -> f64 {
    10.0 * epsilon.abs().max(v.abs()).max(g.abs()) * j as f64
}

/// A model Hamiltonian together with the generators its ansatz exponentiates.
#[derive(Debug, Clone)]
pub struct ModelDecomposition {
    pub full_hamiltonian: PauliSum,
    /// Lipkin: `[Σ X_iX_k, Σ Z_i]`. Agassi: `[H₁, H₂, H₃]`.
    pub generators: Vec<PauliSum>,
    /// Agassi only: `H + β(N₁ + N₋₁ − 2j)²`.
    pub penalized_hamiltonian: Option<PauliSum>,
    pub initial_state_index: usize,
}

impl ModelDecomposition {
    pub fn n_qubits(&self) -> usize {
        self.full_hamiltonian.n_qubits()
    }

    /// The operator whose ground state is targeted: penalized when present.
    pub fn target_hamiltonian(&self) -> &PauliSum {
        self.penalized_hamiltonian
            .as_ref()
            .unwrap_or(&self.full_hamiltonian)
    }
}

pub(crate) fn xx_pairs(n: usize) -> Result<PauliSum> {
    let mut s = PauliSum::zero(n)?;
    for i in 0..n {
        for k in i + 1..n {
            let mut letters = vec![Pauli::I; n];
            letters[i] = Pauli::X;
            letters[k] = Pauli::X;
            s.add_string(PauliString::from_letters(&letters, Complex64::new(1.0, 0.0))?)?;
        }
    }
    Ok(s)
}

pub(crate) fn z_field(n: usize) -> Result<PauliSum> {
    PauliSum::from_strings(n, (0..n).map(|q| PauliString::single(n, q, Pauli::Z)).collect::<Result<Vec<_>>>()?)
}

pub fn build_lipkin(p: &LipkinParams) -> Result<ModelDecomposition> {
    p.validate()?;
    let xx = xx_pairs(p.n)?;
    let z = z_field(p.n)?;
    let full = xx
        .scaled_real(-p.lambda / p.n as f64)
        .try_add(&z.scaled_real(-p.h))?;
    Ok(ModelDecomposition {
        full_hamiltonian: full,
        generators: vec![xx, z],
        penalized_hamiltonian: None,
        initial_state_index: 0,
    })
}

/// Collective operators of the Agassi model in fermionic form.
#[derive(Debug, Clone)]
pub struct AgassiOperators {
    pub j: usize,
    pub j0: FermionOpSum,
    pub j_plus: FermionOpSum,
    pub j_minus: FermionOpSum,
    pub a0: FermionOpSum,
    pub a_plus: FermionOpSum,
    pub a_minus: FermionOpSum,
    pub n_upper: FermionOpSum,
    pub n_lower: FermionOpSum,
}

impl AgassiOperators {
    pub fn n_modes(&self) -> usize {
        4 * self.j
    }

    pub fn named(&self) -> [(&'static str, &FermionOpSum); 8] {
        [
            ("J0", &self.j0),
            ("J+", &self.j_plus),
            ("J-", &self.j_minus),
            ("A0", &self.a0),
            ("A1", &self.a_plus),
            ("A-1", &self.a_minus),
            ("N1", &self.n_upper),
            ("N-1", &self.n_lower),
        ]
    }
}

pub fn build_agassi_operators(j: usize) -> Result<AgassiOperators> {
    if j < 1 {
        return Err(Error::InvalidParameter("Agassi model needs j ≥ 1".into()));
    }
    let q = |sigma: i8, m: i32| ModeIndex::new(sigma, m).qubit(j);
    let one = Complex64::new(1.0, 0.0);
    let pair = |a: usize, b: usize, c: Complex64| {
        FermionOpSum::product(c, vec![LadderOp::annihilate(a), LadderOp::annihilate(b)])
    };

    let mut j0 = FermionOpSum::zero();
    let mut j_plus = FermionOpSum::zero();
    let mut n_upper = FermionOpSum::zero();
    let mut n_lower = FermionOpSum::zero();
    for m in ModeIndex::magnetisations(j) {
        let (up, down) = (q(1, m)?, q(-1, m)?);
        j0 = j0
            .add(&FermionOpSum::number(up).scaled_real(0.5))
            .add(&FermionOpSum::number(down).scaled_real(-0.5));
        j_plus = j_plus.add(&FermionOpSum::hop(up, down));
        n_upper = n_upper.add(&FermionOpSum::number(up));
        n_lower = n_lower.add(&FermionOpSum::number(down));
    }
    let j_minus = j_plus.adjoint();

    let mut a0 = FermionOpSum::zero();
    let mut a_plus = FermionOpSum::zero();
    let mut a_minus = FermionOpSum::zero();
    for m in 1..=j as i32 {
        a0 = a0
            .add(&pair(q(1, -m)?, q(-1, m)?, one))
            .add(&pair(q(1, m)?, q(-1, -m)?, -one));
        a_plus = a_plus.add(&pair(q(1, -m)?, q(1, m)?, one));
        a_minus = a_minus.add(&pair(q(-1, -m)?, q(-1, m)?, one));
    }

    Ok(AgassiOperators {
        j,
        j0,
        j_plus,
        j_minus,
        a0,
        a_plus,
        a_minus,
        n_upper,
        n_lower,
    })
}

/// Penalty `(N₁ + N₋₁ − 2j)²` in qubit form.
pub fn half_filling_penalty(j: usize) -> Result<PauliSum> {
    let n = 4 * j;
    let mut shifted = PauliSum::identity(n)?.scaled_real(-2.0 * j as f64);
    for q in 0..n {
        // n_q = (I − Z_q)/2
        shifted.add_string(PauliString::identity(n)?.with_coeff(Complex64::new(0.5, 0.0)))?;
        shifted.add_string(PauliString::single(n, q, Pauli::Z)?.with_coeff(Complex64::new(-0.5, 0.0)))?;
    }
    shifted.chop();
    shifted.try_mul(&shifted)
}

pub fn build_agassi(p: &AgassiParams) -> Result<ModelDecomposition> {
    p.validate()?;
    let ops = build_agassi_operators(p.j)?;
    let n = ops.n_modes();
    let h1 = jordan_wigner(&ops.j0, n)?;
    let h2 = jordan_wigner(
        &ops.j_plus
            .mul(&ops.j_plus)
            .add(&ops.j_minus.mul(&ops.j_minus)),
        n,
    )?;
    // Σ_{σ,σ'} A†_σ A_σ' = (A₁ + A₋₁)†(A₁ + A₋₁)
    let a = ops.a_plus.add(&ops.a_minus);
    let h3 = jordan_wigner(&a.adjoint().mul(&a), n)?;

    let full = h1
        .scaled_real(p.epsilon)
        .try_add(&h2.scaled_real(-p.v / 2.0))?
        .try_add(&h3.scaled_real(-p.g))?;
    let penalized = full.try_add(&half_filling_penalty(p.j)?.scaled_real(p.beta))?;
    Ok(ModelDecomposition {
        full_hamiltonian: full,
        generators: vec![h1, h2, h3],
        penalized_hamiltonian: Some(penalized),
        initial_state_index: (1usize << (2 * p.j)) - 1,
    })
}

/// Total number operator `Σ_p (I − Z_p)/2` on `4j` qubits.
pub fn total_number(j: usize) -> Result<PauliSum> {
    let n = 4 * j;
    let mut s = PauliSum::identity(n)?.scaled_real(n as f64 / 2.0);
    for q in 0..n {
        s.add_string(PauliString::single(n, q, Pauli::Z)?.with_coeff(Complex64::new(-0.5, 0.0)))?;
    }
    Ok(s)
}

/// True iff `[H, N₁ + N₋₁] = 0` as a Pauli sum.
pub fn commutes_with_number(h: &PauliSum, j: usize) -> Result<bool> {
    Ok(h.commutator(&total_number(j)?)?.is_empty())
}
