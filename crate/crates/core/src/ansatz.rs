//! Hamiltonian variational ansätze for the Lipkin and Agassi models.
//!
//! A program is an ordered list of gates `exp(−iθ_s G)`, each reading its
//! angle from a parameter slot `s`. Slots may be shared between gates; the
//! permutation-symmetric Lipkin ansatz uses one slot for all Z rotations and
//! one for all XX rotations of a layer.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::engine::{ExpKernel, ExpMethod, SparseOperator};
use crate::error::{Error, Result};
use crate::models::{build_agassi, AgassiParams};
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::state::StateVector;

/// Half-width of the uniform range used for a warm-start layer.
pub const WARM_START_SPREAD: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnsatzKind {
    LipkinSymmetric,
    LipkinFree,
    AgassiHva,
    /// Built by [`build_hva`] from arbitrary generators.
    Custom,
}

impl fmt::Display for AnsatzKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AnsatzKind::LipkinSymmetric => "lipkin_symmetric",
            AnsatzKind::LipkinFree => "lipkin_free",
            AnsatzKind::AgassiHva => "agassi_hva",
            AnsatzKind::Custom => "custom",
        })
    }
}

/// A generator compiled once and shared by every gate that uses it.
#[derive(Debug, Clone)]
pub(crate) struct CompiledGenerator {
    pub generator: PauliSum,
    pub kernel: ExpKernel,
    pub op: SparseOperator,
}

impl CompiledGenerator {
    fn new(generator: PauliSum) -> Result<Self> {
        Ok(Self {
            kernel: ExpKernel::new(&generator)?,
            op: SparseOperator::new(&generator),
            generator,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Gate {
    pub generator: usize,
    pub slot: usize,
}

#[derive(Debug, Clone)]
pub struct AnsatzProgram {
    kind: AnsatzKind,
    n_qubits: usize,
    layers: usize,
    n_params: usize,
    generators: Vec<CompiledGenerator>,
    gates: Vec<Gate>,
    /// Model size: `n` for Lipkin, `j` for Agassi.
    size: usize,
}

impl AnsatzProgram {
    pub fn kind(&self) -> AnsatzKind {
        self.kind
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn n_gates(&self) -> usize {
        self.gates.len()
    }

    /// `n` for Lipkin programs, `j` for Agassi programs.
    pub fn model_size(&self) -> usize {
        self.size
    }

    /// Gates in application order as `(generator, slot)`.
    pub fn gates(&self) -> impl Iterator<Item = (&PauliSum, usize)> + '_ {
        self.gates
            .iter()
            .map(|g| (&self.generators[g.generator].generator, g.slot))
    }

    /// Route each distinct generator's exponential takes.
    pub fn exp_methods(&self) -> Vec<ExpMethod> {
        self.generators.iter().map(|g| g.kernel.method()).collect()
    }

    pub(crate) fn gate_list(&self) -> &[Gate] {
        &self.gates
    }

    pub(crate) fn compiled(&self, index: usize) -> &CompiledGenerator {
        &self.generators[index]
    }

    /// Same structure with every gate on its own slot.
    pub fn unshared(&self) -> AnsatzProgram {
        let mut out = self.clone();
        for (i, g) in out.gates.iter_mut().enumerate() {
            g.slot = i;
        }
        out.n_params = out.gates.len();
        out
    }

    /// Expands shared-slot parameters to the per-gate vector of [`Self::unshared`].
    pub fn expand_parameters(&self, theta: &ParameterVector) -> Result<ParameterVector> {
        self.check_params(theta)?;
        Ok(ParameterVector(
            self.gates.iter().map(|g| theta.0[g.slot]).collect(),
        ))
    }

    pub fn check_params(&self, theta: &ParameterVector) -> Result<()> {
        if theta.len() == self.n_params {
            Ok(())
        } else {
            Err(Error::ParameterLength {
                expected: self.n_params,
                actual: theta.len(),
            })
        }
    }

    /// Applies the circuit to `psi` in place.
    pub fn apply_in_place(&self, theta: &ParameterVector, psi: &mut [Complex64]) -> Result<()> {
        self.check_params(theta)?;
        for g in &self.gates {
            self.generators[g.generator]
                .kernel
                .apply_in_place(theta.0[g.slot], psi)?;
        }
        Ok(())
    }

    fn validate_slots(&self) {
        let mut used = vec![false; self.n_params];
        for g in &self.gates {
            used[g.slot] = true;
        }
        debug_assert!(used.iter().all(|&u| u), "parameter slots leave gaps");
    }
}

/// Real parameter vector bound to an [`AnsatzProgram`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParameterVector(pub Vec<f64>);

impl ParameterVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    /// I.i.d. uniform entries in `[lo, hi]`.
    pub fn uniform<R: Rng + ?Sized>(n: usize, lo: f64, hi: f64, rng: &mut R) -> Self {
        Self((0..n).map(|_| rng.random_range(lo..=hi)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for ParameterVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// On-disk form of a parameter vector with the program it belongs to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterFile {
    pub kind: AnsatzKind,
    pub n: Option<usize>,
    pub j: Option<usize>,
    pub layers: usize,
    pub seed: u64,
    pub values: ParameterVector,
}

impl ParameterFile {
    pub fn new(program: &AnsatzProgram, values: ParameterVector, seed: u64) -> Self {
        let (n, j) = match program.kind {
            AnsatzKind::AgassiHva => (None, Some(program.size)),
            _ => (Some(program.size), None),
        };
        Self {
            kind: program.kind,
            n,
            j,
            layers: program.layers,
            seed,
            values,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn single_string(letters: Vec<Pauli>) -> Result<PauliSum> {
    let n = letters.len();
    PauliSum::from_strings(n, [PauliString::from_letters(&letters, Complex64::new(1.0, 0.0))?])
}

/// One layer is the operator product `∏_j exp(−iγ_j Z_j) ∏_{j<k} exp(−iθ_{jk} X_j X_k)`;
/// the rightmost factor acts first, so the XX block (pairs in lexicographic
/// order) runs before the Z block. Slots list the Z angles before the XX
/// angles of each layer. With `symmetric` all Z gates of a layer share one
/// slot and all XX gates another.
pub fn build_lipkin_ansatz(n: usize, layers: usize, symmetric: bool) -> Result<AnsatzProgram> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("Lipkin ansatz needs n ≥ 2, got {n}")));
    }
    let mut generators = Vec::new();
    for q in 0..n {
        let mut letters = vec![Pauli::I; n];
        letters[q] = Pauli::Z;
        generators.push(CompiledGenerator::new(single_string(letters)?)?);
    }
    for a in 0..n {
        for b in a + 1..n {
            let mut letters = vec![Pauli::I; n];
            letters[a] = Pauli::X;
            letters[b] = Pauli::X;
            generators.push(CompiledGenerator::new(single_string(letters)?)?);
        }
    }
    let per_layer = generators.len();
    let mut gates = Vec::with_capacity(per_layer * layers);
    let application_order: Vec<usize> = (n..per_layer).chain(0..n).collect();
    for layer in 0..layers {
        for &k in &application_order {
            let slot = if symmetric {
                2 * layer + usize::from(k >= n)
            } else {
                layer * per_layer + k
            };
            gates.push(Gate { generator: k, slot });
        }
    }
    let program = AnsatzProgram {
        kind: if symmetric {
            AnsatzKind::LipkinSymmetric
        } else {
            AnsatzKind::LipkinFree
        },
        n_qubits: n,
        layers,
        n_params: if symmetric { 2 * layers } else { per_layer * layers },
        generators,
        gates,
        size: n,
    };
    program.validate_slots();
    Ok(program)
}

/// One layer is the operator product `exp(−iθ₁H₁) exp(−iθ₂H₂) exp(−iθ₃H₃)`,
/// so `H₃` acts on the state first and `H₁` last. Slots are `3l + k` for
/// `θ_{k+1}` of layer `l`.
///
/// Applying `H₁ = J⁰` first would waste it: `|ψ₀⟩` is a `J⁰` eigenstate.
pub fn build_agassi_ansatz(j: usize, layers: usize) -> Result<AnsatzProgram> {
    let model = build_agassi(&AgassiParams::new(j))?;
    let generators = model
        .generators
        .into_iter()
        .map(CompiledGenerator::new)
        .collect::<Result<Vec<_>>>()?;
    let gates = (0..layers)
        .flat_map(|layer| (0..3).rev().map(move |k| Gate {
            generator: k,
            slot: 3 * layer + k,
        }))
        .collect();
    let program = AnsatzProgram {
        kind: AnsatzKind::AgassiHva,
        n_qubits: 4 * j,
        layers,
        n_params: 3 * layers,
        generators,
        gates,
        size: j,
    };
    program.validate_slots();
    Ok(program)
}

/// Generic HVA: each layer applies `exp(−iθG)` for every generator in the
/// listed order, one independent slot per gate.
pub fn build_hva(generators: Vec<PauliSum>, layers: usize) -> Result<AnsatzProgram> {
    let n_qubits = generators
        .first()
        .map(PauliSum::n_qubits)
        .ok_or_else(|| Error::InvalidParameter("an HVA needs at least one generator".into()))?;
    if let Some(g) = generators.iter().find(|g| g.n_qubits() != n_qubits) {
        return Err(Error::SizeMismatch {
            expected: n_qubits,
            actual: g.n_qubits(),
        });
    }
    let k = generators.len();
    let generators = generators
        .into_iter()
        .map(CompiledGenerator::new)
        .collect::<Result<Vec<_>>>()?;
    let gates = (0..layers)
        .flat_map(|layer| (0..k).map(move |g| Gate { generator: g, slot: layer * k + g }))
        .collect();
    let program = AnsatzProgram {
        kind: AnsatzKind::Custom,
        n_qubits,
        layers,
        n_params: k * layers,
        generators,
        gates,
        size: n_qubits,
    };
    program.validate_slots();
    Ok(program)
}

/// Runs the circuit on `psi0`.
pub fn run_ansatz(a: &AnsatzProgram, theta: &ParameterVector, psi0: &StateVector) -> Result<StateVector> {
    psi0.check_same(&StateVector::basis(a.n_qubits, 0)?)?;
    let mut psi = psi0.clone();
    a.apply_in_place(theta, psi.amplitudes_mut())?;
    Ok(psi)
}

/// Appends one near-identity layer to an Agassi parameter vector: the
/// existing entries are copied and three new angles are drawn uniformly from
/// `[−10⁻⁴, 10⁻⁴]`. The new layer is applied last.
pub fn warm_start_extend<R: Rng + ?Sized>(
    prev: &ParameterVector,
    prev_program: &AnsatzProgram,
    rng: &mut R,
) -> Result<ParameterVector> {
    if prev_program.kind != AnsatzKind::AgassiHva {
        return Err(Error::InvalidParameter(format!(
            "warm start needs an agassi_hva program, got {}",
            prev_program.kind
        )));
    }
    prev_program.check_params(prev)?;
    let mut values = prev.0.clone();
    values.extend((0..3).map(|_| rng.random_range(-WARM_START_SPREAD..=WARM_START_SPREAD)));
    Ok(ParameterVector(values))
}
