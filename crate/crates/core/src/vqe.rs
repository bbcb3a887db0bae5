//! Energy cost, adjoint gradients and the ADAM training loop.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ansatz::{build_agassi_ansatz, build_lipkin_ansatz, AnsatzProgram, ParameterVector};
use crate::engine::{extremal_eigs, extremal_eigs_in_sector, SparseOperator, SpectrumBounds};
use crate::error::{Error, Result};
use crate::models::{build_agassi, build_lipkin, AgassiParams, LipkinParams};
use crate::pauli::PauliSum;
use crate::state::{inner, StateVector};

/// Normalized costs may undershoot zero by this much from rounding.
pub const NORMALIZED_SLACK: f64 = 1e-8;

/// Everything needed to evaluate `E(θ) = ⟨ψ₀|U(θ)† H U(θ)|ψ₀⟩`.
#[derive(Debug, Clone)]
pub struct CostContext {
    hamiltonian: PauliSum,
    op: SparseOperator,
    ansatz: AnsatzProgram,
    psi0: StateVector,
    bounds: Option<SpectrumBounds>,
}

impl CostContext {
    pub fn new(hamiltonian: PauliSum, ansatz: AnsatzProgram, psi0: StateVector) -> Result<Self> {
        hamiltonian.ensure_hermitian()?;
        for n in [ansatz.n_qubits(), psi0.n_qubits()] {
            if n != hamiltonian.n_qubits() {
                return Err(Error::SizeMismatch {
                    expected: hamiltonian.n_qubits(),
                    actual: n,
                });
            }
        }
        Ok(Self {
            op: SparseOperator::new(&hamiltonian),
            hamiltonian,
            ansatz,
            psi0,
            bounds: None,
        })
    }

    pub fn with_bounds(mut self, bounds: SpectrumBounds) -> Self {
        self.bounds = Some(bounds);
        self
    }

    /// Lipkin Hamiltonian, HVA from `|0…0⟩`, Lanczos spectral bounds.
    pub fn lipkin(params: &LipkinParams, layers: usize, symmetric: bool) -> Result<Self> {
        let model = build_lipkin(params)?;
        let ansatz = build_lipkin_ansatz(params.n, layers, symmetric)?;
        let psi0 = StateVector::basis(params.n, model.initial_state_index)?;
        let bounds = extremal_eigs(&model.full_hamiltonian)?;
        Ok(Self::new(model.full_hamiltonian, ansatz, psi0)?.with_bounds(bounds))
    }

    /// Penalized Agassi Hamiltonian, HVA from `|1⟩^{⊗2j}|0⟩^{⊗2j}`.
    ///
    /// The circuit never leaves the half-filling sector, so the bounds are
    /// the extremal eigenvalues of the unpenalized Hamiltonian inside that
    /// sector. The lower bound coincides with the penalized ground energy.
    pub fn agassi(params: &AgassiParams, layers: usize) -> Result<Self> {
        let model = build_agassi(params)?;
        let ansatz = build_agassi_ansatz(params.j, layers)?;
        let psi0 = StateVector::basis(4 * params.j, model.initial_state_index)?;
        let filling = 2 * params.j as u32;
        let bounds = extremal_eigs_in_sector(&model.full_hamiltonian, &|i: usize| {
            i.count_ones() == filling
        })?;
        let h = model
            .penalized_hamiltonian
            .expect("Agassi models carry a penalized Hamiltonian");
        Ok(Self::new(h, ansatz, psi0)?.with_bounds(bounds))
    }

    pub fn hamiltonian(&self) -> &PauliSum {
        &self.hamiltonian
    }

    pub fn ansatz(&self) -> &AnsatzProgram {
        &self.ansatz
    }

    pub fn psi0(&self) -> &StateVector {
        &self.psi0
    }

    pub fn bounds(&self) -> Option<SpectrumBounds> {
        self.bounds
    }

    pub fn n_params(&self) -> usize {
        self.ansatz.n_params()
    }

    pub fn state(&self, theta: &ParameterVector) -> Result<StateVector> {
        let mut psi = self.psi0.clone();
        self.ansatz.apply_in_place(theta, psi.amplitudes_mut())?;
        Ok(psi)
    }

    fn energy_of(&self, psi: &StateVector) -> Result<f64> {
        crate::engine::expectation_with(&self.op, psi)
    }
}

pub fn cost(ctx: &CostContext, theta: &ParameterVector) -> Result<f64> {
    ctx.energy_of(&ctx.state(theta)?)
}

/// `(E(θ) − E₀)/(E_max − E₀)`.
pub fn normalized_cost(ctx: &CostContext, theta: &ParameterVector) -> Result<f64> {
    normalize(ctx, cost(ctx, theta)?)
}

/// Rescales an energy with the context's bounds.
pub fn normalize(ctx: &CostContext, energy: f64) -> Result<f64> {
    let b = ctx
        .bounds
        .ok_or_else(|| Error::InvalidParameter("normalized cost needs spectral bounds".into()))?;
    let width = b.width();
    if width <= 0.0 {
        return Err(Error::DegenerateSpectrum(b.e_min));
    }
    let v = (energy - b.e_min) / width;
    if v < -NORMALIZED_SLACK || v > 1.0 + NORMALIZED_SLACK {
        return Err(Error::InvalidParameter(format!(
            "normalized cost {v} outside [0, 1]; bounds do not enclose the energy"
        )));
    }
    Ok(v.clamp(0.0, 1.0))
}

/// Energy and exact gradient by reverse-mode (adjoint) differentiation.
///
/// With `φ_k` the state after gate `k` and `λ_k = U_{>k}† H U|ψ₀⟩`,
/// `∂E/∂θ_k = 2 Im⟨λ_k|G_k|φ_k⟩`; shared slots accumulate.
pub fn value_and_gradient(ctx: &CostContext, theta: &ParameterVector) -> Result<(f64, Vec<f64>)> {
    let mut phi = ctx.state(theta)?.into_amplitudes();
    let mut lambda = ctx.op.apply(&phi)?;
    let energy = inner(&phi, &lambda).re;
    let mut grad = vec![0.0; ctx.ansatz.n_params()];
    let mut g_phi = vec![Complex64::new(0.0, 0.0); phi.len()];
    for gate in ctx.ansatz.gate_list().iter().rev() {
        let compiled = ctx.ansatz.compiled(gate.generator);
        compiled.op.apply_into(&phi, &mut g_phi)?;
        grad[gate.slot] += 2.0 * inner(&lambda, &g_phi).im;
        let angle = theta.0[gate.slot];
        compiled.kernel.apply_in_place(-angle, &mut phi)?;
        compiled.kernel.apply_in_place(-angle, &mut lambda)?;
    }
    Ok((energy, grad))
}

pub fn gradient(ctx: &CostContext, theta: &ParameterVector) -> Result<Vec<f64>> {
    Ok(value_and_gradient(ctx, theta)?.1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdamConfig {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.05,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub t: u64,
    pub m: Vec<f64>,
    pub v: Vec<f64>,
    pub config: AdamConfig,
}

impl AdamState {
    pub fn new(n_params: usize, config: AdamConfig) -> Self {
        Self {
            t: 0,
            m: vec![0.0; n_params],
            v: vec![0.0; n_params],
            config,
        }
    }

    /// One bias-corrected ADAM update of `theta` in place.
    pub fn step(&mut self, grad: &[f64], theta: &mut ParameterVector) -> Result<()> {
        if grad.len() != self.m.len() || theta.len() != self.m.len() {
            return Err(Error::ParameterLength {
                expected: self.m.len(),
                actual: if grad.len() != self.m.len() { grad.len() } else { theta.len() },
            });
        }
        let c = self.config;
        self.t += 1;
        let t = self.t as i32;
        let bias1 = 1.0 - c.beta1.powi(t);
        let bias2 = 1.0 - c.beta2.powi(t);
        for ((g, (m, v)), th) in grad
            .iter()
            .zip(self.m.iter_mut().zip(self.v.iter_mut()))
            .zip(theta.0.iter_mut())
        {
            *m = c.beta1 * *m + (1.0 - c.beta1) * g;
            *v = c.beta2 * *v + (1.0 - c.beta2) * g * g;
            let m_hat = *m / bias1;
            let v_hat = *v / bias2;
            *th -= c.learning_rate * m_hat / (v_hat.sqrt() + c.epsilon);
        }
        Ok(())
    }
}

/// Functional form of [`AdamState::step`].
pub fn adam_step(
    state: &AdamState,
    grad: &[f64],
    theta: &ParameterVector,
) -> Result<(AdamState, ParameterVector)> {
    let mut s = state.clone();
    let mut th = theta.clone();
    s.step(grad, &mut th)?;
    Ok((s, th))
}

/// Per-step record of one optimization run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainTrace {
    pub seed: u64,
    /// Energy after each update.
    pub energies: Vec<f64>,
    /// `100·|E − E₀|/|E₀|` after each update.
    pub percent_error: Vec<f64>,
    pub final_params: ParameterVector,
    pub exact_ground_energy: f64,
}

impl TrainTrace {
    pub fn final_energy(&self) -> f64 {
        *self.energies.last().expect("traces have at least one step")
    }

    pub fn final_percent_error(&self) -> f64 {
        *self.percent_error.last().expect("traces have at least one step")
    }

    /// CSV with columns `step, energy, percent_error`.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["step", "energy", "percent_error"])?;
        for (i, (e, p)) in self.energies.iter().zip(&self.percent_error).enumerate() {
            out.write_record([(i + 1).to_string(), e.to_string(), p.to_string()])?;
        }
        out.flush()?;
        Ok(())
    }
}

pub fn percent_error(energy: f64, exact: f64) -> f64 {
    100.0 * (energy - exact).abs() / exact.abs()
}

/// Fixed-budget ADAM descent from `theta0`.
///
/// Deterministic in its inputs; `rng_seed` is recorded in the trace for
/// provenance. Requires bounds on the context for the exact ground energy.
pub fn train(
    ctx: &CostContext,
    theta0: &ParameterVector,
    steps: usize,
    rng_seed: u64,
    adam: AdamConfig,
) -> Result<TrainTrace> {
    if steps == 0 {
        return Err(Error::InvalidParameter("training needs at least one step".into()));
    }
    let exact = ctx
        .bounds
        .ok_or_else(|| Error::InvalidParameter("training needs the exact ground energy".into()))?
        .e_min;
    if exact == 0.0 {
        return Err(Error::InvalidParameter(
            "percentage error is undefined for a zero ground energy".into(),
        ));
    }
    ctx.ansatz.check_params(theta0)?;
    let mut theta = theta0.clone();
    let mut state = AdamState::new(theta.len(), adam);
    let (_, mut grad) = value_and_gradient(ctx, &theta)?;
    let mut energies = Vec::with_capacity(steps);
    for _ in 0..steps {
        state.step(&grad, &mut theta)?;
        let (e, g) = value_and_gradient(ctx, &theta)?;
        energies.push(e);
        grad = g;
    }
    Ok(TrainTrace {
        seed: rng_seed,
        percent_error: energies.iter().map(|&e| percent_error(e, exact)).collect(),
        energies,
        final_params: theta,
        exact_ground_energy: exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adam_first_step_is_sign_of_gradient() {
        let cfg = AdamConfig::default();
        let s = AdamState::new(3, cfg);
        let theta = ParameterVector(vec![1.0, 1.0, 1.0]);
        let (s, th) = adam_step(&s, &[2.0, -0.001, 300.0], &theta).unwrap();
        assert_eq!(s.t, 1);
        for (new, sign) in th.0.iter().zip([1.0, -1.0, 1.0]) {
            assert!((new - (1.0 - cfg.learning_rate * sign)).abs() < 1e-6);
        }
    }

    #[test]
    fn adam_zero_gradient_is_a_no_op() {
        let s = AdamState::new(2, AdamConfig::default());
        let theta = ParameterVector(vec![0.4, -0.2]);
        let (_, th) = adam_step(&s, &[0.0, 0.0], &theta).unwrap();
        assert_eq!(th, theta);
    }

    #[test]
    fn adam_moves_against_constant_gradient() {
        let mut s = AdamState::new(1, AdamConfig::default());
        let mut theta = ParameterVector(vec![0.0]);
        s.step(&[1.0], &mut theta).unwrap();
        let first = theta.0[0];
        s.step(&[1.0], &mut theta).unwrap();
        assert!(first < 0.0 && theta.0[0] < first);
        assert!(s.step(&[1.0, 2.0], &mut theta).is_err());
    }

    #[test]
    fn lipkin_two_spin_energy_at_zero() {
        let ctx = CostContext::lipkin(&LipkinParams::new(2), 1, true).unwrap();
        let e = cost(&ctx, &ParameterVector::zeros(2)).unwrap();
        assert!((e + 2.0).abs() < 1e-14);
    }

    #[test]
    fn agassi_energy_at_zero() {
        // dense oracle: ⟨ψ₀|H_pen|ψ₀⟩ = −εj − gj = −1.5 at defaults
        let ctx = CostContext::agassi(&AgassiParams::new(1), 1).unwrap();
        let e = cost(&ctx, &ParameterVector::zeros(3)).unwrap();
        assert!((e + 1.5).abs() < 1e-12);
    }

    #[test]
    fn zero_steps_rejected_and_one_step_traced() {
        let ctx = CostContext::lipkin(&LipkinParams::new(2), 1, true).unwrap();
        let theta = ParameterVector(vec![0.1, 0.2]);
        assert!(train(&ctx, &theta, 0, 0, AdamConfig::default()).is_err());
        let t = train(&ctx, &theta, 1, 0, AdamConfig::default()).unwrap();
        assert_eq!(t.energies.len(), 1);
        assert_eq!(t.percent_error.len(), 1);
    }

    #[test]
    fn normalized_cost_requires_nondegenerate_bounds() {
        let ctx = CostContext::lipkin(&LipkinParams::new(2), 1, true)
            .unwrap()
            .with_bounds(SpectrumBounds { e_min: 1.0, e_max: 1.0 });
        assert!(matches!(
            normalized_cost(&ctx, &ParameterVector::zeros(2)),
            Err(Error::DegenerateSpectrum(_))
        ));
    }

    #[test]
    fn trace_csv_layout() {
        let t = TrainTrace {
            seed: 1,
            energies: vec![-1.0, -1.5],
            percent_error: vec![50.0, 25.0],
            final_params: ParameterVector(vec![0.0]),
            exact_ground_energy: -2.0,
        };
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "step,energy,percent_error\n1,-1,50\n2,-1.5,25\n"
        );
    }
}
