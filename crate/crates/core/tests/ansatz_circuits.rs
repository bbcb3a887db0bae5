mod common;

use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nuclear_hva::ansatz::{
    build_agassi_ansatz, build_lipkin_ansatz, run_ansatz, warm_start_extend, AnsatzKind,
    ParameterVector, WARM_START_SPREAD,
};
use nuclear_hva::engine::particle_number;
use nuclear_hva::pauli::PauliSum;
use nuclear_hva::state::StateVector;

fn lipkin_dense_circuit(n: usize, layers: usize, theta: &[f64], symmetric: bool) -> Mat {
    let single = |labels: &str| sum_matrix(&PauliSum::from_labels(n, &[(1.0, labels)]).unwrap());
    let label = |qs: &[usize], ch: char| -> String {
        (0..n).map(|k| if qs.contains(&k) { ch } else { 'I' }).collect()
    };
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let per_layer = n + pairs.len();
    let dim = 1 << n;
    let mut u = Mat::identity(dim, dim);
    for l in 0..layers {
        for (k, &(a, b)) in pairs.iter().enumerate() {
            let angle = if symmetric { theta[2 * l + 1] } else { theta[l * per_layer + n + k] };
            u = expm_hermitian(&single(&label(&[a, b], 'X')), angle) * u;
        }
        for q in 0..n {
            let angle = if symmetric { theta[2 * l] } else { theta[l * per_layer + q] };
            u = expm_hermitian(&single(&label(&[q], 'Z')), angle) * u;
        }
    }
    u
}

fn agassi_dense_circuit(j: usize, theta: &[f64]) -> Mat {
    let d = agassi_dense(j);
    let dim = d.h1.nrows();
    let mut u = Mat::identity(dim, dim);
    for layer in theta.chunks(3) {
        u = expm_hermitian(&d.h3, layer[2]) * u;
        u = expm_hermitian(&d.h2, layer[1]) * u;
        u = expm_hermitian(&d.h1, layer[0]) * u;
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lipkin_circuits_match_dense(seed in any::<u64>(), n in 2usize..5, layers in 1usize..4, symmetric in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = build_lipkin_ansatz(n, layers, symmetric).unwrap();
        let theta = ParameterVector::uniform(a.n_params(), -3.0, 3.0, &mut rng);
        let psi = random_state(n, &mut rng);
        let got = run_ansatz(&a, &theta, &psi).unwrap();
        let want = lipkin_dense_circuit(n, layers, &theta.0, symmetric) * to_vector(&psi);
        prop_assert!(l2_diff(got.amplitudes(), want.as_slice()) < 1e-9);
    }

    #[test]
    fn lipkin_symmetric_commutes_with_permutations(seed in any::<u64>(), n in 2usize..6, layers in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = build_lipkin_ansatz(n, layers, true).unwrap();
        let theta = ParameterVector::uniform(a.n_params(), -6.3, 6.3, &mut rng);
        let psi = random_state(n, &mut rng);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let left = run_ansatz(&a, &theta, &psi.permute_qubits(&perm).unwrap()).unwrap();
        let right = run_ansatz(&a, &theta, &psi).unwrap().permute_qubits(&perm).unwrap();
        prop_assert!(left.distance(&right).unwrap() < 1e-9);
    }

    #[test]
    fn agassi_output_stays_at_half_filling(seed in any::<u64>(), j in 1usize..3, layers in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = build_agassi_ansatz(j, layers).unwrap();
        let theta = ParameterVector::uniform(a.n_params(), -10.0, 10.0, &mut rng);
        let psi0 = StateVector::basis(4 * j, (1 << (2 * j)) - 1).unwrap();
        let out = run_ansatz(&a, &theta, &psi0).unwrap();
        prop_assert!((particle_number(&out, j).unwrap() - 2.0 * j as f64).abs() < 1e-10);
        prop_assert!((out.norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn agassi_circuits_match_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (j, layers) in [(1, 1), (1, 3), (2, 2)] {
        let a = build_agassi_ansatz(j, layers).unwrap();
        for _ in 0..4 {
            let theta = ParameterVector::uniform(a.n_params(), -4.0, 4.0, &mut rng);
            let psi = random_state(4 * j, &mut rng);
            let got = run_ansatz(&a, &theta, &psi).unwrap();
            let want = agassi_dense_circuit(j, &theta.0) * to_vector(&psi);
            assert!(l2_diff(got.amplitudes(), want.as_slice()) < 1e-9);
        }
    }
}

#[test]
fn agassi_three_conserves_number() {
    let a = build_agassi_ansatz(3, 3).unwrap();
    let psi0 = StateVector::basis(12, (1 << 6) - 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..3 {
        let theta = ParameterVector::uniform(9, -10.0, 10.0, &mut rng);
        let out = run_ansatz(&a, &theta, &psi0).unwrap();
        assert!((particle_number(&out, 3).unwrap() - 6.0).abs() < 1e-10);
    }
}

#[test]
fn diagonal_layer_only_adds_phases() {
    // γ-only symmetric layer on |0…0⟩ leaves all magnitudes unchanged
    let a = build_lipkin_ansatz(4, 1, true).unwrap();
    let psi0 = StateVector::zero_state(4).unwrap();
    let out = run_ansatz(&a, &ParameterVector(vec![1.234, 0.0]), &psi0).unwrap();
    for (x, y) in out.amplitudes().iter().zip(psi0.amplitudes()) {
        assert!((x.norm() - y.norm()).abs() < 1e-14);
    }
}

#[test]
fn shared_slot_response_is_sum_of_gate_responses() {
    let h = 1e-5;
    for n in 2..=4 {
        let shared = build_lipkin_ansatz(n, 2, true).unwrap();
        let free = shared.unshared();
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let theta = ParameterVector::uniform(shared.n_params(), -2.0, 2.0, &mut rng);
        let expanded = shared.expand_parameters(&theta).unwrap();
        let psi = StateVector::zero_state(n).unwrap();
        let run = |a: &nuclear_hva::ansatz::AnsatzProgram, t: &[f64]| {
            run_ansatz(a, &ParameterVector(t.to_vec()), &psi).unwrap().into_amplitudes()
        };
        let slot_of: Vec<usize> = shared.gates().map(|(_, s)| s).collect();
        for slot in 0..shared.n_params() {
            let mut plus = theta.0.clone();
            let mut minus = theta.0.clone();
            plus[slot] += h;
            minus[slot] -= h;
            let (a, b) = (run(&shared, &plus), run(&shared, &minus));
            let response: Vec<_> = a.iter().zip(&b).map(|(x, y)| (x - y) / (2.0 * h)).collect();
            let mut summed = vec![c(0.0, 0.0); response.len()];
            for (g, _) in slot_of.iter().enumerate().filter(|(_, &s)| s == slot) {
                let mut p = expanded.0.clone();
                let mut m = expanded.0.clone();
                p[g] += h;
                m[g] -= h;
                let (a, b) = (run(&free, &p), run(&free, &m));
                for ((acc, x), y) in summed.iter_mut().zip(&a).zip(&b) {
                    *acc += (x - y) / (2.0 * h);
                }
            }
            assert!(max_abs_diff(&response, &summed) < 1e-6, "n={n} slot={slot}");
        }
    }
}

#[test]
fn warm_start_reproduces_previous_state_to_first_order() {
    let small = build_agassi_ansatz(2, 1).unwrap();
    let big = build_agassi_ansatz(2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let prev = ParameterVector::uniform(3, -10.0, 10.0, &mut rng);
    let next = warm_start_extend(&prev, &small, &mut rng).unwrap();
    assert_eq!(next.len(), 6);
    assert_eq!(next.0[..3], prev.0[..]);
    assert!(next.0[3..].iter().all(|v| v.abs() <= WARM_START_SPREAD));
    let psi0 = StateVector::basis(8, 0b1111).unwrap();
    let a = run_ansatz(&small, &prev, &psi0).unwrap();
    let b = run_ansatz(&big, &next, &psi0).unwrap();
    // three near-identity gates with generator norms of order j²
    assert!(a.distance(&b).unwrap() < 1e-2);
    assert_eq!(big.kind(), AnsatzKind::AgassiHva);
}
