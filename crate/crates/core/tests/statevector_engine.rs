mod common;

use common::*;
use num_complex::Complex64 as C;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nuclear_hva::engine::{
    apply_exp, expectation, expm_krylov, extremal_eigs, extremal_eigs_dense, pauli_sum_apply,
    ExpKernel, ExpMethod, KrylovOptions, SparseOperator,
};
use nuclear_hva::pauli::PauliSum;
use nuclear_hva::state::StateVector;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn apply_matches_dense(seed in any::<u64>(), n in 1usize..6, terms in 1usize..10) {
        let mut r = rng(seed);
        let h = random_hermitian(n, terms, &mut r);
        let psi = random_state(n, &mut r);
        let got = pauli_sum_apply(&h, &psi).unwrap();
        let want = sum_matrix(&h) * to_vector(&psi);
        prop_assert!(max_abs_diff(got.amplitudes(), want.as_slice()) < 1e-12);
    }

    #[test]
    fn exponential_matches_dense_on_every_route(seed in any::<u64>(), n in 1usize..6, terms in 1usize..8, theta in -4.0..4.0f64) {
        let mut r = rng(seed);
        let g = if r.random_bool(0.3) { random_commuting(n, terms, &mut r) } else { random_hermitian(n, terms, &mut r) };
        let psi = random_state(n, &mut r);
        let want = expm_hermitian(&sum_matrix(&g), theta) * to_vector(&psi);
        let auto = apply_exp(&g, theta, &psi).unwrap();
        prop_assert!(max_abs_diff(auto.amplitudes(), want.as_slice()) < 1e-10);
        let mut k = psi.amplitudes().to_vec();
        ExpKernel::krylov(&g, KrylovOptions::default()).unwrap().apply_in_place(theta, &mut k).unwrap();
        prop_assert!(max_abs_diff(&k, want.as_slice()) < 1e-10);
        let mut b = psi.amplitudes().to_vec();
        ExpKernel::with_method(&g, ExpMethod::BlockSpectral).unwrap().apply_in_place(theta, &mut b).unwrap();
        prop_assert!(max_abs_diff(&b, want.as_slice()) < 1e-10);
    }

    #[test]
    fn exponential_preserves_norm_and_composes(seed in any::<u64>(), n in 2usize..7, a in -3.0..3.0f64, b in -3.0..3.0f64) {
        let mut r = rng(seed);
        let g = random_hermitian(n, 6, &mut r);
        let psi = random_state(n, &mut r);
        let once = apply_exp(&g, a + b, &psi).unwrap();
        let twice = apply_exp(&g, b, &apply_exp(&g, a, &psi).unwrap()).unwrap();
        prop_assert!((once.norm() - 1.0).abs() < 1e-10);
        prop_assert!(once.distance(&twice).unwrap() < 1e-9);
        let back = apply_exp(&g, -a, &apply_exp(&g, a, &psi).unwrap()).unwrap();
        prop_assert!(back.distance(&psi).unwrap() < 1e-9);
    }

    #[test]
    fn expectation_matches_dense(seed in any::<u64>(), n in 1usize..7, terms in 1usize..10) {
        let mut r = rng(seed);
        let h = random_hermitian(n, terms, &mut r);
        let psi = random_state(n, &mut r);
        let want = quadratic_form(&sum_matrix(&h), &to_vector(&psi));
        prop_assert!((expectation(&h, &psi).unwrap() - want.re).abs() < 1e-11);
    }
}

#[test]
fn extremal_eigenvalues_match_dense() {
    let mut r = rng(5);
    for case in 0..40 {
        let n = 2 + case % 5;
        let h = random_hermitian(n, 3 + case % 7, &mut r);
        let ev = eigenvalues(&sum_matrix(&h));
        let b = extremal_eigs(&h).unwrap();
        assert!((b.e_min - ev[0]).abs() < 1e-9, "case {case}: {} vs {}", b.e_min, ev[0]);
        assert!((b.e_max - ev[ev.len() - 1]).abs() < 1e-9, "case {case}");
        let d = extremal_eigs_dense(&h).unwrap();
        assert!((d.e_min - ev[0]).abs() < 1e-10);
    }
}

#[test]
fn route_selection() {
    let z = PauliSum::from_labels(3, &[(1.0, "ZZI"), (0.5, "IZZ")]).unwrap();
    assert_eq!(ExpKernel::new(&z).unwrap().method(), ExpMethod::Commuting);
    let xx = PauliSum::from_labels(3, &[(1.0, "XXI"), (0.5, "IXX")]).unwrap();
    assert_eq!(ExpKernel::new(&xx).unwrap().method(), ExpMethod::Commuting);
    let mixed = PauliSum::from_labels(3, &[(1.0, "XII"), (0.5, "ZII"), (0.3, "IYY")]).unwrap();
    assert_ne!(ExpKernel::new(&mixed).unwrap().method(), ExpMethod::Commuting);
}

#[test]
fn worked_single_qubit_examples() {
    // ⟨00|Z₀+Z₁|00⟩ = 2
    let h = PauliSum::from_labels(2, &[(1.0, "ZI"), (1.0, "IZ")]).unwrap();
    assert_eq!(expectation(&h, &StateVector::zero_state(2).unwrap()).unwrap(), 2.0);
    // exp(−iπ/2 X)|0⟩ = −i|1⟩
    let x = PauliSum::from_labels(1, &[(1.0, "X")]).unwrap();
    let out = apply_exp(&x, std::f64::consts::FRAC_PI_2, &StateVector::zero_state(1).unwrap()).unwrap();
    assert!((out.amplitudes()[1] - C::new(0.0, -1.0)).norm() < 1e-14);
    assert!(out.amplitudes()[0].norm() < 1e-14);
    // θ = 0 is the identity, bitwise
    let psi = random_state(3, &mut rng(1));
    let g = random_hermitian(3, 5, &mut rng(2));
    assert_eq!(apply_exp(&g, 0.0, &psi).unwrap(), psi);
}

#[test]
fn krylov_handles_large_angles() {
    let mut r = rng(9);
    let g = random_hermitian(5, 12, &mut r);
    let psi = random_state(5, &mut r);
    let theta = 40.0;
    let want = expm_hermitian(&sum_matrix(&g), theta) * to_vector(&psi);
    let got = expm_krylov(&SparseOperator::new(&g), theta, psi.amplitudes(), &KrylovOptions::default()).unwrap();
    assert!(max_abs_diff(&got, want.as_slice()) < 1e-9);
}

#[test]
fn mismatched_sizes_are_errors() {
    let h = PauliSum::from_labels(2, &[(1.0, "ZZ")]).unwrap();
    let psi = StateVector::zero_state(3).unwrap();
    assert!(expectation(&h, &psi).is_err());
    assert!(apply_exp(&h, 0.1, &psi).is_err());
    let non_hermitian = PauliSum::from_strings(
        1,
        [nuclear_hva::pauli::PauliString::from_letters(&[nuclear_hva::pauli::Pauli::X], C::new(0.0, 1.0)).unwrap()],
    )
    .unwrap();
    assert!(expectation(&non_hermitian, &StateVector::zero_state(1).unwrap()).is_err());
}
