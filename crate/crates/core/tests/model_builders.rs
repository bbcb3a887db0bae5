mod common;

use common::*;
use num_complex::Complex64 as C;

use nuclear_hva::engine::{extremal_eigs, extremal_eigs_in_sector};
use nuclear_hva::fermion::jordan_wigner;
use nuclear_hva::models::{
    build_agassi, build_agassi_operators, build_lipkin, commutes_with_number, total_number,
    AgassiParams, LipkinParams,
};
use nuclear_hva::pauli::PauliSum;

fn close(a: &Mat, b: &Mat, tol: f64) -> f64 {
    let d = (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(d < tol, "max deviation {d}");
    d
}

#[test]
fn agassi_operators_match_occupation_basis() {
    for j in 1..=2 {
        let ops = build_agassi_operators(j).unwrap();
        let dense = agassi_dense(j);
        let n = 4 * j;
        let jw = |f| sum_matrix(&jordan_wigner(f, n).unwrap());
        close(&jw(&ops.j0), &dense.j0, 1e-12);
        close(&jw(&ops.j_plus), &dense.j_plus, 1e-12);
        close(&jw(&ops.j_minus), &dense.j_plus.adjoint(), 1e-12);
        close(&jw(&ops.a_plus), &dense.a_up, 1e-12);
        close(&jw(&ops.a_minus), &dense.a_down, 1e-12);
        close(&(jw(&ops.n_upper) + jw(&ops.n_lower)), &dense.number, 1e-12);
    }
}

#[test]
fn agassi_generators_and_hamiltonians_match_occupation_basis() {
    for j in 1..=2 {
        let p = AgassiParams::with_couplings(j, 1.3, 0.7, 0.4);
        let model = build_agassi(&p).unwrap();
        let dense = agassi_dense(j);
        close(&sum_matrix(&model.generators[0]), &dense.h1, 1e-12);
        close(&sum_matrix(&model.generators[1]), &dense.h2, 1e-12);
        close(&sum_matrix(&model.generators[2]), &dense.h3, 1e-12);
        close(&sum_matrix(&model.full_hamiltonian), &agassi_hamiltonian(j, 1.3, 0.7, 0.4, None), 1e-11);
        close(
            &sum_matrix(model.penalized_hamiltonian.as_ref().unwrap()),
            &agassi_hamiltonian(j, 1.3, 0.7, 0.4, Some(p.beta)),
            1e-10,
        );
        assert_eq!(model.initial_state_index, (1 << (2 * j)) - 1);
    }
}

#[test]
fn agassi_structure() {
    let ops = build_agassi_operators(1).unwrap();
    assert_eq!(ops.j0.len(), 4);
    assert_eq!(ops.a_plus.len(), 1);
    assert!(jordan_wigner(&ops.j0, 4).unwrap().is_diagonal());
    let jp = jordan_wigner(&ops.j_plus, 4).unwrap();
    let jm = jordan_wigner(&ops.j_minus, 4).unwrap();
    assert!(jp.adjoint().max_difference(&jm).unwrap() < 1e-14);
}

#[test]
fn recombination_and_hermiticity() {
    for j in 1..=3 {
        let p = AgassiParams::with_couplings(j, 0.8, -0.3, 1.1);
        let m = build_agassi(&p).unwrap();
        let g = &m.generators;
        let re = g[0]
            .scaled_real(p.epsilon)
            .try_sub(&g[1].scaled_real(p.v / 2.0))
            .unwrap()
            .try_sub(&g[2].scaled_real(p.g))
            .unwrap();
        assert!(re.max_difference(&m.full_hamiltonian).unwrap() < 1e-12);
        assert!(g.iter().all(PauliSum::is_hermitian));
        assert!(m.full_hamiltonian.is_hermitian());
        assert!(m.penalized_hamiltonian.as_ref().unwrap().is_hermitian());
    }
    let l = build_lipkin(&LipkinParams { n: 5, lambda: 0.7, h: 1.9 }).unwrap();
    let re = l.generators[0]
        .scaled_real(-0.7 / 5.0)
        .try_add(&l.generators[1].scaled_real(-1.9))
        .unwrap();
    assert!(re.max_difference(&l.full_hamiltonian).unwrap() < 1e-12);
}

#[test]
fn number_conservation_of_agassi_terms() {
    for j in 1..=2 {
        let m = build_agassi(&AgassiParams::new(j)).unwrap();
        for g in &m.generators {
            assert!(commutes_with_number(g, j).unwrap());
        }
        assert!(commutes_with_number(&m.full_hamiltonian, j).unwrap());
        assert!(commutes_with_number(m.penalized_hamiltonian.as_ref().unwrap(), j).unwrap());
    }
    let x0 = PauliSum::from_labels(4, &[(1.0, "XIII")]).unwrap();
    assert!(!commutes_with_number(&x0, 1).unwrap());
}

#[test]
fn lipkin_matches_kronecker_construction() {
    for n in 2..=6 {
        let p = LipkinParams { n, lambda: 0.9, h: 0.6 };
        let m = build_lipkin(&p).unwrap();
        close(&sum_matrix(&m.full_hamiltonian), &lipkin_hamiltonian(n, 0.9, 0.6), 1e-12);
        assert_eq!(m.full_hamiltonian.len(), n + n * (n - 1) / 2);
        assert_eq!(m.initial_state_index, 0);
    }
    let m = build_lipkin(&LipkinParams::new(2)).unwrap();
    assert_eq!(m.full_hamiltonian.coefficient("XX").unwrap(), C::new(-0.5, 0.0));
    assert_eq!(m.full_hamiltonian.coefficient("ZI").unwrap(), C::new(-1.0, 0.0));
    assert!(build_lipkin(&LipkinParams::new(1)).is_err());
}

#[test]
fn pinned_ground_energies() {
    // Values from dense diagonalization of occupation-basis matrices
    // (ε = 1, V = g = 0.5, default β)
    let e1 = -1.914_213_562_373_095_1;
    let e2 = -4.499_268_621_148_591;
    for (j, e0, top) in [(1, e1, 0.914_213_562_373_094_9), (2, e2, 2.321_969_332_883_593_8)] {
        let m = build_agassi(&AgassiParams::new(j)).unwrap();
        let pen = extremal_eigs(m.penalized_hamiltonian.as_ref().unwrap()).unwrap();
        assert!((pen.e_min - e0).abs() < 1e-9, "j={j}: {}", pen.e_min);
        let filling = 2 * j as u32;
        let sector = extremal_eigs_in_sector(&m.full_hamiltonian, &|i: usize| i.count_ones() == filling).unwrap();
        assert!((sector.e_min - e0).abs() < 1e-9);
        assert!((sector.e_max - top).abs() < 1e-9);
    }
    let dense = eigenvalues(&agassi_hamiltonian(1, 1.0, 0.5, 0.5, Some(10.0)));
    assert!((dense[0] - e1).abs() < 1e-12);
}

#[test]
fn penalty_selects_half_filling() {
    let p = AgassiParams::new(1);
    let h = agassi_hamiltonian(1, p.epsilon, p.v, p.g, Some(p.beta));
    let (_, gs) = ground_state(&h);
    let n = quadratic_form(&agassi_dense(1).number, &gs).re;
    assert!((n - 2.0).abs() < 1e-8);
    let number = sum_matrix(&total_number(1).unwrap());
    assert!((quadratic_form(&number, &gs).re - 2.0).abs() < 1e-8);
}
