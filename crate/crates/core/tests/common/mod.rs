//! Brute-force dense oracles shared by the integration tests. Nothing here
//! goes through the library's sparse operator or exponential code.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C;
use rand::Rng;

use nuclear_hva::pauli::{Pauli, PauliString, PauliSum};
use nuclear_hva::state::StateVector;

pub type Mat = DMatrix<C>;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn pauli_2x2(p: Pauli) -> Mat {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match p {
        Pauli::I => Mat::from_row_slice(2, 2, &[l, o, o, l]),
        Pauli::X => Mat::from_row_slice(2, 2, &[o, l, l, o]),
        Pauli::Y => Mat::from_row_slice(2, 2, &[o, -i, i, o]),
        Pauli::Z => Mat::from_row_slice(2, 2, &[l, o, o, -l]),
    }
}

/// `P_{n−1} ⊗ … ⊗ P_0`: qubit 0 is the least significant index bit.
pub fn string_matrix(s: &PauliString) -> Mat {
    let letters = s.letters();
    let mut m = Mat::from_element(1, 1, c(1.0, 0.0));
    for &p in letters.iter().rev() {
        m = m.kronecker(&pauli_2x2(p));
    }
    m * s.coeff
}

pub fn sum_matrix(h: &PauliSum) -> Mat {
    let dim = 1usize << h.n_qubits();
    h.iter()
        .fold(Mat::zeros(dim, dim), |acc, s| acc + string_matrix(&s))
}

/// `exp(−iθG)` for Hermitian `G` via its eigendecomposition.
pub fn expm_hermitian(g: &Mat, theta: f64) -> Mat {
    let eig = SymmetricEigen::new(g.clone());
    let phases = DMatrix::from_diagonal(&DVector::from_iterator(
        g.nrows(),
        eig.eigenvalues.iter().map(|&e| C::from_polar(1.0, -theta * e)),
    ));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

pub fn eigenvalues(h: &Mat) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(h.clone()).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Eigenvector of the smallest eigenvalue.
pub fn ground_state(h: &Mat) -> (f64, DVector<C>) {
    let eig = SymmetricEigen::new(h.clone());
    let k = eig.eigenvalues.imin();
    (eig.eigenvalues[k], eig.eigenvectors.column(k).into_owned())
}

pub fn to_vector(psi: &StateVector) -> DVector<C> {
    DVector::from_column_slice(psi.amplitudes())
}

pub fn to_state(v: &DVector<C>) -> StateVector {
    StateVector::from_amplitudes(v.iter().copied().collect()).unwrap()
}

pub fn max_abs_diff(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn l2_diff(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

pub fn quadratic_form(h: &Mat, v: &DVector<C>) -> C {
    (v.adjoint() * h * v)[(0, 0)]
}

/// Hermitian PauliSum with `terms` random strings and real coefficients.
pub fn random_hermitian<R: Rng>(n: usize, terms: usize, rng: &mut R) -> PauliSum {
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let strings = (0..terms).map(|_| {
        let ls: Vec<Pauli> = (0..n).map(|_| letters[rng.random_range(0..4)]).collect();
        PauliString::from_letters(&ls, c(rng.random_range(-1.0..1.0), 0.0)).unwrap()
    });
    PauliSum::from_strings(n, strings).unwrap()
}

/// Hermitian PauliSum of mutually commuting strings: all built from
/// {I, Z} or all from {I, X}.
pub fn random_commuting<R: Rng>(n: usize, terms: usize, rng: &mut R) -> PauliSum {
    let x_type = rng.random_bool(0.5);
    let strings: Vec<PauliString> = (0..terms)
        .map(|_| {
            let mask: u64 = rng.random_range(0..1u64 << n);
            let (x, z) = if x_type { (mask, 0) } else { (0, mask) };
            PauliString::from_masks(n, x, z, c(rng.random_range(-1.0..1.0), 0.0)).unwrap()
        })
        .collect();
    PauliSum::from_strings(n, strings).unwrap()
}

pub fn random_state<R: Rng>(n: usize, rng: &mut R) -> StateVector {
    StateVector::random(n, rng).unwrap()
}

/// Fermionic ladder matrices built directly in the occupation basis: bit `p`
/// of a basis index is the occupation of mode `p`, and `c_p` picks up a
/// sign for every occupied mode below `p`.
pub fn annihilator(p: usize, n_modes: usize) -> Mat {
    let dim = 1usize << n_modes;
    let mut m = Mat::zeros(dim, dim);
    for col in 0..dim {
        if col >> p & 1 == 1 {
            let below = (col & ((1 << p) - 1)).count_ones();
            let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
            m[(col ^ (1 << p), col)] = c(sign, 0.0);
        }
    }
    m
}

pub fn creator(p: usize, n_modes: usize) -> Mat {
    annihilator(p, n_modes).adjoint()
}

/// Mode of `(σ, m)` for spin `j`: the lower level σ = −1 takes modes
/// `0 … 2j−1`, magnetisations `−j … −1, 1 … j` in ascending order.
pub fn agassi_mode(sigma: i32, m: i32, j: usize) -> usize {
    let j = j as i32;
    let offset = if sigma == 1 { 2 * j } else { 0 };
    let pos = if m < 0 { m + j } else { m + j - 1 };
    (offset + pos) as usize
}

pub struct AgassiDense {
    pub j0: Mat,
    pub j_plus: Mat,
    pub a_up: Mat,
    pub a_down: Mat,
    pub number: Mat,
    pub h1: Mat,
    pub h2: Mat,
    pub h3: Mat,
}

pub fn agassi_dense(j: usize) -> AgassiDense {
    let n = 4 * j;
    let dim = 1usize << n;
    let ms: Vec<i32> = (1..=j as i32).flat_map(|m| [-m, m]).collect();
    let zero = || Mat::zeros(dim, dim);
    let num = |s: i32, m: i32| {
        let p = agassi_mode(s, m, j);
        creator(p, n) * annihilator(p, n)
    };
    let mut j0 = zero();
    let mut j_plus = zero();
    let mut number = zero();
    for &m in &ms {
        j0 += (num(1, m) - num(-1, m)) * c(0.5, 0.0);
        number += num(1, m) + num(-1, m);
        j_plus += creator(agassi_mode(1, m, j), n) * annihilator(agassi_mode(-1, m, j), n);
    }
    let pair = |s: i32| {
        (1..=j as i32).fold(zero(), |acc, m| {
            acc + annihilator(agassi_mode(s, -m, j), n) * annihilator(agassi_mode(s, m, j), n)
        })
    };
    let a_up = pair(1);
    let a_down = pair(-1);
    let j_minus = j_plus.adjoint();
    let h2 = &j_plus * &j_plus + &j_minus * &j_minus;
    let a = &a_up + &a_down;
    let h3 = a.adjoint() * &a;
    AgassiDense {
        h1: j0.clone(),
        j0,
        j_plus,
        a_up,
        a_down,
        number,
        h2,
        h3,
    }
}

/// `εH₁ − (V/2)H₂ − gH₃`, optionally plus `β(N − 2j)²`.
pub fn agassi_hamiltonian(j: usize, eps: f64, v: f64, g: f64, beta: Option<f64>) -> Mat {
    let d = agassi_dense(j);
    let mut h = &d.h1 * c(eps, 0.0) - &d.h2 * c(v / 2.0, 0.0) - &d.h3 * c(g, 0.0);
    if let Some(b) = beta {
        let dim = h.nrows();
        let shifted = &d.number - Mat::identity(dim, dim) * c(2.0 * j as f64, 0.0);
        h += &shifted * &shifted * c(b, 0.0);
    }
    h
}

/// Lipkin Hamiltonian from Kronecker products.
pub fn lipkin_hamiltonian(n: usize, lambda: f64, h: f64) -> Mat {
    let dim = 1usize << n;
    let single = |q: usize, p: Pauli| {
        let mut m = Mat::from_element(1, 1, c(1.0, 0.0));
        for k in (0..n).rev() {
            m = m.kronecker(&pauli_2x2(if k == q { p } else { Pauli::I }));
        }
        m
    };
    let mut out = Mat::zeros(dim, dim);
    for a in 0..n {
        out -= single(a, Pauli::Z) * c(h, 0.0);
        for b in a + 1..n {
            out -= single(a, Pauli::X) * single(b, Pauli::X) * c(lambda / n as f64, 0.0);
        }
    }
    out
}

/// Central finite difference of `f` at `x` in coordinate `k`.
pub fn central_difference(f: impl Fn(&[f64]) -> f64, x: &[f64], k: usize, h: f64) -> f64 {
    let mut a = x.to_vec();
    let mut b = x.to_vec();
    a[k] += h;
    b[k] -= h;
    (f(&a) - f(&b)) / (2.0 * h)
}
