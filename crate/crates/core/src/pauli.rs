//! Pauli strings and weighted sums of Pauli strings.
//!
//! A string over `n` qubits is stored as a pair of bit masks `(x, z)`:
//! qubit `q` carries `I` when neither bit `q` is set, `X` for `x` only,
//! `Z` for `z` only and `Y` when both are set. Bit `q` of a basis-state
//! index is the value of qubit `q` (little-endian).
//!
//! In the textual form the first letter belongs to qubit 0, so `XZI`
//! is `X₀ Z₁ I₂`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients with modulus below this are dropped when terms are collected.
pub const DROP_TOLERANCE: f64 = 1e-12;

/// Largest register a mask pair can describe.
pub const MAX_QUBITS: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// Single-qubit product `self · other` as `(phase, letter)`.
    fn product(self, other: Pauli) -> (Complex64, Pauli) {
        use Pauli::*;
        let one = Complex64::new(1.0, 0.0);
        match (self, other) {
            (I, p) | (p, I) => (one, p),
            (X, X) | (Y, Y) | (Z, Z) => (one, I),
            (X, Y) => (IM, Z),
            (Y, X) => (-IM, Z),
            (Y, Z) => (IM, X),
            (Z, Y) => (-IM, X),
            (Z, X) => (IM, Y),
            (X, Z) => (-IM, Y),
        }
    }
}

const IM: Complex64 = Complex64::new(0.0, 1.0);

fn check_qubits(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        Err(Error::TooManyQubits(n))
    } else {
        Ok(())
    }
}

/// A weighted tensor product of single-qubit Pauli operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
    pub coeff: Complex64,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        Ok(Self {
            n_qubits,
            x: 0,
            z: 0,
            coeff: Complex64::new(1.0, 0.0),
        })
    }

    pub fn from_masks(n_qubits: usize, x: u64, z: u64, coeff: Complex64) -> Result<Self> {
        check_qubits(n_qubits)?;
        let full = (1u64 << n_qubits) - 1;
        if (x | z) & !full != 0 {
            return Err(Error::InvalidParameter(format!(
                "masks ({x:#b}, {z:#b}) touch qubits outside a {n_qubits}-qubit register"
            )));
        }
        Ok(Self { n_qubits, x, z, coeff })
    }

    pub fn from_letters(letters: &[Pauli], coeff: Complex64) -> Result<Self> {
        check_qubits(letters.len())?;
        let (mut x, mut z) = (0u64, 0u64);
        for (q, p) in letters.iter().enumerate() {
            let (xb, zb) = p.bits();
            x |= (xb as u64) << q;
            z |= (zb as u64) << q;
        }
        Ok(Self {
            n_qubits: letters.len(),
            x,
            z,
            coeff,
        })
    }

    /// `letter` on `qubit`, identity elsewhere, unit coefficient.
    pub fn single(n_qubits: usize, qubit: usize, letter: Pauli) -> Result<Self> {
        check_qubits(n_qubits)?;
        if qubit >= n_qubits {
            return Err(Error::InvalidParameter(format!(
                "qubit {qubit} outside a {n_qubits}-qubit register"
            )));
        }
        let (xb, zb) = letter.bits();
        Ok(Self {
            n_qubits,
            x: (xb as u64) << qubit,
            z: (zb as u64) << qubit,
            coeff: Complex64::new(1.0, 0.0),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn letter(&self, qubit: usize) -> Pauli {
        Pauli::from_bits((self.x >> qubit) & 1 == 1, (self.z >> qubit) & 1 == 1)
    }

    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.n_qubits).map(|q| self.letter(q)).collect()
    }

    pub fn letters_string(&self) -> String {
        (0..self.n_qubits).map(|q| self.letter(q).as_char()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    pub fn with_coeff(mut self, coeff: Complex64) -> Self {
        self.coeff = coeff;
        self
    }

    /// Two strings commute iff they anticommute on an even number of qubits.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() % 2 == 0
    }

    /// Group product `self · other` including the accumulated phase.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::SizeMismatch {
                expected: self.n_qubits,
                actual: other.n_qubits,
            });
        }
        let mut phase = self.coeff * other.coeff;
        let mut support = self.x | self.z | other.x | other.z;
        while support != 0 {
            let q = support.trailing_zeros() as usize;
            support &= support - 1;
            let (p, _) = self.letter(q).product(other.letter(q));
            phase *= p;
        }
        Ok(PauliString {
            n_qubits: self.n_qubits,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            coeff: phase,
        })
    }

    /// Phase and target index of `P|basis⟩`, ignoring the coefficient.
    ///
    /// `P|i⟩ = i^{#Y} (−1)^{|i ∧ z|} |i ⊕ x⟩`.
    #[inline]
    pub fn action_phase(&self, basis: usize) -> Complex64 {
        let n_y = (self.x & self.z).count_ones();
        let sign = if (basis as u64 & self.z).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        I_POWERS[(n_y % 4) as usize] * sign
    }
}

pub(crate) const I_POWERS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·{}", self.coeff, self.letters_string())
    }
}

/// Sum of Pauli strings with collected, tolerance-filtered coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<(u64, u64), Complex64>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        Ok(Self {
            n_qubits,
            terms: BTreeMap::new(),
        })
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        let mut s = Self::zero(n_qubits)?;
        s.terms.insert((0, 0), Complex64::new(1.0, 0.0));
        Ok(s)
    }

    pub fn from_strings<I: IntoIterator<Item = PauliString>>(n_qubits: usize, strings: I) -> Result<Self> {
        let mut s = Self::zero(n_qubits)?;
        for p in strings {
            s.add_string(p)?;
        }
        s.chop();
        Ok(s)
    }

    /// Build from `(coefficient, letters)` pairs, e.g. `(-0.5, "XXI")`.
    pub fn from_labels(n_qubits: usize, terms: &[(f64, &str)]) -> Result<Self> {
        let mut s = Self::zero(n_qubits)?;
        for (c, label) in terms {
            let letters = parse_letters(label, 0)?;
            if letters.len() != n_qubits {
                return Err(Error::SizeMismatch {
                    expected: n_qubits,
                    actual: letters.len(),
                });
            }
            s.add_string(PauliString::from_letters(&letters, Complex64::new(*c, 0.0))?)?;
        }
        s.chop();
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = PauliString> + '_ {
        self.terms.iter().map(move |(&(x, z), &coeff)| PauliString {
            n_qubits: self.n_qubits,
            x,
            z,
            coeff,
        })
    }

    pub fn coefficient(&self, letters: &str) -> Result<Complex64> {
        let p = PauliString::from_letters(&parse_letters(letters, 0)?, Complex64::new(1.0, 0.0))?;
        Ok(self
            .terms
            .get(&(p.x, p.z))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0)))
    }

    /// Adds one string without dropping small coefficients.
    pub fn add_string(&mut self, p: PauliString) -> Result<()> {
        if p.n_qubits != self.n_qubits {
            return Err(Error::SizeMismatch {
                expected: self.n_qubits,
                actual: p.n_qubits,
            });
        }
        *self.terms.entry((p.x, p.z)).or_insert(Complex64::new(0.0, 0.0)) += p.coeff;
        Ok(())
    }

    /// Removes every coefficient with modulus below [`DROP_TOLERANCE`].
    pub fn chop(&mut self) {
        self.terms.retain(|_, c| c.norm() >= DROP_TOLERANCE);
    }

    pub fn scaled(&self, factor: Complex64) -> PauliSum {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= factor;
        }
        out.chop();
        out
    }

    pub fn scaled_real(&self, factor: f64) -> PauliSum {
        self.scaled(Complex64::new(factor, 0.0))
    }

    pub fn try_add(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_same(other)?;
        let mut out = self.clone();
        for p in other.iter() {
            out.add_string(p)?;
        }
        out.chop();
        Ok(out)
    }

    pub fn try_sub(&self, other: &PauliSum) -> Result<PauliSum> {
        self.try_add(&other.scaled_real(-1.0))
    }

    /// Operator product `self · other`, expanded and collected.
    pub fn try_mul(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_same(other)?;
        let mut out = PauliSum::zero(self.n_qubits)?;
        for a in self.iter() {
            for b in other.iter() {
                out.add_string(a.multiply(&b)?)?;
            }
        }
        out.chop();
        Ok(out)
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_same(other)?;
        let mut out = PauliSum::zero(self.n_qubits)?;
        for a in self.iter() {
            for b in other.iter() {
                if !a.commutes_with(&b) {
                    // anticommuting strings: ab − ba = 2ab
                    let ab = a.multiply(&b)?;
                    out.add_string(ab.with_coeff(ab.coeff * 2.0))?;
                }
            }
        }
        out.chop();
        Ok(out)
    }

    /// Pauli strings are Hermitian, so the adjoint conjugates coefficients.
    pub fn adjoint(&self) -> PauliSum {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.conj();
        }
        out
    }

    pub fn max_imaginary(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self) -> bool {
        self.max_imaginary() < DROP_TOLERANCE
    }

    pub fn ensure_hermitian(&self) -> Result<()> {
        if self.is_hermitian() {
            Ok(())
        } else {
            Err(Error::NotHermitian(self.max_imaginary()))
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|&(x, _)| x == 0)
    }

    /// True when every pair of terms commutes.
    pub fn terms_commute(&self) -> bool {
        let strings: Vec<PauliString> = self.iter().collect();
        strings
            .iter()
            .enumerate()
            .all(|(i, a)| strings[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Sum of coefficient moduli, an upper bound on the spectral norm.
    pub fn one_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Largest coefficient-wise distance to `other`.
    pub fn max_difference(&self, other: &PauliSum) -> Result<f64> {
        Ok(self
            .try_sub(other)?
            .terms
            .values()
            .map(|c| c.norm())
            .fold(0.0, f64::max))
    }

    /// Serializes as one `<real> <imag> <letters>` line per term.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for p in self.iter() {
            s.push_str(&format!("{:?} {:?} {}\n", p.coeff.re, p.coeff.im, p.letters_string()));
        }
        s
    }

    /// Parses the line format written by [`PauliSum::to_text`].
    ///
    /// Blank lines and lines starting with `#` are skipped. `n_qubits` is
    /// required only when the text holds no terms.
    pub fn parse_text(text: &str, n_qubits: Option<usize>) -> Result<PauliSum> {
        let mut sum: Option<PauliSum> = n_qubits.map(PauliSum::zero).transpose()?;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected `<real> <imag> <letters>`, found {} fields", fields.len()),
                });
            }
            let parse_f = |s: &str| {
                s.parse::<f64>().map_err(|e| Error::Parse {
                    line: line_no,
                    msg: format!("bad number `{s}`: {e}"),
                })
            };
            let coeff = Complex64::new(parse_f(fields[0])?, parse_f(fields[1])?);
            let letters = parse_letters(fields[2], line_no)?;
            let target = sum.get_or_insert(PauliSum::zero(letters.len())?);
            if letters.len() != target.n_qubits {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected {} letters, found {}", target.n_qubits, letters.len()),
                });
            }
            target.add_string(PauliString::from_letters(&letters, coeff)?)?;
        }
        let mut sum = sum.ok_or(Error::Parse {
            line: 0,
            msg: "no terms and no qubit count given".into(),
        })?;
        sum.chop();
        Ok(sum)
    }

    fn check_same(&self, other: &PauliSum) -> Result<()> {
        if self.n_qubits == other.n_qubits {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: self.n_qubits,
                actual: other.n_qubits,
            })
        }
    }
}

fn parse_letters(s: &str, line: usize) -> Result<Vec<Pauli>> {
    s.chars()
        .map(|c| {
            Pauli::from_char(c).ok_or_else(|| Error::Parse {
                line,
                msg: format!("unknown Pauli letter `{c}`"),
            })
        })
        .collect()
}

/// Free-function form of [`PauliString::multiply`].
pub fn pauli_multiply(a: &PauliString, b: &PauliString) -> Result<PauliString> {
    a.multiply(b)
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// Operator sugar for same-sized sums; mismatched sizes panic.
impl Add for &PauliSum {
    type Output = PauliSum;
    fn add(self, rhs: &PauliSum) -> PauliSum {
        self.try_add(rhs).expect("PauliSum sizes differ")
    }
}

impl Sub for &PauliSum {
    type Output = PauliSum;
    fn sub(self, rhs: &PauliSum) -> PauliSum {
        self.try_sub(rhs).expect("PauliSum sizes differ")
    }
}

impl Mul for &PauliSum {
    type Output = PauliSum;
    fn mul(self, rhs: &PauliSum) -> PauliSum {
        self.try_mul(rhs).expect("PauliSum sizes differ")
    }
}

impl Neg for &PauliSum {
    type Output = PauliSum;
    fn neg(self) -> PauliSum {
        self.scaled_real(-1.0)
    }
}
