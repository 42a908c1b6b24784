//! Pauli strings with a phase in `{1, i, -1, -i}`, and Majorana operators.

use std::fmt;
use std::ops::Mul;

use nalgebra::DMatrix;

use super::JwError;
use crate::linalg::{c, kron, to_dynamic2, C, ONE};
use crate::oracle::ProductState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// `self * other = i^k · result`, returned as `(k, result)`.
    pub fn mul(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (X, X) | (Y, Y) | (Z, Z) => (0, I),
            (X, Y) => (1, Z),
            (Y, X) => (3, Z),
            (Y, Z) => (1, X),
            (Z, Y) => (3, X),
            (Z, X) => (1, Y),
            (X, Z) => (3, Y),
        }
    }

    pub fn matrix(self) -> crate::linalg::Mat2 {
        match self {
            Pauli::I => crate::linalg::Mat2::identity(),
            Pauli::X => crate::linalg::pauli_x(),
            Pauli::Y => crate::linalg::pauli_y(),
            Pauli::Z => crate::linalg::pauli_z(),
        }
    }

    /// `<ψ|P|ψ>` for a single-qubit state `(α, β)`.
    pub fn expectation(self, q: [C; 2]) -> f64 {
        let [a, b] = q;
        let cross = a.conj() * b;
        match self {
            Pauli::I => a.norm_sqr() + b.norm_sqr(),
            Pauli::X => 2.0 * cross.re,
            Pauli::Y => 2.0 * cross.im,
            Pauli::Z => a.norm_sqr() - b.norm_sqr(),
        }
    }

    fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// `i^phase · ops[0] ⊗ ops[1] ⊗ ...`, qubit 0 first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    phase: u8,
    ops: Vec<Pauli>,
}

impl PauliString {
    pub fn new(phase: u8, ops: Vec<Pauli>) -> Self {
        Self { phase: phase % 4, ops }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(0, vec![Pauli::I; n])
    }

    /// Parse `"XZIY"`.
    pub fn parse(s: &str) -> Option<Self> {
        let ops = s
            .chars()
            .map(|ch| match ch {
                'I' => Some(Pauli::I),
                'X' => Some(Pauli::X),
                'Y' => Some(Pauli::Y),
                'Z' => Some(Pauli::Z),
                _ => None,
            })
            .collect::<Option<_>>()?;
        Some(Self::new(0, ops))
    }

    pub fn n(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.ops
    }

    /// Power `k` of the prefactor `i^k`.
    pub fn phase_power(&self) -> u8 {
        self.phase
    }

    pub fn phase(&self) -> C {
        [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][self.phase as usize]
    }

    pub fn with_phase(mut self, k: u8) -> Self {
        self.phase = (self.phase + k) % 4;
        self
    }

    /// Product of `Z` over every qubit.
    pub fn parity(n: usize) -> Self {
        Self::new(0, vec![Pauli::Z; n])
    }

    pub fn to_dense(&self) -> DMatrix<C> {
        let mut m = DMatrix::from_element(1, 1, ONE);
        for p in &self.ops {
            m = kron(&m, &to_dynamic2(&p.matrix()));
        }
        m * self.phase()
    }
}

impl Mul for &PauliString {
    type Output = PauliString;

    fn mul(self, rhs: &PauliString) -> PauliString {
        assert_eq!(self.n(), rhs.n(), "Pauli strings of different lengths");
        let mut phase = self.phase + rhs.phase;
        let ops = self
            .ops
            .iter()
            .zip(&rhs.ops)
            .map(|(a, b)| {
                let (k, p) = a.mul(*b);
                phase += k;
                p
            })
            .collect();
        PauliString::new(phase, ops)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][self.phase as usize];
        let body: String = self.ops.iter().map(|p| p.symbol()).collect();
        write!(f, "{prefix}{body}")
    }
}

/// Majorana operator `c_mu` on `n` qubits, `mu` in `0..2n`.
///
/// `c_{2j}` is `X` on qubit `j` and `c_{2j+1}` is `Y` on qubit `j`, each with
/// a string of `Z` on qubits `0..j`.
pub fn majorana(mu: usize, n: usize) -> Result<PauliString, JwError> {
    if mu >= 2 * n {
        return Err(JwError::MajoranaOutOfRange { mu, n });
    }
    let j = mu / 2;
    let mut ops = vec![Pauli::I; n];
    for op in ops.iter_mut().take(j) {
        *op = Pauli::Z;
    }
    ops[j] = if mu.is_multiple_of(2) { Pauli::X } else { Pauli::Y };
    Ok(PauliString::new(0, ops))
}

/// `<ψ|P|ψ>` for a product state.
pub fn pauli_expectation(input: &ProductState, p: &PauliString) -> Result<C, JwError> {
    if input.n() != p.n() {
        return Err(JwError::SizeMismatch {
            expected: p.n(),
            got: input.n(),
        });
    }
    let prod: f64 = p
        .ops()
        .iter()
        .zip(input.qubits())
        .map(|(op, q)| op.expectation(*q))
        .product();
    Ok(p.phase() * prod)
}
