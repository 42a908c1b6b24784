//! Dense state-vector simulation, the ground truth for everything else.
//!
//! Qubit 0 is the most significant bit of a basis index. Only small systems
//! are supported; the fast simulator and the compiler are both checked
//! against this module.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::linalg::{Mat2, Mat4, C, ONE, ZERO};
use crate::matchgate::{Matchgate, PhysicalCircuit};

pub const MAX_ORACLE_QUBITS: usize = 20;
/// Product-state inputs must be normalized to this tolerance.
pub const NORM_TOL: f64 = 1e-10;
/// Largest acceptable weight outside the code space.
pub const LEAKAGE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("{n} qubits exceeds the dense-simulation limit of {MAX_ORACLE_QUBITS}")]
    TooManyQubits { n: usize },
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("state has {got} qubits, expected {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("gate targets must be distinct")]
    RepeatedTarget,
    #[error("a {dim}x{dim} matrix cannot act on {targets} qubit(s)")]
    BadGateShape { dim: usize, targets: usize },
    #[error("qubit {qubit} is not normalized (norm² = {norm_sq})")]
    NotNormalized { qubit: usize, norm_sq: f64 },
    #[error("invalid basis-state character `{0}`")]
    BadBasisChar(char),
    #[error("code space is malformed: {0}")]
    BadCode(String),
    #[error("circuit leaks {0:e} of the norm out of the code space")]
    LeakageExceeded(f64),
}

/// Single-qubit amplitudes `(α, β)` for each qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductState {
    qubits: Vec<[C; 2]>,
}

impl ProductState {
    pub fn new(qubits: Vec<[C; 2]>) -> Result<Self, OracleError> {
        for (qubit, q) in qubits.iter().enumerate() {
            let norm_sq = q[0].norm_sqr() + q[1].norm_sqr();
            if (norm_sq - 1.0).abs() > NORM_TOL {
                return Err(OracleError::NotNormalized { qubit, norm_sq });
            }
        }
        Ok(Self { qubits })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            qubits: vec![[ONE, ZERO]; n],
        }
    }

    /// From a string over `0`, `1`, `+`, `-`, qubit 0 first.
    pub fn from_basis_str(s: &str) -> Result<Self, OracleError> {
        let h = C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let qubits = s
            .chars()
            .map(|ch| match ch {
                '0' => Ok([ONE, ZERO]),
                '1' => Ok([ZERO, ONE]),
                '+' => Ok([h, h]),
                '-' => Ok([h, -h]),
                other => Err(OracleError::BadBasisChar(other)),
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { qubits })
    }

    pub fn n(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubit(&self, k: usize) -> [C; 2] {
        self.qubits[k]
    }

    pub fn qubits(&self) -> &[[C; 2]] {
        &self.qubits
    }

    /// Reorder qubits: position `i` of the result is qubit `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self {
            qubits: order.iter().map(|&q| self.qubits[q]).collect(),
        }
    }

    /// `<X>, <Y>, <Z>` of qubit `k`.
    pub fn bloch(&self, k: usize) -> [f64; 3] {
        let [a, b] = self.qubits[k];
        let cross = a.conj() * b;
        [2.0 * cross.re, 2.0 * cross.im, a.norm_sqr() - b.norm_sqr()]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<C>,
}

impl StateVector {
    pub fn zero(n: usize) -> Result<Self, OracleError> {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self, OracleError> {
        if n > MAX_ORACLE_QUBITS {
            return Err(OracleError::TooManyQubits { n });
        }
        let mut amps = vec![ZERO; 1 << n];
        amps[index] = ONE;
        Ok(Self { n, amps })
    }

    pub fn from_product(p: &ProductState) -> Result<Self, OracleError> {
        let n = p.n();
        if n > MAX_ORACLE_QUBITS {
            return Err(OracleError::TooManyQubits { n });
        }
        let mut amps = vec![ONE];
        for q in p.qubits() {
            let mut next = Vec::with_capacity(amps.len() * 2);
            for a in &amps {
                next.push(a * q[0]);
                next.push(a * q[1]);
            }
            amps = next;
        }
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(C::norm_sqr).sum()
    }

    pub fn inner(&self, other: &StateVector) -> C {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    fn mask(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    fn check(&self, q: usize) -> Result<(), OracleError> {
        if q >= self.n {
            return Err(OracleError::QubitOutOfRange { qubit: q, n: self.n });
        }
        Ok(())
    }

    pub fn apply_single(&mut self, u: &Mat2, q: usize) -> Result<(), OracleError> {
        self.check(q)?;
        let m = self.mask(q);
        for i in 0..self.amps.len() {
            if i & m == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | m]);
                self.amps[i] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
                self.amps[i | m] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
            }
        }
        Ok(())
    }

    pub fn apply_two(&mut self, u: &Mat4, q0: usize, q1: usize) -> Result<(), OracleError> {
        self.check(q0)?;
        self.check(q1)?;
        if q0 == q1 {
            return Err(OracleError::RepeatedTarget);
        }
        let (m0, m1) = (self.mask(q0), self.mask(q1));
        for i in 0..self.amps.len() {
            if i & (m0 | m1) == 0 {
                let idx = [i, i | m1, i | m0, i | m0 | m1];
                let v = idx.map(|k| self.amps[k]);
                for (r, &k) in idx.iter().enumerate() {
                    self.amps[k] = (0..4).map(|col| u[(r, col)] * v[col]).sum();
                }
            }
        }
        Ok(())
    }

    /// Block-sparse application: each matchgate only mixes `|00>` with `|11>`
    /// and `|01>` with `|10>`.
    pub fn apply_matchgate(&mut self, g: &Matchgate) -> Result<(), OracleError> {
        let (q0, q1) = g.edge;
        self.check(q0)?;
        self.check(q1)?;
        if q0 == q1 {
            return Err(OracleError::RepeatedTarget);
        }
        let (a, b) = (g.a.matrix(), g.b.matrix());
        let (m0, m1) = (self.mask(q0), self.mask(q1));
        for i in 0..self.amps.len() {
            if i & (m0 | m1) == 0 {
                let (e0, e1) = (i, i | m0 | m1);
                let (x, y) = (self.amps[e0], self.amps[e1]);
                self.amps[e0] = a[(0, 0)] * x + a[(0, 1)] * y;
                self.amps[e1] = a[(1, 0)] * x + a[(1, 1)] * y;
                let (o0, o1) = (i | m1, i | m0);
                let (x, y) = (self.amps[o0], self.amps[o1]);
                self.amps[o0] = b[(0, 0)] * x + b[(0, 1)] * y;
                self.amps[o1] = b[(1, 0)] * x + b[(1, 1)] * y;
            }
        }
        Ok(())
    }

    /// `<Z_k>`.
    pub fn expectation_z(&self, k: usize) -> Result<f64, OracleError> {
        self.check(k)?;
        let m = self.mask(k);
        Ok(self
            .amps
            .iter()
            .enumerate()
            .map(|(i, a)| if i & m == 0 { a.norm_sqr() } else { -a.norm_sqr() })
            .sum())
    }
}

/// Apply a 2x2 or 4x4 unitary to the listed qubits (first target most
/// significant).
pub fn apply_gate(state: &mut StateVector, u: &DMatrix<C>, targets: &[usize]) -> Result<(), OracleError> {
    match (u.nrows(), targets) {
        (2, [q]) => state.apply_single(&Mat2::from_fn(|r, c| u[(r, c)]), *q),
        (4, [q0, q1]) => state.apply_two(&Mat4::from_fn(|r, c| u[(r, c)]), *q0, *q1),
        (dim, t) => Err(OracleError::BadGateShape { dim, targets: t.len() }),
    }
}

pub fn run_circuit(c: &PhysicalCircuit, input: &ProductState) -> Result<StateVector, OracleError> {
    if input.n() != c.n() {
        return Err(OracleError::SizeMismatch {
            expected: c.n(),
            got: input.n(),
        });
    }
    let mut state = StateVector::from_product(input)?;
    for g in c.gates() {
        state.apply_matchgate(g)?;
    }
    Ok(state)
}

pub fn expectation_z(state: &StateVector, k: usize) -> Result<f64, OracleError> {
    state.expectation_z(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Encoding {
    /// `|0>_L = |00>`, `|1>_L = |11>`
    EvenParity,
    /// `|0>_L = |01>`, `|1>_L = |10>`
    OddParity,
}

/// Logical qubits encoded in pairs of physical qubits; every other physical
/// qubit is held at `|0>`.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeSpace {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
    pub encoding: Encoding,
}

impl CodeSpace {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>, encoding: Encoding) -> Result<Self, OracleError> {
        let mut used = vec![false; n];
        for &(u, v) in &pairs {
            for q in [u, v] {
                if q >= n {
                    return Err(OracleError::QubitOutOfRange { qubit: q, n });
                }
                if used[q] {
                    return Err(OracleError::BadCode(format!("qubit {q} used twice")));
                }
                used[q] = true;
            }
        }
        Ok(Self { n, pairs, encoding })
    }

    pub fn m(&self) -> usize {
        self.pairs.len()
    }

    /// Physical basis index of logical basis state `x` (logical qubit 0 most
    /// significant).
    pub fn embed(&self, x: usize) -> usize {
        let m = self.m();
        let mut idx = 0usize;
        for (l, &(u, v)) in self.pairs.iter().enumerate() {
            let bit = (x >> (m - 1 - l)) & 1 == 1;
            let (bu, bv) = match (self.encoding, bit) {
                (Encoding::EvenParity, b) => (b, b),
                (Encoding::OddParity, false) => (false, true),
                (Encoding::OddParity, true) => (true, false),
            };
            if bu {
                idx |= 1 << (self.n - 1 - u);
            }
            if bv {
                idx |= 1 << (self.n - 1 - v);
            }
        }
        idx
    }
}

/// Logical matrix of a physical circuit restricted to a code space, together
/// with the worst-case norm lost outside it.
#[derive(Clone, Debug, PartialEq)]
pub struct EncodedAction {
    pub matrix: DMatrix<C>,
    pub leakage: f64,
}

/// Like [`encoded_action`] but reports leakage instead of failing on it.
pub fn encoded_action_unchecked(c: &PhysicalCircuit, code: &CodeSpace) -> Result<EncodedAction, OracleError> {
    let n = c.n();
    if n > MAX_ORACLE_QUBITS {
        return Err(OracleError::TooManyQubits { n });
    }
    if code.n != n {
        return Err(OracleError::SizeMismatch {
            expected: n,
            got: code.n,
        });
    }
    let dim = 1usize << code.m();
    let rows: Vec<usize> = (0..dim).map(|x| code.embed(x)).collect();
    let column = |x: usize| -> Result<Vec<C>, OracleError> {
        let mut state = StateVector::basis(n, rows[x])?;
        for g in c.gates() {
            state.apply_matchgate(g)?;
        }
        Ok(rows.iter().map(|&r| state.amps[r]).collect())
    };

    // columns are independent, so spread them over threads
    let workers = std::thread::available_parallelism()
        .map(|w| w.get())
        .unwrap_or(1)
        .min(dim);
    let mut columns: Vec<Option<Result<Vec<C>, OracleError>>> = vec![None; dim];
    std::thread::scope(|scope| {
        let chunk = dim.div_ceil(workers);
        for (w, slot) in columns.chunks_mut(chunk).enumerate() {
            let column = &column;
            scope.spawn(move || {
                for (k, out) in slot.iter_mut().enumerate() {
                    *out = Some(column(w * chunk + k));
                }
            });
        }
    });

    let mut matrix = DMatrix::zeros(dim, dim);
    let mut leakage: f64 = 0.0;
    for (x, col) in columns.into_iter().enumerate() {
        let col = col.expect("every column computed")?;
        let kept: f64 = col.iter().map(C::norm_sqr).sum();
        leakage = leakage.max(1.0 - kept);
        for (r, v) in col.into_iter().enumerate() {
            matrix[(r, x)] = v;
        }
    }
    Ok(EncodedAction {
        matrix,
        leakage: leakage.max(0.0),
    })
}

pub fn encoded_action(c: &PhysicalCircuit, code: &CodeSpace) -> Result<EncodedAction, OracleError> {
    let action = encoded_action_unchecked(c, code)?;
    if action.leakage > LEAKAGE_TOL {
        return Err(OracleError::LeakageExceeded(action.leakage));
    }
    Ok(action)
}

/// Dense unitary of a whole physical circuit, for small checks.
pub fn circuit_unitary(c: &PhysicalCircuit) -> Result<DMatrix<C>, OracleError> {
    let n = c.n();
    if n > 12 {
        return Err(OracleError::TooManyQubits { n });
    }
    let dim = 1usize << n;
    let mut u = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut state = StateVector::basis(n, col)?;
        for g in c.gates() {
            state.apply_matchgate(g)?;
        }
        for (r, a) in state.amps.iter().enumerate() {
            u[(r, col)] = *a;
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::linalg::{c, hadamard, kron2, max_abs_diff, pauli_x};
    use crate::matchgate::{Matchgate, NamedGate};

    #[test]
    fn fswap_on_basis_states() {
        // matchgates preserve parity: |01> -> |10>, |11> -> -|11>
        let mut s = StateVector::basis(2, 0b01).unwrap();
        s.apply_matchgate(&Matchgate::fswap(0, 1)).unwrap();
        assert_eq!(s.amplitudes()[0b10], ONE);
        let mut s = StateVector::basis(2, 0b11).unwrap();
        s.apply_matchgate(&Matchgate::fswap(0, 1)).unwrap();
        assert_eq!(s.amplitudes()[0b11], -ONE);
    }

    #[test]
    fn block_and_dense_application_agree() {
        let input = ProductState::from_basis_str("+0-1+").unwrap();
        let g = Matchgate::xy(0.37, 3, 1);
        let mut a = StateVector::from_product(&input).unwrap();
        let mut b = a.clone();
        a.apply_matchgate(&g).unwrap();
        b.apply_two(&g.matrix(), 3, 1).unwrap();
        let diff = a
            .amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-14);
    }

    #[test]
    fn apply_gate_shapes() {
        let mut s = StateVector::zero(3).unwrap();
        apply_gate(&mut s, &crate::linalg::to_dynamic2(&hadamard()), &[1]).unwrap();
        assert!((s.expectation_z(1).unwrap()).abs() < 1e-15);
        let bad = apply_gate(&mut s, &crate::linalg::to_dynamic2(&hadamard()), &[0, 1]);
        assert!(matches!(bad, Err(OracleError::BadGateShape { .. })));
        let swap = crate::linalg::to_dynamic4(&NamedGate::Swap.matrix());
        assert_eq!(apply_gate(&mut s, &swap, &[2, 2]), Err(OracleError::RepeatedTarget));
        assert!(matches!(
            StateVector::zero(21),
            Err(OracleError::TooManyQubits { n: 21 })
        ));
    }

    #[test]
    fn product_state_validation() {
        assert!(matches!(
            ProductState::new(vec![[c(1.0, 0.0), c(0.1, 0.0)]]),
            Err(OracleError::NotNormalized { qubit: 0, .. })
        ));
        assert_eq!(ProductState::from_basis_str("01x"), Err(OracleError::BadBasisChar('x')));
        let p = ProductState::from_basis_str("+").unwrap();
        let [x, y, z] = p.bloch(0);
        assert!((x - 1.0).abs() < 1e-15 && y.abs() < 1e-15 && z.abs() < 1e-15);
    }

    #[test]
    fn encoded_identity_and_leakage() {
        let g = Graph::path(4);
        let code = CodeSpace::new(4, vec![(0, 1), (2, 3)], Encoding::EvenParity).unwrap();
        let empty = PhysicalCircuit::new(g.clone());
        let id = encoded_action(&empty, &code).unwrap();
        assert!(max_abs_diff(&id.matrix, &DMatrix::identity(4, 4)) < 1e-15);

        // G(U,U) on the pair acts as U on the logical qubit
        let mut c1 = PhysicalCircuit::new(g.clone());
        let x = crate::matchgate::Unitary2::x();
        c1.push(Matchgate::both(x, (0, 1))).unwrap();
        let act = encoded_action(&c1, &code).unwrap();
        let expected = crate::linalg::to_dynamic4(&kron2(&pauli_x(), &crate::linalg::Mat2::identity()));
        assert!(max_abs_diff(&act.matrix, &expected) < 1e-15);

        // an f-swap across two pairs moves weight out of the code
        let mut leak = PhysicalCircuit::new(g);
        leak.push(Matchgate::fswap(1, 2)).unwrap();
        assert!(matches!(
            encoded_action(&leak, &code),
            Err(OracleError::LeakageExceeded(_))
        ));
    }

    #[test]
    fn odd_code_embedding() {
        let code = CodeSpace::new(4, vec![(2, 0)], Encoding::OddParity).unwrap();
        assert_eq!(code.embed(0), 0b1000); // v = qubit 0 is |1>
        assert_eq!(code.embed(1), 0b0010);
    }
}
