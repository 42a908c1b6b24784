//! Two-qubit matchgates, named gates, and matchgate Hamiltonians.
//!
//! On the ordered basis `|00>, |01>, |10>, |11>` (first qubit most
//! significant) a matchgate `G(A, B)` applies `A` to the even-parity pair
//! `|00>, |11>` and `B` to the odd-parity pair `|01>, |10>`, with
//! `det A = det B`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use nalgebra::DMatrix;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::linalg::{
    c, kron2, max_abs_diff, pauli_x, pauli_y, pauli_z, phase_gate, unitarity_error, Mat2, Mat4, C, I, ONE,
};

/// Tolerance for unitarity of user-supplied 2x2 blocks.
pub const UNITARY_TOL: f64 = 1e-12;
/// Tolerance for block structure and determinant matching of 4x4 matrices.
pub const BLOCK_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GateError {
    #[error("matrix is not unitary (max |U†U - I| = {0:e})")]
    NotUnitary(f64),
    #[error("determinants differ: det A = {det_a}, det B = {det_b}")]
    DeterminantMismatch { det_a: C, det_b: C },
    #[error("edge {0}-{1} is not in the interaction graph")]
    EdgeNotInGraph(usize, usize),
    #[error("unknown gate name `{0}`")]
    UnknownGate(String),
    #[error("gate `{0}` needs a parameter")]
    MissingParameter(String),
    #[error("`{0}` is not a matchgate")]
    NotAMatchgate(String),
    #[error("matrix logarithm is ambiguous")]
    LogBranchAmbiguity,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A 2x2 unitary, checked on construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unitary2(Mat2);

impl Unitary2 {
    pub fn new(m: Mat2) -> Result<Self, GateError> {
        let err = max_abs_diff(&(m.adjoint() * m), &Mat2::identity());
        if err > UNITARY_TOL {
            return Err(GateError::NotUnitary(err));
        }
        Ok(Self(m))
    }

    // blocks pulled out of an already-validated 4x4 matrix
    fn trusted(m: Mat2) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self(Mat2::identity())
    }

    pub fn x() -> Self {
        Self(pauli_x())
    }

    pub fn y() -> Self {
        Self(pauli_y())
    }

    pub fn z() -> Self {
        Self(pauli_z())
    }

    pub fn hadamard() -> Self {
        Self(crate::linalg::hadamard())
    }

    pub fn phase() -> Self {
        Self(phase_gate())
    }

    /// `exp(i a X)`.
    pub fn x_rotation(a: f64) -> Self {
        Self(crate::linalg::pauli_rotation(a, &pauli_x()))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn det(&self) -> C {
        self.0.determinant()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn mul(&self, other: &Unitary2) -> Self {
        Self(self.0 * other.0)
    }
}

/// Provenance of a matchgate, kept so circuits serialize to readable names
/// and so the XY-only mode can check its gate alphabet.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateKind {
    FSwap,
    ISwap,
    ISwapDagger,
    /// `exp(i a/2 (XX + YY))`
    Xy(f64),
    General,
}

/// A matchgate placed on an ordered edge; `edge.0` is the first (more
/// significant) qubit of the 4x4 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matchgate {
    pub a: Unitary2,
    pub b: Unitary2,
    pub edge: (usize, usize),
    pub kind: GateKind,
}

fn xy_blocks(a: f64) -> (Mat2, Mat2) {
    // XX + YY is zero on the even block and 2 X on the odd block
    let odd = crate::linalg::pauli_rotation(a, &pauli_x());
    (Mat2::identity(), odd)
}

impl Matchgate {
    pub fn new(a: Unitary2, b: Unitary2, edge: (usize, usize)) -> Result<Self, GateError> {
        let (da, db) = (a.det(), b.det());
        if (da - db).norm() > BLOCK_TOL {
            return Err(GateError::DeterminantMismatch { det_a: da, det_b: db });
        }
        Ok(Self {
            a,
            b,
            edge,
            kind: GateKind::General,
        })
    }

    fn named(a: Mat2, b: Mat2, edge: (usize, usize), kind: GateKind) -> Self {
        Self {
            a: Unitary2(a),
            b: Unitary2(b),
            edge,
            kind,
        }
    }

    /// `G(Z, X)`: swaps two fermionic modes.
    pub fn fswap(u: usize, v: usize) -> Self {
        Self::named(pauli_z(), pauli_x(), (u, v), GateKind::FSwap)
    }

    /// `G(I, iX) = exp(i π/4 (XX + YY))`.
    pub fn iswap(u: usize, v: usize) -> Self {
        Self::named(Mat2::identity(), pauli_x() * I, (u, v), GateKind::ISwap)
    }

    pub fn iswap_dagger(u: usize, v: usize) -> Self {
        Self::named(Mat2::identity(), pauli_x() * -I, (u, v), GateKind::ISwapDagger)
    }

    /// `exp(i a/2 (XX + YY))`.
    pub fn xy(a: f64, u: usize, v: usize) -> Self {
        let (even, odd) = xy_blocks(a);
        Self::named(even, odd, (u, v), GateKind::Xy(a))
    }

    /// `G(U, U)`, which acts as `U` on an encoded qubit in either parity code.
    pub fn both(u: Unitary2, edge: (usize, usize)) -> Self {
        Self {
            a: u,
            b: u,
            edge,
            kind: GateKind::General,
        }
    }

    /// `iSWAP` for a non-negative sign, `iSWAP†` otherwise.
    pub fn iswap_power(sign: i32, u: usize, v: usize) -> Self {
        if sign >= 0 {
            Self::iswap(u, v)
        } else {
            Self::iswap_dagger(u, v)
        }
    }

    pub fn matrix(&self) -> Mat4 {
        let (a, b) = (self.a.matrix(), self.b.matrix());
        let mut m = Mat4::zeros();
        m[(0, 0)] = a[(0, 0)];
        m[(0, 3)] = a[(0, 1)];
        m[(3, 0)] = a[(1, 0)];
        m[(3, 3)] = a[(1, 1)];
        m[(1, 1)] = b[(0, 0)];
        m[(1, 2)] = b[(0, 1)];
        m[(2, 1)] = b[(1, 0)];
        m[(2, 2)] = b[(1, 1)];
        m
    }

    pub fn inverse(&self) -> Self {
        let kind = match self.kind {
            GateKind::FSwap => GateKind::FSwap,
            GateKind::ISwap => GateKind::ISwapDagger,
            GateKind::ISwapDagger => GateKind::ISwap,
            GateKind::Xy(a) => GateKind::Xy(-a),
            GateKind::General => GateKind::General,
        };
        Self {
            a: self.a.adjoint(),
            b: self.b.adjoint(),
            edge: self.edge,
            kind,
        }
    }

    /// The same gate with its qubits listed in the other order.
    pub fn flipped(&self) -> Self {
        // reversing qubit order conjugates the odd block by X
        let x = pauli_x();
        Self {
            a: self.a,
            b: Unitary2(x * self.b.matrix() * x),
            edge: (self.edge.1, self.edge.0),
            kind: self.kind,
        }
    }

    /// Whether the gate is `exp(i θ (XX + YY))` for some θ.
    pub fn is_xy_generated(&self) -> bool {
        matches!(self.kind, GateKind::ISwap | GateKind::ISwapDagger | GateKind::Xy(_))
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            GateKind::FSwap => "fswap",
            GateKind::ISwap => "iswap",
            GateKind::ISwapDagger => "iswap_dagger",
            GateKind::Xy(_) => "xy",
            GateKind::General => "matchgate",
        }
    }
}

/// Block form of a 4x4 unitary if it is a matchgate, `None` if it is a
/// unitary that is not.
pub fn is_matchgate(u: &Mat4) -> Result<Option<(Unitary2, Unitary2)>, GateError> {
    let err = unitarity_error(&crate::linalg::to_dynamic4(u));
    if err > BLOCK_TOL {
        return Err(GateError::NotUnitary(err));
    }
    let off = [(0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2)];
    if off.iter().any(|&(r, col)| u[(r, col)].norm() > BLOCK_TOL) {
        return Ok(None);
    }
    let a = Mat2::new(u[(0, 0)], u[(0, 3)], u[(3, 0)], u[(3, 3)]);
    let b = Mat2::new(u[(1, 1)], u[(1, 2)], u[(2, 1)], u[(2, 2)]);
    if (a.determinant() - b.determinant()).norm() > BLOCK_TOL {
        return Ok(None);
    }
    Ok(Some((Unitary2::trusted(a), Unitary2::trusted(b))))
}

/// Gates that can be named in circuit files and on the command line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NamedGate {
    FSwap,
    ISwap,
    ISwapDagger,
    Xy(f64),
    /// `G(U, U)`
    Both(Unitary2),
    Swap,
    Cz,
    /// `P ⊗ I` with `P = diag(1, i)`
    PhaseFirst,
}

impl NamedGate {
    pub fn parse(name: &str, param: Option<f64>) -> Result<Self, GateError> {
        let need = || param.ok_or_else(|| GateError::MissingParameter(name.to_string()));
        Ok(match name {
            "fswap" | "f_swap" => NamedGate::FSwap,
            "iswap" | "i_swap" => NamedGate::ISwap,
            "iswap_dagger" | "iswap_dag" => NamedGate::ISwapDagger,
            "xy" => NamedGate::Xy(need()?),
            "swap" => NamedGate::Swap,
            "cz" => NamedGate::Cz,
            "p_phase" => NamedGate::PhaseFirst,
            other => return Err(GateError::UnknownGate(other.to_string())),
        })
    }

    pub fn matrix(&self) -> Mat4 {
        match *self {
            NamedGate::FSwap => Matchgate::fswap(0, 1).matrix(),
            NamedGate::ISwap => Matchgate::iswap(0, 1).matrix(),
            NamedGate::ISwapDagger => Matchgate::iswap_dagger(0, 1).matrix(),
            NamedGate::Xy(a) => Matchgate::xy(a, 0, 1).matrix(),
            NamedGate::Both(u) => Matchgate::both(u, (0, 1)).matrix(),
            NamedGate::Swap => {
                let mut m = Mat4::zeros();
                m[(0, 0)] = ONE;
                m[(1, 2)] = ONE;
                m[(2, 1)] = ONE;
                m[(3, 3)] = ONE;
                m
            }
            NamedGate::Cz => Mat4::from_diagonal(&nalgebra::Vector4::new(ONE, ONE, ONE, -ONE)),
            NamedGate::PhaseFirst => kron2(&phase_gate(), &Mat2::identity()),
        }
    }

    /// Decided from the matrix, not from a lookup table.
    pub fn is_matchgate(&self) -> bool {
        matches!(is_matchgate(&self.matrix()), Ok(Some(_)))
    }

    /// Place the gate on an edge, failing for non-matchgates.
    pub fn on_edge(&self, u: usize, v: usize) -> Result<Matchgate, GateError> {
        Ok(match *self {
            NamedGate::FSwap => Matchgate::fswap(u, v),
            NamedGate::ISwap => Matchgate::iswap(u, v),
            NamedGate::ISwapDagger => Matchgate::iswap_dagger(u, v),
            NamedGate::Xy(a) => Matchgate::xy(a, u, v),
            NamedGate::Both(g) => Matchgate::both(g, (u, v)),
            other => match is_matchgate(&other.matrix())? {
                Some((a, b)) => Matchgate::new(a, b, (u, v))?,
                None => return Err(GateError::NotAMatchgate(format!("{other:?}"))),
            },
        })
    }
}

/// `XX + YY` on two qubits.
pub fn xy_hamiltonian() -> Mat4 {
    kron2(&pauli_x(), &pauli_x()) + kron2(&pauli_y(), &pauli_y())
}

/// Real coefficients of a matchgate Hamiltonian
/// `H = zu Z⊗I + zv I⊗Z + xx X⊗X + yy Y⊗Y + xy X⊗Y + yx Y⊗X + id I⊗I`
/// with `U = exp(i H)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MatchgateHamiltonian {
    pub zu: f64,
    pub zv: f64,
    pub xx: f64,
    pub yy: f64,
    pub xy: f64,
    pub yx: f64,
    pub id: f64,
}

impl MatchgateHamiltonian {
    pub fn matrix(&self) -> Mat4 {
        let (x, y, z, e) = (pauli_x(), pauli_y(), pauli_z(), Mat2::identity());
        let r = |v: f64| c(v, 0.0);
        kron2(&z, &e) * r(self.zu)
            + kron2(&e, &z) * r(self.zv)
            + kron2(&x, &x) * r(self.xx)
            + kron2(&y, &y) * r(self.yy)
            + kron2(&x, &y) * r(self.xy)
            + kron2(&y, &x) * r(self.yx)
            + Mat4::identity() * r(self.id)
    }

    pub fn exponentiate(&self) -> Mat4 {
        (self.matrix() * I).exp()
    }

    /// Coefficients with the two qubits exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            zu: self.zv,
            zv: self.zu,
            xy: self.yx,
            yx: self.xy,
            ..*self
        }
    }
}

// Generator g with V = exp(i g·σ) for V in SU(2), |g| in [0, π].
fn su2_log(v: &Mat2) -> [f64; 3] {
    let (a, b) = (v[(0, 0)], v[(1, 0)]);
    let w = [b.im, -b.re, a.im];
    let s = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
    let theta = s.atan2(a.re);
    if s < 1e-300 {
        return if a.re > 0.0 { [0.0; 3] } else { [0.0, 0.0, PI] };
    }
    [theta * w[0] / s, theta * w[1] / s, theta * w[2] / s]
}

/// Hamiltonian `H` with `exp(i H) = G(A, B)`.
///
/// The identity coefficient carries the common phase `arg(det A) / 2`; each
/// parity block then contributes a rotation of angle in `[0, π]`. This branch
/// choice is total, so the logarithm never fails.
pub fn gate_to_hamiltonian(m: &Matchgate) -> Result<MatchgateHamiltonian, GateError> {
    let phi = m.a.det().arg() / 2.0;
    let unphase = C::from_polar(1.0, -phi);
    let ge = su2_log(&(m.a.matrix() * unphase));
    let go = su2_log(&(m.b.matrix() * unphase));
    let h = MatchgateHamiltonian {
        xx: (ge[0] + go[0]) / 2.0,
        yy: (go[0] - ge[0]) / 2.0,
        xy: (ge[1] - go[1]) / 2.0,
        yx: (ge[1] + go[1]) / 2.0,
        zu: (ge[2] + go[2]) / 2.0,
        zv: (ge[2] - go[2]) / 2.0,
        id: phi,
    };
    if max_abs_diff(&h.exponentiate(), &m.matrix()) > 1e-8 {
        return Err(GateError::LogBranchAmbiguity);
    }
    Ok(h)
}

/// Reference Hamiltonians for named gates, used in documentation and tests.
pub fn fswap_hamiltonian() -> MatchgateHamiltonian {
    MatchgateHamiltonian {
        zu: -FRAC_PI_4,
        zv: -FRAC_PI_4,
        xx: -FRAC_PI_4,
        yy: -FRAC_PI_4,
        id: FRAC_PI_2,
        ..Default::default()
    }
}

/// Matchgates on the edges of an interaction graph, in time order.
#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalCircuit {
    graph: Graph,
    gates: Vec<Matchgate>,
}

impl PhysicalCircuit {
    pub fn new(graph: Graph) -> Self {
        Self {
            graph,
            gates: Vec::new(),
        }
    }

    pub fn with_gates(graph: Graph, gates: Vec<Matchgate>) -> Result<Self, GateError> {
        let mut circuit = Self::new(graph);
        for g in gates {
            circuit.push(g)?;
        }
        Ok(circuit)
    }

    pub fn push(&mut self, gate: Matchgate) -> Result<(), GateError> {
        let (u, v) = gate.edge;
        if !self.graph.has_edge(u, v) {
            return Err(GateError::EdgeNotInGraph(u, v));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Matchgate>>(&mut self, gates: I) -> Result<(), GateError> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn gates(&self) -> &[Matchgate] {
        &self.gates
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

/// Dense 4x4 matrix of any 2x2 pair as a helper for callers holding raw data.
pub fn block_matrix(a: &Mat2, b: &Mat2) -> DMatrix<C> {
    let g = Matchgate {
        a: Unitary2(*a),
        b: Unitary2(*b),
        edge: (0, 1),
        kind: GateKind::General,
    };
    crate::linalg::to_dynamic4(&g.matrix())
}
