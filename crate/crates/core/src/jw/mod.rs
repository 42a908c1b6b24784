//! Polynomial-time simulation of matchgate circuits on paths and cycles via
//! the Jordan-Wigner mapping to free fermions.

pub mod pauli;
pub mod rotation;
pub mod simulate;

use thiserror::Error;

use crate::graph::GraphError;
use crate::matchgate::GateError;

pub use pauli::{majorana, pauli_expectation, Pauli, PauliString};
pub use rotation::{gate_rotation, wrap_gate_rotation, BlockRotation, Sector};
pub use simulate::{
    accumulate, expected_z_cycle, expected_z_path, majorana_correlations, JwOrdering, JwSimulation, RotationAccumulator,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JwError {
    #[error("Majorana index {mu} out of range for {n} qubits")]
    MajoranaOutOfRange { mu: usize, n: usize },
    #[error("input has {got} qubits, expected {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("qubit {k} out of range for {n} qubits")]
    QubitOutOfRange { k: usize, n: usize },
    #[error("Jordan-Wigner position {k} has no right neighbour among {n}")]
    PositionOutOfRange { k: usize, n: usize },
    #[error("graph is neither a path nor a cycle")]
    NotSimulable,
    #[error("gate on {0}-{1} does not join neighbouring Jordan-Wigner positions")]
    EdgeNotAdjacent(usize, usize),
    #[error("expectation value has imaginary part {0:e}")]
    ImaginaryResidue(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gate(#[from] GateError),
}
