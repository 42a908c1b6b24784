//! Compile logical circuits into matchgates on a graph that is neither a
//! path nor a cycle.
//!
//! Every such connected graph has a spanning tree with a branching vertex,
//! and in that tree either the longest path or the leaf set has more than
//! `√n` vertices. Logical qubits live in adjacent-ish pairs of physical
//! qubits: on the longest path they are moved next to the branching vertex
//! for two-qubit gates, among the leaves they are carried through the `|0>`
//! interior of the tree.

pub mod layout;
pub mod leaf;
pub mod logical;
pub mod path_router;
pub mod report;
pub mod xy;

use nalgebra::DMatrix;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphClass, GraphError};
use crate::linalg::C;
use crate::matchgate::{GateError, Matchgate, PhysicalCircuit, Unitary2};
use crate::oracle::{encoded_action_unchecked, OracleError};

pub use layout::{choose_strategy, leaf_layout, path_layout, Block, GateSet, Geometry, Layout, Strategy};
pub use leaf::{compile_cz_leaf, route_through_ancillas};
pub use logical::{lower_xz_rotation, LogicalCircuit, LogicalGate};
pub use path_router::{compile_cz_branch, route_logical};
pub use report::{CompilationReport, Gadget, OverheadBound};

/// Per-two-qubit-gate gate budget on path layouts, in units of `n`.
pub const PATH_CONSTANT: usize = 8;
/// Per-two-qubit-gate gate budget on leaf layouts, in units of `p`.
pub const LEAF_CONSTANT: usize = 8;
/// Fixed part of the leaf budget, covering the gadget itself.
pub const LEAF_ADDITIVE: usize = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Arbitrary matchgates: f-SWAP routing, CZ and single-qubit gates.
    Matchgate,
    /// Only `exp(iθ(XX + YY))`: X and XZ rotations.
    Xy,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CompileError {
    #[error("the graph is a {}; it is classically simulable and needs no compilation", .0.as_str())]
    SimulableGraph(GraphClass),
    #[error("requested {requested} logical qubits but the layout holds {capacity}")]
    CapacityExceeded { requested: usize, capacity: usize },
    #[error("logical qubit {qubit} out of range for {m} logical qubits")]
    LogicalOutOfRange { qubit: usize, m: usize },
    #[error("two-qubit gate on logical qubit {0} twice")]
    RepeatedLogicalTarget(usize),
    #[error("gate `{0}` is not available with XY interactions only")]
    NonPrimitiveGate(&'static str),
    #[error("no arrangement of the path reaches the requested position")]
    BlockedRoute,
    #[error("vertex {0} on the routing path holds data")]
    PathNotClear(usize),
    #[error("ancilla vertex {0} is not in |0>")]
    AncillaDirty(usize),
    #[error("no pebble motion reaches a gadget embedding")]
    RoutingFailed,
    #[error("operation does not apply to this layout's strategy")]
    WrongStrategy,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Debug)]
pub struct Compilation {
    pub circuit: PhysicalCircuit,
    pub layout: Layout,
    pub report: CompilationReport,
}

/// Result of comparing a compilation against its logical circuit on the
/// dense oracle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verification {
    pub fidelity: f64,
    pub leakage: f64,
}

impl Compilation {
    pub fn expected_unitary(&self, c: &LogicalCircuit) -> DMatrix<C> {
        expected_unitary(&self.layout, c)
    }

    pub fn verify(&self, c: &LogicalCircuit) -> Result<Verification, CompileError> {
        verify_circuit(&self.circuit, &self.layout, c)
    }
}

/// The logical unitary a layout should realise for `c`: the circuit itself,
/// conjugated by `P` on every logical qubit for gate set B.
pub fn expected_unitary(layout: &Layout, c: &LogicalCircuit) -> DMatrix<C> {
    match layout.gate_set {
        Some(GateSet::B) => c.unitary_conjugated_by_phase(),
        _ => c.unitary(),
    }
}

/// Compare a physical circuit on `layout`'s code space against `c`.
pub fn verify_circuit(
    circuit: &PhysicalCircuit,
    layout: &Layout,
    c: &LogicalCircuit,
) -> Result<Verification, CompileError> {
    let action = encoded_action_unchecked(circuit, &layout.code_space())?;
    let fidelity = crate::linalg::fidelity_up_to_phase(&expected_unitary(layout, c), &action.matrix);
    Ok(Verification {
        fidelity,
        leakage: action.leakage,
    })
}

fn lower_matchgate(layout: &Layout, gate: &LogicalGate) -> Result<Vec<Matchgate>, CompileError> {
    let path = layout.strategy.is_path();
    match *gate {
        LogicalGate::OneQubit { target, u } => {
            if path {
                path_router::compile_single_path(layout, target, u)
            } else {
                leaf::compile_single_leaf(layout, target, u)
            }
        }
        LogicalGate::XRot { target, a } => lower_matchgate(
            layout,
            &LogicalGate::OneQubit {
                target,
                u: Unitary2::x_rotation(a),
            },
        ),
        LogicalGate::Cz(i, j) => {
            if path {
                compile_cz_branch(layout, i, j)
            } else {
                compile_cz_leaf(layout, i, j)
            }
        }
        LogicalGate::XzRot { x, z, a } => {
            let mut out = Vec::new();
            for g in lower_xz_rotation(x, z, a) {
                out.extend(lower_matchgate(layout, &g)?);
            }
            Ok(out)
        }
    }
}

fn lower_xy(layout: &Layout, gate: &LogicalGate) -> Result<Vec<Matchgate>, CompileError> {
    let path = layout.strategy.is_path();
    match *gate {
        LogicalGate::XRot { target, a } => {
            if path {
                path_router::compile_xrot_path(layout, target, a)
            } else {
                xy::compile_xrot_leaf(layout, target, a)
            }
        }
        LogicalGate::XzRot { x, z, a } => {
            if path {
                path_router::compile_xz_branch(layout, x, z, a)
            } else {
                xy::compile_xz_leaf(layout, x, z, a)
            }
        }
        other => Err(CompileError::NonPrimitiveGate(other.name())),
    }
}

fn overhead_bound(layout: &Layout) -> OverheadBound {
    if layout.strategy.is_path() {
        let n = layout.graph.n();
        OverheadBound {
            scale_name: "n",
            scale: n,
            constant: PATH_CONSTANT,
            additive: 0,
            limit: PATH_CONSTANT * n,
        }
    } else {
        let p = layout.analysis.p();
        OverheadBound {
            scale_name: "p",
            scale: p,
            constant: LEAF_CONSTANT,
            additive: LEAF_ADDITIVE,
            limit: LEAF_CONSTANT * p + LEAF_ADDITIVE,
        }
    }
}

pub fn compile_with_mode(c: &LogicalCircuit, g: &Graph, mode: Mode) -> Result<Compilation, CompileError> {
    let layout = choose_strategy(g, mode)?;
    compile_on_layout(c, &layout)
}

/// Compile onto a given layout (for instance one with a forced strategy).
pub fn compile_on_layout(c: &LogicalCircuit, layout: &Layout) -> Result<Compilation, CompileError> {
    let mode = layout.mode;
    if mode == Mode::Xy {
        if let Some(bad) = c.gates().iter().find(|g| !g.is_xy_primitive()) {
            return Err(CompileError::NonPrimitiveGate(bad.name()));
        }
    }
    let layout = layout.with_logical(c.m())?;
    let mut circuit = PhysicalCircuit::new(layout.graph.clone());
    let mut per_gate = Vec::with_capacity(c.gates().len());
    let mut two_qubit = Vec::with_capacity(c.gates().len());
    for gate in c.gates() {
        let gates = match mode {
            Mode::Matchgate => lower_matchgate(&layout, gate)?,
            Mode::Xy => lower_xy(&layout, gate)?,
        };
        per_gate.push(gates.len());
        two_qubit.push(gate.is_two_qubit());
        circuit.extend(gates)?;
    }
    let report = CompilationReport::new(&layout, per_gate, two_qubit, overhead_bound(&layout));
    Ok(Compilation {
        circuit,
        layout,
        report,
    })
}

/// Compile with arbitrary matchgates.
pub fn compile(c: &LogicalCircuit, g: &Graph) -> Result<Compilation, CompileError> {
    compile_with_mode(c, g, Mode::Matchgate)
}

/// Compile with XY interactions only.
pub fn xy_compile(c: &LogicalCircuit, g: &Graph) -> Result<Compilation, CompileError> {
    compile_with_mode(c, g, Mode::Xy)
}
