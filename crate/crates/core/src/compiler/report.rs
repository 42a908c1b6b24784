//! Machine-readable summary of a compilation.

use serde::Serialize;

use super::layout::{GateSet, Layout, Strategy};
use super::Mode;
use crate::oracle::Encoding;

/// Which gadget performs two-qubit logical gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gadget {
    /// CZ by exchanging two qubits through the ancillas beside the branch.
    BranchSwitch,
    /// CZ from four effective f-SWAPs between leaves and a Z correction.
    LeafTranspositions,
    /// `exp(i a X⊗Z)` on five vertices, one of degree three.
    FiveVertexBranch,
    /// `exp(i a Y⊗Z)` around the centre of a star.
    StarCentre,
}

/// Per-two-qubit-gate cost limit `constant · scale + additive`, where the
/// scale is `n` for path layouts and `p` for leaf layouts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverheadBound {
    pub scale_name: &'static str,
    pub scale: usize,
    pub constant: usize,
    pub additive: usize,
    pub limit: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompilationReport {
    pub mode: Mode,
    pub strategy: Strategy,
    pub gadget: Gadget,
    pub n: usize,
    pub longest_path: usize,
    pub leaves: usize,
    pub logical_qubits: usize,
    pub logical_capacity: usize,
    /// Fraction of physical qubits not holding logical data.
    pub discarded_fraction: f64,
    pub encoding: Encoding,
    pub pairs: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate_set: Option<GateSet>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub phase_ledger: Vec<u8>,
    /// Physical qubits that need an `X` before the circuit to prepare `|0...0>_L`.
    pub preparation_x: Vec<usize>,
    pub logical_gates: usize,
    pub physical_gates: usize,
    pub gates_per_logical_gate: Vec<usize>,
    pub max_gates_per_two_qubit_gate: usize,
    pub overhead_bound: OverheadBound,
    pub within_bound: bool,
}

impl CompilationReport {
    pub(crate) fn new(layout: &Layout, per_gate: Vec<usize>, two_qubit: Vec<bool>, bound: OverheadBound) -> Self {
        let n = layout.graph.n();
        let m = layout.m();
        let gadget = match (layout.mode, layout.strategy) {
            (_, Strategy::PathBranch) => Gadget::BranchSwitch,
            (_, Strategy::LeafRouting) => Gadget::LeafTranspositions,
            (_, Strategy::XyPathBranch) => Gadget::FiveVertexBranch,
            (_, Strategy::XyLeafRouting) => match &layout.geometry {
                super::layout::Geometry::Leaves(lg) if lg.star_center.is_some() => Gadget::StarCentre,
                _ => Gadget::FiveVertexBranch,
            },
        };
        let preparation_x = match layout.encoding {
            Encoding::OddParity => layout.pairs.iter().map(|&(_, v)| v).collect(),
            Encoding::EvenParity => Vec::new(),
        };
        let max2 = per_gate
            .iter()
            .zip(&two_qubit)
            .filter(|(_, &t)| t)
            .map(|(&c, _)| c)
            .max()
            .unwrap_or(0);
        Self {
            mode: layout.mode,
            strategy: layout.strategy,
            gadget,
            n,
            longest_path: layout.analysis.p(),
            leaves: layout.analysis.l(),
            logical_qubits: m,
            logical_capacity: layout.capacity,
            discarded_fraction: 1.0 - (2 * m) as f64 / n as f64,
            encoding: layout.encoding,
            pairs: layout.pairs.clone(),
            gate_set: layout.gate_set,
            phase_ledger: layout.phase_ledger.clone(),
            preparation_x,
            logical_gates: per_gate.len(),
            physical_gates: per_gate.iter().sum(),
            within_bound: max2 <= bound.limit,
            gates_per_logical_gate: per_gate,
            max_gates_per_two_qubit_gate: max2,
            overhead_bound: bound,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}
