//! JSON file formats for physical circuits, logical circuits and product
//! states, plus the canonical float printing used for all output.
//!
//! Complex numbers are `[re, im]`. Gate edges are ordered pairs whose first
//! vertex is the first tensor factor.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::compiler::{CompileError, LogicalCircuit, LogicalGate};
use crate::graph::{Graph, GraphError};
use crate::linalg::{c, Mat2, C};
use crate::matchgate::{GateError, GateKind, Matchgate, NamedGate, PhysicalCircuit, Unitary2};
use crate::oracle::{OracleError, ProductState};

/// Significant digits of every float written by this crate.
pub const SIGNIFICANT_DIGITS: usize = 15;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {msg}")]
    Io { path: PathBuf, msg: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Compile(#[from] CompileError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e.to_string())
    }
}

type Complex = [f64; 2];
type Matrix2 = [[Complex; 2]; 2];

fn to_c(z: Complex) -> C {
    c(z[0], z[1])
}

fn from_c(z: C) -> Complex {
    [round_sig(z.re), round_sig(z.im)]
}

fn to_mat2(m: &Matrix2) -> Mat2 {
    Mat2::new(to_c(m[0][0]), to_c(m[0][1]), to_c(m[1][0]), to_c(m[1][1]))
}

fn from_mat2(m: &Mat2) -> Matrix2 {
    [
        [from_c(m[(0, 0)]), from_c(m[(0, 1)])],
        [from_c(m[(1, 0)]), from_c(m[(1, 1)])],
    ]
}

/// Round to [`SIGNIFICANT_DIGITS`] significant digits; `-0` becomes `0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(num) if !num.is_i64() && !num.is_u64() => {
            if let Some(f) = num.as_f64().and_then(|f| serde_json::Number::from_f64(round_sig(f))) {
                *num = f;
            }
        }
        Value::Array(xs) => xs.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded, ending in a newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("value serializes");
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })
}

/// Read a graph in the plain-text edge-list format.
pub fn load_graph(path: &Path) -> Result<Graph, FormatError> {
    Ok(Graph::parse(&read(path)?)?)
}

// ---------------------------------------------------------------- circuits

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GraphSpec {
    Named(String),
    Inline { edges: Vec<[usize; 2]> },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GateSpec {
    Named {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        param: Option<f64>,
        edge: [usize; 2],
    },
    Explicit {
        #[serde(rename = "A")]
        a: Matrix2,
        #[serde(rename = "B")]
        b: Matrix2,
        edge: [usize; 2],
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitFile {
    n: usize,
    graph: GraphSpec,
    gates: Vec<GateSpec>,
}

fn resolve(reference: &str, base_dir: Option<&Path>) -> PathBuf {
    let direct = PathBuf::from(reference);
    if direct.exists() {
        return direct;
    }
    match base_dir {
        Some(dir) if dir.join(reference).exists() => dir.join(reference),
        _ => direct,
    }
}

/// Parse a physical circuit. A graph given by file name is looked up in the
/// working directory first and then in `base_dir`.
pub fn parse_physical_circuit(text: &str, base_dir: Option<&Path>) -> Result<PhysicalCircuit, FormatError> {
    let file: CircuitFile = serde_json::from_str(text)?;
    let graph = match &file.graph {
        GraphSpec::Named(s) if s == "path" => Graph::path(file.n),
        GraphSpec::Named(s) if s == "cycle" => Graph::cycle(file.n)?,
        GraphSpec::Named(reference) => load_graph(&resolve(reference, base_dir))?,
        GraphSpec::Inline { edges } => Graph::new(file.n, edges.iter().map(|e| (e[0], e[1])))?,
    };
    if graph.n() != file.n {
        return Err(FormatError::Schema(format!(
            "circuit declares n = {} but its graph has {} vertices",
            file.n,
            graph.n()
        )));
    }
    let mut circuit = PhysicalCircuit::new(graph);
    for spec in file.gates {
        let gate = match spec {
            GateSpec::Named { name, param, edge } => NamedGate::parse(&name, param)?.on_edge(edge[0], edge[1])?,
            GateSpec::Explicit { a, b, edge } => Matchgate::new(
                Unitary2::new(to_mat2(&a))?,
                Unitary2::new(to_mat2(&b))?,
                (edge[0], edge[1]),
            )?,
        };
        circuit.push(gate)?;
    }
    Ok(circuit)
}

pub fn load_physical_circuit(path: &Path) -> Result<PhysicalCircuit, FormatError> {
    parse_physical_circuit(&read(path)?, path.parent())
}

fn graph_spec(g: &Graph) -> GraphSpec {
    if g.edges() == Graph::path(g.n()).edges() {
        return GraphSpec::Named("path".into());
    }
    if let Ok(cycle) = Graph::cycle(g.n()) {
        if g.edges() == cycle.edges() {
            return GraphSpec::Named("cycle".into());
        }
    }
    GraphSpec::Inline {
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
    }
}

fn gate_spec(g: &Matchgate) -> GateSpec {
    let edge = [g.edge.0, g.edge.1];
    let named = |name: &str, param| GateSpec::Named {
        name: name.into(),
        param,
        edge,
    };
    match g.kind {
        GateKind::FSwap => named("fswap", None),
        GateKind::ISwap => named("iswap", None),
        GateKind::ISwapDagger => named("iswap_dagger", None),
        GateKind::Xy(a) => named("xy", Some(a)),
        GateKind::General => GateSpec::Explicit {
            a: from_mat2(g.a.matrix()),
            b: from_mat2(g.b.matrix()),
            edge,
        },
    }
}

/// Canonical JSON for a physical circuit. Graphs that are the standard path
/// or cycle on `0..n` are written by name, others as an edge list.
pub fn physical_circuit_to_json(circuit: &PhysicalCircuit) -> String {
    to_canonical_json(&CircuitFile {
        n: circuit.n(),
        graph: graph_spec(circuit.graph()),
        gates: circuit.gates().iter().map(gate_spec).collect(),
    })
}

// ---------------------------------------------------------- product states

#[derive(Deserialize)]
#[serde(untagged)]
enum StateSpec {
    Basis(String),
    Amplitudes(Vec<[Complex; 2]>),
}

/// A product state from JSON (a list of `[[re, im], [re, im]]` per qubit or a
/// quoted basis string) or from a bare basis string such as `0101`.
pub fn parse_product_state(text: &str) -> Result<ProductState, FormatError> {
    let t = text.trim();
    if !(t.starts_with('[') || t.starts_with('"')) {
        return Ok(ProductState::from_basis_str(t)?);
    }
    Ok(match serde_json::from_str::<StateSpec>(t)? {
        StateSpec::Basis(s) => ProductState::from_basis_str(&s)?,
        StateSpec::Amplitudes(qs) => ProductState::new(qs.iter().map(|q| [to_c(q[0]), to_c(q[1])]).collect())?,
    })
}

// -------------------------------------------------------- logical circuits

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
enum LogicalSpec {
    U {
        target: usize,
        #[serde(rename = "U")]
        u: Matrix2,
    },
    Cz {
        targets: [usize; 2],
    },
    Xrot {
        target: usize,
        a: f64,
    },
    Xzrot {
        targets: [usize; 2],
        a: f64,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LogicalFile {
    m: usize,
    gates: Vec<LogicalSpec>,
}

pub fn parse_logical_circuit(text: &str) -> Result<LogicalCircuit, FormatError> {
    let file: LogicalFile = serde_json::from_str(text)?;
    let mut circuit = LogicalCircuit::new(file.m);
    for spec in file.gates {
        let gate = match spec {
            LogicalSpec::U { target, u } => LogicalGate::OneQubit {
                target,
                u: Unitary2::new(to_mat2(&u))?,
            },
            LogicalSpec::Cz { targets } => LogicalGate::Cz(targets[0], targets[1]),
            LogicalSpec::Xrot { target, a } => LogicalGate::XRot { target, a },
            LogicalSpec::Xzrot { targets, a } => LogicalGate::XzRot {
                x: targets[0],
                z: targets[1],
                a,
            },
        };
        circuit.push(gate)?;
    }
    Ok(circuit)
}

pub fn load_logical_circuit(path: &Path) -> Result<LogicalCircuit, FormatError> {
    parse_logical_circuit(&read(path)?)
}

pub fn logical_circuit_to_json(circuit: &LogicalCircuit) -> String {
    let gates = circuit
        .gates()
        .iter()
        .map(|g| match *g {
            LogicalGate::OneQubit { target, u } => LogicalSpec::U {
                target,
                u: from_mat2(u.matrix()),
            },
            LogicalGate::Cz(i, j) => LogicalSpec::Cz { targets: [i, j] },
            LogicalGate::XRot { target, a } => LogicalSpec::Xrot { target, a },
            LogicalGate::XzRot { x, z, a } => LogicalSpec::Xzrot { targets: [x, z], a },
        })
        .collect();
    to_canonical_json(&LogicalFile { m: circuit.m(), gates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::oracle::circuit_unitary;

    #[test]
    fn rounding_keeps_fifteen_digits() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(-0.0), 0.0);
        assert_eq!(round_sig(1.0 / 3.0).to_string(), "0.333333333333333");
        assert_eq!(round_sig(-1e-300), -1e-300);
    }

    #[test]
    fn named_and_explicit_gates_parse() {
        let text = r#"{"n": 3, "graph": "path", "gates": [
            {"name": "fswap", "edge": [0, 1]},
            {"name": "xy", "param": 0.25, "edge": [2, 1]},
            {"A": [[[1,0],[0,0]],[[0,0],[1,0]]], "B": [[[0,0],[0,1]],[[0,1],[0,0]]], "edge": [1, 2]}
        ]}"#;
        let c = parse_physical_circuit(text, None).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.gates()[1].edge, (2, 1));
        let again = parse_physical_circuit(&physical_circuit_to_json(&c), None).unwrap();
        let (u, v) = (circuit_unitary(&c).unwrap(), circuit_unitary(&again).unwrap());
        assert!(max_abs_diff(&u, &v) < 1e-13);
    }

    #[test]
    fn bad_circuits_are_rejected() {
        let cases = [
            r#"{"n": 3, "graph": "path", "gates": [{"name": "fswap", "edge": [0, 2]}]}"#,
            r#"{"n": 3, "graph": "path", "gates": [{"name": "cz", "edge": [0, 1]}]}"#,
            r#"{"n": 3, "graph": "path", "gates": [{"name": "xy", "edge": [0, 1]}]}"#,
            r#"{"n": 3, "graph": "path", "gates": [{"name": "bogus", "edge": [0, 1]}]}"#,
            r#"{"n": 2, "graph": "path", "gates": [{"A": [[[2,0],[0,0]],[[0,0],[1,0]]], "B": [[[1,0],[0,0]],[[0,0],[1,0]]], "edge": [0, 1]}]}"#,
            r#"{"n": 2, "graph": "path", "gates": [], "extra": 1}"#,
            r#"{"n": 2, "graph": "missing-file.txt", "gates": []}"#,
            "not json",
        ];
        for text in cases {
            assert!(parse_physical_circuit(text, None).is_err(), "{text}");
        }
    }

    #[test]
    fn swap_is_refused_but_p_phase_accepted() {
        let p = r#"{"n": 2, "graph": "path", "gates": [{"name": "p_phase", "edge": [0, 1]}]}"#;
        assert!(parse_physical_circuit(p, None).is_ok());
        let s = r#"{"n": 2, "graph": "path", "gates": [{"name": "swap", "edge": [0, 1]}]}"#;
        assert!(matches!(
            parse_physical_circuit(s, None),
            Err(FormatError::Gate(GateError::NotAMatchgate(_)))
        ));
    }

    #[test]
    fn inline_graph_round_trips() {
        let g = crate::families::star(3);
        let mut c = PhysicalCircuit::new(g.clone());
        c.push(Matchgate::iswap(1, 0)).unwrap();
        let back = parse_physical_circuit(&physical_circuit_to_json(&c), None).unwrap();
        assert_eq!(back.graph().edges(), g.edges());
        assert_eq!(back.gates()[0].kind, GateKind::ISwap);
    }

    #[test]
    fn product_states() {
        assert_eq!(parse_product_state("0101").unwrap().n(), 4);
        assert_eq!(parse_product_state("\"+-\"").unwrap().n(), 2);
        let s = parse_product_state("[[[0.6,0],[0,0.8]], [[1,0],[0,0]]]").unwrap();
        assert!((s.qubit(0)[1].im - 0.8).abs() < 1e-15);
        assert!(parse_product_state("[[[1,0],[1,0]]]").is_err());
        assert!(parse_product_state("01x").is_err());
    }

    #[test]
    fn logical_circuits_round_trip() {
        let text = r#"{"m": 3, "gates": [
            {"op": "u", "target": 0, "U": [[[0,0],[1,0]],[[1,0],[0,0]]]},
            {"op": "cz", "targets": [0, 2]},
            {"op": "xrot", "target": 1, "a": 0.5},
            {"op": "xzrot", "targets": [2, 1], "a": 1.25}
        ]}"#;
        let c = parse_logical_circuit(text).unwrap();
        assert_eq!(c.gates().len(), 4);
        let again = parse_logical_circuit(&logical_circuit_to_json(&c)).unwrap();
        assert_eq!(again, c);
        assert!(parse_logical_circuit(r#"{"m": 2, "gates": [{"op": "cz", "targets": [0, 0]}]}"#).is_err());
        assert!(parse_logical_circuit(r#"{"m": 2, "gates": [{"op": "ccz", "targets": [0, 1]}]}"#).is_err());
    }
}
