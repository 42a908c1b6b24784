//! `matchgraph`: classify interaction graphs, simulate matchgate circuits on
//! paths and cycles, compile logical circuits onto other graphs and verify
//! the result on the dense oracle.
//!
//! JSON goes to stdout, a short human summary to stderr. Failures print one
//! JSON line `{"error": kind, "exit_code": n, "message": ...}` to stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use matchgraph::compiler::{choose_strategy, compile_with_mode, verify_circuit, CompileError, Layout, Mode};
use matchgraph::formats::{
    load_graph, load_logical_circuit, load_physical_circuit, parse_product_state, physical_circuit_to_json,
    to_canonical_json, FormatError,
};
use matchgraph::graph::{classify, Graph, GraphClass, GraphError};
use matchgraph::jw::{accumulate, JwError};
use matchgraph::oracle::{run_circuit, OracleError, MAX_ORACLE_QUBITS};
use matchgraph::{GateError, PhysicalCircuit, ProductState};

/// Largest physical register `verify` will build an encoded action for.
const VERIFY_MAX_QUBITS: usize = 16;
const FIDELITY_THRESHOLD: f64 = 1.0 - 1e-9;
const LEAKAGE_THRESHOLD: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "matchgraph", version, about = "Matchgate circuits on interaction graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Jw,
    Dense,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Matchgate,
    Xy,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Matchgate => Mode::Matchgate,
            ModeArg::Xy => Mode::Xy,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Path, cycle or other; for other graphs, the tree analysis and strategy.
    Classify { graph: PathBuf },
    /// Z expectations of a circuit on a product input.
    Simulate {
        #[arg(long, value_enum, default_value = "jw")]
        method: Method,
        /// Graph file; must match the circuit's own graph if both are given.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        circuit: PathBuf,
        /// Basis string such as `0101`, a JSON product state, or a file holding one.
        #[arg(long)]
        input: Option<String>,
        /// `Z:k[,k...]`; all qubits when omitted.
        #[arg(long)]
        observable: Option<String>,
    },
    /// Compile a logical circuit onto a graph.
    Compile {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        logical: PathBuf,
        #[arg(long, value_enum, default_value = "matchgate")]
        mode: ModeArg,
        /// Directory for `circuit.json` and `report.json`; without it both go to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a compiled circuit against its logical circuit.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        logical: PathBuf,
        #[arg(long)]
        compiled: PathBuf,
        #[arg(long, value_enum, default_value = "matchgate")]
        mode: ModeArg,
    },
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(code: u8, kind: &'static str, message: impl ToString) -> Self {
        Failure {
            code,
            kind,
            message: message.to_string(),
        }
    }

    fn parse(message: impl ToString) -> Self {
        Failure::new(2, "parse", message)
    }
}

fn from_graph(e: GraphError) -> Failure {
    match e {
        GraphError::Disconnected => Failure::new(3, "disconnected", e),
        e => Failure::parse(e),
    }
}

fn from_oracle(e: OracleError) -> Failure {
    match e {
        OracleError::TooManyQubits { .. } => Failure::new(5, "too-many-qubits", e),
        e => Failure::parse(e),
    }
}

fn from_gate(e: GateError) -> Failure {
    match e {
        GateError::Graph(g) => from_graph(g),
        e => Failure::parse(e),
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Graph(g) => from_graph(g),
            FormatError::Gate(g) => from_gate(g),
            FormatError::Oracle(o) => from_oracle(o),
            FormatError::Compile(c) => c.into(),
            e => Failure::parse(e),
        }
    }
}

impl From<CompileError> for Failure {
    fn from(e: CompileError) -> Self {
        match e {
            CompileError::SimulableGraph(_) => Failure::new(
                4,
                "method-graph-mismatch",
                format!("{e}; simulate it with --method jw instead"),
            ),
            CompileError::CapacityExceeded { .. } => Failure::new(6, "capacity", e),
            CompileError::NonPrimitiveGate(_) => Failure::new(7, "non-primitive-gate", e),
            CompileError::LogicalOutOfRange { .. } | CompileError::RepeatedLogicalTarget(_) => Failure::parse(e),
            CompileError::Graph(g) => from_graph(g),
            CompileError::Gate(g) => from_gate(g),
            CompileError::Oracle(o) => from_oracle(o),
            e => Failure::new(8, "internal", e),
        }
    }
}

impl From<JwError> for Failure {
    fn from(e: JwError) -> Self {
        match e {
            JwError::NotSimulable => Failure::new(
                4,
                "method-graph-mismatch",
                "the jw method needs a path or a cycle; compile circuits for other graphs with `matchgraph compile`",
            ),
            JwError::Graph(g) => from_graph(g),
            JwError::Gate(g) => from_gate(g),
            JwError::SizeMismatch { .. } | JwError::QubitOutOfRange { .. } => Failure::parse(e),
            e => Failure::new(8, "internal", e),
        }
    }
}

fn emit(value: &Value) {
    print!("{}", to_canonical_json(value));
}

fn classify_cmd(path: &Path) -> Result<(), Failure> {
    let g = load_graph(path)?;
    let class = classify(&g).map_err(from_graph)?;
    let mut out = Map::new();
    out.insert("class".into(), json!(class.as_str()));
    out.insert("simulable".into(), json!(class.is_simulable()));
    out.insert("n".into(), json!(g.n()));
    if class != GraphClass::Other {
        eprintln!(
            "{}: {} on {} vertices, classically simulable",
            path.display(),
            class.as_str(),
            g.n()
        );
        emit(&Value::Object(out));
        return Ok(());
    }
    let layout = choose_strategy(&g, Mode::Matchgate)?;
    let xy = choose_strategy(&g, Mode::Xy)?;
    let a = &layout.analysis;
    out.insert("longest_path".into(), json!(a.p()));
    out.insert("leaves".into(), json!(a.l()));
    out.insert("branch_points".into(), json!(a.branch_points));
    out.insert("strategy".into(), json!(layout.strategy.as_str()));
    out.insert("logical_capacity".into(), json!(layout.capacity));
    out.insert("xy_strategy".into(), json!(xy.strategy.as_str()));
    out.insert("xy_logical_capacity".into(), json!(xy.capacity));
    eprintln!(
        "{}: other, n = {}, p = {}, l = {}; {} with {} logical qubits ({} with {} in XY mode)",
        path.display(),
        g.n(),
        a.p(),
        a.l(),
        layout.strategy.as_str(),
        layout.capacity,
        xy.strategy.as_str(),
        xy.capacity
    );
    emit(&Value::Object(out));
    Ok(())
}

fn parse_observable(spec: &str) -> Result<Vec<usize>, Failure> {
    let list = spec
        .strip_prefix("Z:")
        .ok_or_else(|| Failure::parse(format!("observable `{spec}` must look like Z:k[,k...]")))?;
    list.split(',')
        .map(|k| {
            k.trim()
                .parse()
                .map_err(|_| Failure::parse(format!("bad qubit index `{k}` in observable")))
        })
        .collect()
}

fn read_input(arg: Option<&str>, n: usize) -> Result<ProductState, Failure> {
    let Some(arg) = arg else {
        return Ok(ProductState::zeros(n));
    };
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Failure::parse(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    let state = parse_product_state(&text)?;
    if state.n() != n {
        return Err(Failure::parse(format!(
            "input has {} qubits but the circuit acts on {n}",
            state.n()
        )));
    }
    Ok(state)
}

fn same_graph(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edges() == b.edges()
}

fn simulate_cmd(
    method: Method,
    graph: Option<&Path>,
    circuit: &Path,
    input: Option<&str>,
    observable: Option<&str>,
) -> Result<(), Failure> {
    let c = load_physical_circuit(circuit)?;
    if let Some(gpath) = graph {
        let g = load_graph(gpath)?;
        if !same_graph(&g, c.graph()) {
            return Err(Failure::new(
                4,
                "method-graph-mismatch",
                format!("{} is not the graph of {}", gpath.display(), circuit.display()),
            ));
        }
    }
    let n = c.n();
    let input = read_input(input, n)?;
    let ks = match observable {
        Some(spec) => parse_observable(spec)?,
        None => (0..n).collect(),
    };
    if let Some(&k) = ks.iter().find(|&&k| k >= n) {
        return Err(Failure::parse(format!("qubit {k} out of range for {n} qubits")));
    }
    let values = match method {
        Method::Jw => jw_values(&c, &input, &ks)?,
        Method::Dense => dense_values(&c, &input, &ks)?,
    };
    let out: Map<String, Value> = ks.iter().zip(&values).map(|(k, v)| (k.to_string(), json!(v))).collect();
    eprintln!(
        "{} gates on {} qubits, method {}",
        c.len(),
        n,
        match method {
            Method::Jw => "jw",
            Method::Dense => "dense",
        }
    );
    emit(&Value::Object(out));
    Ok(())
}

fn jw_values(c: &PhysicalCircuit, input: &ProductState, ks: &[usize]) -> Result<Vec<f64>, Failure> {
    classify(c.graph()).map_err(from_graph)?;
    let sim = accumulate(c)?;
    ks.iter().map(|&k| Ok(sim.expected_z(input, k)?)).collect()
}

fn dense_values(c: &PhysicalCircuit, input: &ProductState, ks: &[usize]) -> Result<Vec<f64>, Failure> {
    if c.n() > MAX_ORACLE_QUBITS {
        return Err(from_oracle(OracleError::TooManyQubits { n: c.n() }));
    }
    let state = run_circuit(c, input).map_err(from_oracle)?;
    ks.iter()
        .map(|&k| state.expectation_z(k).map_err(from_oracle))
        .collect()
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::new(9, "io", format!("{}: {e}", path.display())))
}

fn compile_cmd(graph: &Path, logical: &Path, mode: Mode, out: Option<&Path>) -> Result<(), Failure> {
    let g = load_graph(graph)?;
    let c = load_logical_circuit(logical)?;
    let comp = compile_with_mode(&c, &g, mode)?;
    let circuit_json = physical_circuit_to_json(&comp.circuit);
    let r = &comp.report;
    eprintln!(
        "{}: {} logical gates -> {} matchgates, strategy {}, {} logical qubits in {} physical",
        graph.display(),
        r.logical_gates,
        r.physical_gates,
        r.strategy.as_str(),
        r.logical_qubits,
        r.n
    );
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| Failure::new(9, "io", format!("{}: {e}", dir.display())))?;
            write_file(&dir.join("circuit.json"), &circuit_json)?;
            let report = to_canonical_json(&r.to_json());
            write_file(&dir.join("report.json"), &report)?;
            print!("{report}");
        }
        None => {
            let circuit: Value = serde_json::from_str(&circuit_json).expect("own output parses");
            emit(&json!({ "circuit": circuit, "report": r.to_json() }));
        }
    }
    Ok(())
}

fn verify_cmd(graph: &Path, logical: &Path, compiled: &Path, mode: Mode) -> Result<(), Failure> {
    let g = load_graph(graph)?;
    let c = load_logical_circuit(logical)?;
    let circuit = load_physical_circuit(compiled)?;
    if !same_graph(&g, circuit.graph()) {
        return Err(Failure::new(
            4,
            "method-graph-mismatch",
            format!("{} was not compiled for {}", compiled.display(), graph.display()),
        ));
    }
    if g.n() > VERIFY_MAX_QUBITS {
        return Err(Failure::new(
            5,
            "too-many-qubits",
            format!(
                "{} physical qubits exceeds the verification limit of {VERIFY_MAX_QUBITS}",
                g.n()
            ),
        ));
    }
    let layout: Layout = choose_strategy(&g, mode)?.with_logical(c.m())?;
    let v = verify_circuit(&circuit, &layout, &c)?;
    let pass = v.fidelity >= FIDELITY_THRESHOLD && v.leakage <= LEAKAGE_THRESHOLD;
    eprintln!(
        "fidelity {:.15} leakage {:.3e}: {}",
        v.fidelity,
        v.leakage,
        if pass { "pass" } else { "FAIL" }
    );
    emit(&json!({
        "fidelity": v.fidelity,
        "leakage": v.leakage,
        "strategy": layout.strategy.as_str(),
        "pass": pass,
    }));
    if pass {
        Ok(())
    } else {
        Err(Failure::new(
            1,
            "fidelity",
            format!("fidelity {} leakage {} below threshold", v.fidelity, v.leakage),
        ))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify { graph } => classify_cmd(&graph),
        Command::Simulate {
            method,
            graph,
            circuit,
            input,
            observable,
        } => simulate_cmd(
            method,
            graph.as_deref(),
            &circuit,
            input.as_deref(),
            observable.as_deref(),
        ),
        Command::Compile {
            graph,
            logical,
            mode,
            out,
        } => compile_cmd(&graph, &logical, mode.into(), out.as_deref()),
        Command::Verify {
            graph,
            logical,
            compiled,
            mode,
        } => verify_cmd(&graph, &logical, &compiled, mode.into()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let line = json!({ "error": f.kind, "exit_code": f.code, "message": f.message });
            eprintln!("{line}");
            ExitCode::from(f.code)
        }
    }
}
