//! Compiled circuits checked against their logical unitaries on the dense
//! oracle.

use matchgraph::compiler::{choose_strategy, compile, xy_compile, Compilation, LogicalCircuit, LogicalGate, Mode};
use matchgraph::families::{complete_binary_tree, path_with_pendant, random_connected, random_tree, seeded_rng, star};
use matchgraph::graph::{classify, GraphClass};
use matchgraph::Unitary2;
use rand::rngs::StdRng;
use rand::Rng;

const FIDELITY: f64 = 1.0 - 1e-9;

fn check(label: &str, comp: &Compilation, c: &LogicalCircuit) {
    let v = comp.verify(c).unwrap();
    assert!(
        v.fidelity >= FIDELITY && v.leakage <= 1e-9,
        "{label}: fidelity {} leakage {} strategy {:?}",
        v.fidelity,
        v.leakage,
        comp.layout.strategy
    );
}

fn single(m: usize, gate: LogicalGate) -> LogicalCircuit {
    let mut c = LogicalCircuit::new(m);
    c.push(gate).unwrap();
    c
}

#[test]
fn cz_on_every_pair() {
    let graphs = [
        ("pendant", path_with_pendant(12, 3)),
        ("binary", complete_binary_tree(4)),
        ("star", star(7)),
    ];
    for (name, g) in graphs {
        let m = 3;
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    let c = single(m, LogicalGate::Cz(i, j));
                    check(&format!("{name} cz {i} {j}"), &compile(&c, &g).unwrap(), &c);
                }
            }
        }
        for t in 0..m {
            let c = single(
                m,
                LogicalGate::OneQubit {
                    target: t,
                    u: Unitary2::hadamard(),
                },
            );
            check(&format!("{name} h {t}"), &compile(&c, &g).unwrap(), &c);
        }
    }
}

#[test]
fn xy_gates_on_every_pair() {
    let graphs = [
        ("pendant", path_with_pendant(12, 3)),
        ("binary", complete_binary_tree(4)),
        ("star", star(7)),
    ];
    for (name, g) in graphs {
        let m = 3;
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    let c = single(m, LogicalGate::XzRot { x: i, z: j, a: 0.7 });
                    let comp = xy_compile(&c, &g).unwrap();
                    check(&format!("{name} xz {i} {j}"), &comp, &c);
                }
            }
            let c = single(m, LogicalGate::XRot { target: i, a: 0.4 });
            check(&format!("{name} x {i}"), &xy_compile(&c, &g).unwrap(), &c);
        }
    }
}

fn random_circuit(m: usize, len: usize, xy: bool, rng: &mut StdRng) -> LogicalCircuit {
    let mut c = LogicalCircuit::new(m);
    for _ in 0..len {
        let i = rng.gen_range(0..m);
        let mut j = rng.gen_range(0..m);
        while m > 1 && j == i {
            j = rng.gen_range(0..m);
        }
        let a = rng.gen_range(-3.0..3.0);
        let gate = match (xy, m > 1 && rng.gen_bool(0.5)) {
            (true, true) => LogicalGate::XzRot { x: i, z: j, a },
            (true, false) => LogicalGate::XRot { target: i, a },
            (false, true) if rng.gen_bool(0.5) => LogicalGate::Cz(i, j),
            (false, true) => LogicalGate::XzRot { x: i, z: j, a },
            (false, false) => {
                let u = if rng.gen_bool(0.5) {
                    Unitary2::hadamard()
                } else {
                    Unitary2::phase()
                };
                LogicalGate::OneQubit { target: i, u }
            }
        };
        c.push(gate).unwrap();
    }
    c
}

#[test]
fn random_trees_and_graphs() {
    let mut rng = seeded_rng();
    let mut seen = std::collections::BTreeMap::new();
    for trial in 0..120 {
        let n = rng.gen_range(5..=14);
        let g = if trial % 3 == 0 {
            random_connected(n, rng.gen_range(1..4), &mut rng)
        } else {
            random_tree(n, &mut rng)
        };
        if classify(&g).unwrap() != GraphClass::Other {
            continue;
        }
        for xy in [false, true] {
            let layout = choose_strategy(&g, if xy { Mode::Xy } else { Mode::Matchgate }).unwrap();
            if layout.capacity == 0 {
                continue;
            }
            let m = layout.capacity.min(4);
            let c = random_circuit(m, 6, xy, &mut rng);
            let comp = if xy { xy_compile(&c, &g) } else { compile(&c, &g) }.unwrap();
            *seen.entry(comp.layout.strategy.as_str()).or_insert(0) += 1;
            check(&format!("trial {trial} {g}"), &comp, &c);
        }
    }
    eprintln!("strategies exercised: {seen:?}");
    assert!(seen.len() == 4, "{seen:?}");
}
