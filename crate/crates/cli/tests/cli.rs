//! The binary driven end to end on the shipped samples.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn sample(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../samples").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matchgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn error_line(out: &Output) -> Value {
    let stderr = String::from_utf8_lossy(&out.stderr);
    let last = stderr.lines().last().expect("stderr has an error line");
    serde_json::from_str(last).expect("error line is JSON")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_reports_class_and_strategy() {
    let out = run(&["classify", s(&sample("path6.txt"))]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["class"], "path");
    assert_eq!(v["simulable"], true);

    let v = stdout_json(&run(&["classify", s(&sample("cycle6.txt"))]));
    assert_eq!(v["class"], "cycle");
    assert_eq!(v["simulable"], true);

    let v = stdout_json(&run(&["classify", s(&sample("binary_tree15.txt"))]));
    assert_eq!(v["class"], "other");
    assert_eq!(v["strategy"], "leaf-routing");
    assert_eq!(v["longest_path"], 7);
    assert_eq!(v["leaves"], 8);

    let v = stdout_json(&run(&["classify", s(&sample("pendant.txt"))]));
    assert_eq!(v["strategy"], "path-branch");
}

#[test]
fn classify_errors() {
    let out = run(&["classify", s(&sample("disconnected.txt"))]);
    assert_eq!(code(&out), 3);
    assert_eq!(error_line(&out)["error"], "disconnected");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "n 3\n0 1\n1 1\n").unwrap();
    let out = run(&["classify", s(&bad)]);
    assert_eq!(code(&out), 2);
    assert_eq!(error_line(&out)["error"], "parse");

    assert_eq!(code(&run(&["classify", "no-such-file.txt"])), 2);
    assert_eq!(code(&run(&["classify", "--bogus", s(&sample("path6.txt"))])), 2);
}

#[test]
fn simulate_identity_and_cross_method() {
    let out = run(&[
        "simulate",
        "--method",
        "jw",
        "--circuit",
        s(&sample("identity3.json")),
        "--input",
        "000",
        "--observable",
        "Z:1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["1"], 1.0);

    for circuit in ["cycle_circuit.json", "path_circuit.json"] {
        let args = |m| {
            run(&[
                "simulate",
                "--method",
                m,
                "--circuit",
                s(&sample(circuit)),
                "--input",
                "01+-10",
            ])
        };
        let (jw, dense) = (stdout_json(&args("jw")), stdout_json(&args("dense")));
        for k in 0..6 {
            let (a, b) = (
                jw[k.to_string()].as_f64().unwrap(),
                dense[k.to_string()].as_f64().unwrap(),
            );
            assert!((a - b).abs() <= 1e-9, "{circuit} qubit {k}: jw {a} dense {b}");
        }
    }
}

#[test]
fn simulate_is_deterministic() {
    let circuit = sample("cycle_circuit.json");
    let args = ["simulate", "--circuit", s(&circuit), "--input", "0110+1"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn simulate_errors() {
    let dir = tempfile::tempdir().unwrap();
    let star = dir.path().join("star.json");
    std::fs::write(
        &star,
        format!(
            r#"{{"n": 8, "graph": "{}", "gates": [{{"name": "fswap", "edge": [0, 1]}}]}}"#,
            s(&sample("star7.txt"))
        ),
    )
    .unwrap();
    let out = run(&["simulate", "--method", "jw", "--circuit", s(&star)]);
    assert_eq!(code(&out), 4);
    assert!(error_line(&out)["message"].as_str().unwrap().contains("compile"));
    assert_eq!(code(&run(&["simulate", "--method", "dense", "--circuit", s(&star)])), 0);

    let big = dir.path().join("big.json");
    std::fs::write(&big, r#"{"n": 21, "graph": "path", "gates": []}"#).unwrap();
    assert_eq!(code(&run(&["simulate", "--method", "dense", "--circuit", s(&big)])), 5);
    assert_eq!(code(&run(&["simulate", "--method", "jw", "--circuit", s(&big)])), 0);

    let cyc = s(&sample("cycle_circuit.json")).to_string();
    assert_eq!(code(&run(&["simulate", "--circuit", &cyc, "--input", "01"])), 2);
    assert_eq!(code(&run(&["simulate", "--circuit", &cyc, "--observable", "X:1"])), 2);
    assert_eq!(code(&run(&["simulate", "--circuit", &cyc, "--observable", "Z:9"])), 2);
    assert_eq!(code(&run(&["simulate", "--method", "qr", "--circuit", &cyc])), 2);
}

fn compile(graph: &str, logical: &str, mode: &str, out: &Path) -> Output {
    run(&[
        "compile",
        "--graph",
        s(&sample(graph)),
        "--logical",
        s(&sample(logical)),
        "--mode",
        mode,
        "--out",
        s(out),
    ])
}

fn verify(graph: &str, logical: &str, mode: &str, compiled: &Path) -> Output {
    run(&[
        "verify",
        "--graph",
        s(&sample(graph)),
        "--logical",
        s(&sample(logical)),
        "--mode",
        mode,
        "--compiled",
        s(compiled),
    ])
}

#[test]
fn compile_then_verify_demos() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("pendant.txt", "bell_logical.json", "matchgate", "path-branch"),
        ("binary_tree15.txt", "bell_logical.json", "matchgate", "leaf-routing"),
        ("star7.txt", "bell_logical.json", "matchgate", "leaf-routing"),
        ("spider.txt", "xy_logical.json", "xy", "xy-path-branch"),
        ("star7.txt", "xy_logical.json", "xy", "xy-leaf-routing"),
        ("binary_tree15.txt", "xy_logical.json", "xy", "xy-leaf-routing"),
    ];
    for (k, (graph, logical, mode, strategy)) in cases.into_iter().enumerate() {
        let out_dir = dir.path().join(k.to_string());
        let out = compile(graph, logical, mode, &out_dir);
        assert_eq!(code(&out), 0, "{graph}: {}", String::from_utf8_lossy(&out.stderr));
        let report = stdout_json(&out);
        assert_eq!(report["strategy"], strategy);
        assert_eq!(report["within_bound"], true);
        let on_disk: Value =
            serde_json::from_str(&std::fs::read_to_string(out_dir.join("report.json")).unwrap()).unwrap();
        assert_eq!(on_disk, report);

        let out = verify(graph, logical, mode, &out_dir.join("circuit.json"));
        assert_eq!(code(&out), 0, "{graph}: {}", String::from_utf8_lossy(&out.stderr));
        let v = stdout_json(&out);
        assert!(v["fidelity"].as_f64().unwrap() >= 1.0 - 1e-9);
        assert!(v["leakage"].as_f64().unwrap() <= 1e-9);
    }
}

#[test]
fn compile_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    compile("binary_tree15.txt", "xy_logical.json", "xy", &a);
    compile("binary_tree15.txt", "xy_logical.json", "xy", &b);
    for f in ["circuit.json", "report.json"] {
        assert_eq!(
            std::fs::read(a.join(f)).unwrap(),
            std::fs::read(b.join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn star_in_xy_mode_uses_the_centre_gadget() {
    let dir = tempfile::tempdir().unwrap();
    let report = stdout_json(&compile("star7.txt", "xy_logical.json", "xy", dir.path()));
    assert_eq!(report["gadget"], "star-centre");
    assert_eq!(report["gate_set"], "B");
}

#[test]
fn corrupted_circuit_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&compile("pendant.txt", "bell_logical.json", "matchgate", dir.path())),
        0
    );
    let path = dir.path().join("circuit.json");
    let mut circuit: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let gates = circuit["gates"].as_array_mut().unwrap();
    let mid = gates.len() / 2;
    gates.remove(mid);
    std::fs::write(&path, circuit.to_string()).unwrap();
    let out = verify("pendant.txt", "bell_logical.json", "matchgate", &path);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["pass"], false);
    assert_eq!(error_line(&out)["error"], "fidelity");
}

#[test]
fn empty_logical_circuit_has_unit_fidelity() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&compile("star7.txt", "empty_logical.json", "matchgate", dir.path())),
        0
    );
    let out = verify(
        "star7.txt",
        "empty_logical.json",
        "matchgate",
        &dir.path().join("circuit.json"),
    );
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["fidelity"], 1.0);
}

#[test]
fn compile_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = compile("star7.txt", "bell_logical.json", "xy", dir.path());
    assert_eq!(code(&out), 7);
    assert_eq!(error_line(&out)["error"], "non-primitive-gate");

    let cz_only = dir.path().join("cz.json");
    std::fs::write(&cz_only, r#"{"m": 2, "gates": [{"op": "cz", "targets": [0, 1]}]}"#).unwrap();
    let out = run(&[
        "compile",
        "--mode",
        "xy",
        "--graph",
        s(&sample("star7.txt")),
        "--logical",
        s(&cz_only),
    ]);
    assert_eq!(code(&out), 7);
    assert!(error_line(&out)["message"].as_str().unwrap().contains("cz"));

    let out = compile("path6.txt", "bell_logical.json", "matchgate", dir.path());
    assert_eq!(code(&out), 4);
    assert_eq!(
        code(&compile("cycle6.txt", "bell_logical.json", "matchgate", dir.path())),
        4
    );
    assert_eq!(
        code(&compile(
            "disconnected.txt",
            "bell_logical.json",
            "matchgate",
            dir.path()
        )),
        3
    );

    let wide = dir.path().join("wide.json");
    std::fs::write(&wide, r#"{"m": 5, "gates": []}"#).unwrap();
    let out = run(&["compile", "--graph", s(&sample("star7.txt")), "--logical", s(&wide)]);
    assert_eq!(code(&out), 6);
    assert_eq!(error_line(&out)["error"], "capacity");
}

#[test]
fn verify_refuses_large_or_mismatched_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.txt");
    let mut text = String::from("n 17\n");
    for v in 1..17 {
        text.push_str(&format!("0 {v}\n"));
    }
    std::fs::write(&big, &text).unwrap();
    let out = run(&[
        "compile",
        "--graph",
        s(&big),
        "--logical",
        s(&sample("empty_logical.json")),
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(code(&out), 0);
    let compiled = dir.path().join("circuit.json");
    let out = run(&[
        "verify",
        "--graph",
        s(&big),
        "--logical",
        s(&sample("empty_logical.json")),
        "--compiled",
        s(&compiled),
    ]);
    assert_eq!(code(&out), 5);

    let out = verify("star7.txt", "empty_logical.json", "matchgate", &compiled);
    assert_eq!(code(&out), 4);
}
