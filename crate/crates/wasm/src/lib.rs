//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes and returns strings; results are JSON documents so
//! the page can render them without a schema layer.

use hopt::io::{self, Format};
use hopt::synth::{internal_h_network, network_with_markers};
use hopt::{gf2_rank, stack_xa, Mode, Pass, Pauli, PauliSequence, Pipeline};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_DEMO_QUBITS: usize = 64;

fn parse_sequence(text: &str) -> Result<PauliSequence, String> {
    let n = text.split_whitespace().next().map_or(0, str::len);
    if n == 0 {
        return Err("enter at least one Pauli string such as XZY".into());
    }
    PauliSequence::parse(n, text).map_err(|e| e.to_string())
}

fn columns(seq: &PauliSequence) -> Vec<String> {
    seq.columns().iter().map(Pauli::to_string).collect()
}

/// Minimal-H network for a sequence such as `"YZ IY XI"`, with the
/// remaining columns after every diagonalized product.
pub fn network_json(text: &str) -> Result<Value, String> {
    let seq = parse_sequence(text)?;
    let net = network_with_markers(&seq);
    let a = seq.commutativity_matrix();
    let rank_m = gf2_rank(&stack_xa(&seq, &a).map_err(|e| e.to_string())?);
    let mut steps = Vec::new();
    let mut cur = seq.clone();
    let mut done = 0;
    for (j, &marker) in net.markers.iter().enumerate() {
        for g in &net.circuit.gates[done..marker] {
            cur.apply_gate(g).map_err(|e| e.to_string())?;
        }
        done = marker;
        steps.push(json!({
            "column": j,
            "gates": net.circuit.gates[..marker].iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "diagonal": cur.column(j).to_string(),
            "remaining": columns(&cur.slice(j + 1, seq.m())),
        }));
    }
    let internal = internal_h_network(&seq);
    let suffix_h = internal.circuit.gates[internal.split..]
        .iter()
        .filter(|g| g.is_h())
        .count();
    Ok(json!({
        "n": seq.n_qubits(),
        "columns": columns(&seq),
        "gates": net.circuit.gates.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "markers": net.markers,
        "h_count": net.circuit.counts().h_count,
        "rank_m": rank_m,
        "rank_a": a.rank(),
        "steps": steps,
        "internal": {
            "gates": internal.circuit.gates.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "split": internal.split,
            "suffix_h": suffix_h,
        },
    }))
}

fn counts_json(c: &hopt::Circuit) -> Value {
    let k = c.counts();
    json!({
        "n_qubits": c.n_qubits,
        "gate_count": k.gate_count,
        "h_count": k.h_count,
        "internal_h_count": k.internal_h_count,
        "t_count": k.t_count,
    })
}

/// Runs a pass pipeline on `.qc` or OpenQASM 2 text. `pass` is
/// `internal-h`, `h` or `none`.
pub fn optimize_json(text: &str, qasm: bool, pass: &str, tmerge: bool, fast: bool) -> Result<Value, String> {
    let format = if qasm { Format::Qasm2 } else { Format::Qc };
    let c = io::parse(text, format).map_err(|e| e.to_string())?;
    if c.n_qubits > MAX_DEMO_QUBITS {
        return Err(format!("the demo accepts up to {MAX_DEMO_QUBITS} qubits"));
    }
    let pipeline = Pipeline {
        tmerge,
        pass: match pass {
            "internal-h" => Pass::InternalH,
            "h" => Pass::H,
            "none" => Pass::None,
            other => return Err(format!("unknown pass {other:?}")),
        },
        mode: if fast { Mode::Fast } else { Mode::Full },
    };
    let out = pipeline.run(&c).map_err(|e| e.to_string())?;
    Ok(json!({
        "before": counts_json(&c),
        "after": counts_json(&out),
        "circuit": io::emit(&out, format),
    }))
}

/// `m` random non-identity Pauli strings on `n` qubits.
pub fn random_sequence_text(n: usize, m: usize, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n.clamp(1, 16);
    (0..m.min(64))
        .map(|_| loop {
            let s: String = (0..n).map(|_| ['I', 'X', 'Y', 'Z'][rng.gen_range(0..4)]).collect();
            if s.chars().any(|c| c != 'I') {
                break s;
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn synthesize_network(text: &str) -> Result<String, JsValue> {
    to_js(network_json(text))
}

#[wasm_bindgen]
pub fn optimize_circuit(text: &str, qasm: bool, pass: &str, tmerge: bool, fast: bool) -> Result<String, JsValue> {
    to_js(optimize_json(text, qasm, pass, tmerge, fast))
}

#[wasm_bindgen]
pub fn random_sequence(n: usize, m: usize, seed: u32) -> String {
    random_sequence_text(n, m, seed as u64)
}
