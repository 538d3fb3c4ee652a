//! Per-circuit statistics records, serialized as one JSON object per line.

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub file: String,
    pub n_qubits: usize,
    pub gate_count: usize,
    pub h_count: usize,
    pub internal_h_count: usize,
    pub t_count: usize,
    pub time_ms: f64,
}

impl Stats {
    pub fn of(file: impl Into<String>, c: &Circuit, time_ms: f64) -> Stats {
        let k = c.counts();
        Stats {
            file: file.into(),
            n_qubits: c.n_qubits,
            gate_count: k.gate_count,
            h_count: k.h_count,
            internal_h_count: k.internal_h_count,
            t_count: k.t_count,
            time_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain record")
    }
}
