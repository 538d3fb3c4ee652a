//! Independent checks: dense unitaries and H-count oracles.

pub mod dense;

pub use dense::{dense_unitary, dense_unitary_capped, equiv_up_to_phase, phase_distance, Mat, DEFAULT_MAX_QUBITS};

use crate::bitmatrix::gf2_rank;
use crate::circuit::Circuit;
use crate::error::Result;
use crate::pauli::{stack_xa, PauliSequence};
use crate::resynth::extract_rotation_sequence;
use crate::synth::{diagonalization_network, internal_h_network};

/// Measured H-count against the rank predicted for it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Report {
    pub h: usize,
    pub rank: usize,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.h == self.rank
    }
}

/// H-count of the minimal network against `rank([X; A])`.
pub fn check_h_count(seq: &PauliSequence) -> Report {
    let c = diagonalization_network(seq);
    let a = seq.commutativity_matrix();
    let m = stack_xa(seq, &a).expect("matrix built from seq");
    Report {
        h: c.counts().h_count,
        rank: gf2_rank(&m),
    }
}

/// H-count after the split of the internal-H network against `rank(A)`.
pub fn check_internal_h_count(seq: &PauliSequence) -> Report {
    let net = internal_h_network(seq);
    let h = net.circuit.gates[net.split..].iter().filter(|g| g.is_h()).count();
    Report {
        h,
        rank: seq.commutativity_matrix().rank(),
    }
}

/// One named invariant between an original circuit and its optimized form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Invariants that hold for every pass regardless of width: equal widths,
/// no extra rotations, no larger commutativity rank, and at least
/// `rank(A)` internal Hadamard gates in the output.
pub fn count_checks(original: &Circuit, optimized: &Circuit) -> Result<Vec<Check>> {
    let rotations = |c: &Circuit| c.gates.iter().filter(|g| g.is_rotation()).count();
    let (ra, _) = extract_rotation_sequence(original)?;
    let (rb, _) = extract_rotation_sequence(optimized)?;
    let rank_a = ra.seq.commutativity_matrix().rank();
    let rank_b = rb.seq.commutativity_matrix().rank();
    let ih = optimized.counts().internal_h_count;
    let (na, nb) = (rotations(original), rotations(optimized));
    Ok(vec![
        Check {
            name: "width",
            pass: original.n_qubits == optimized.n_qubits,
            detail: format!("{} -> {}", original.n_qubits, optimized.n_qubits),
        },
        Check {
            name: "rotations",
            pass: nb <= na,
            detail: format!("{na} -> {nb}"),
        },
        Check {
            name: "rank_a",
            pass: rank_b <= rank_a,
            detail: format!("{rank_a} -> {rank_b}"),
        },
        Check {
            name: "internal_h_lower_bound",
            pass: ih >= rank_b,
            detail: format!("internal_h={ih} rank_a={rank_b}"),
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s3 = PauliSequence::parse(2, "YZ IY XI").unwrap();
        assert_eq!(check_h_count(&s3), Report { h: 3, rank: 3 });
        let r = check_internal_h_count(&s3);
        assert!(r.pass() && r.h == 1, "{r:?}");
        let empty = PauliSequence::new(2, 0);
        assert!(check_h_count(&empty).pass() && check_h_count(&empty).h == 0);
        assert!(check_internal_h_count(&empty).pass());
    }
}
