//! Rotation merging.
//!
//! Two rotations about the same axis (up to sign) merge when every rotation
//! between them commutes with that axis. Merged rotations whose angle
//! becomes a multiple of π/2 are Clifford and are pushed into the final
//! Clifford operator.

use crate::circuit::Circuit;
use crate::error::Result;
use crate::pauli::{commutes, Pauli, PauliSequence};
use crate::resynth::extract_rotation_sequence;
use crate::synth::{clifford_synthesis, insert_rotations, network_with_markers, RotationSequence};
use crate::tableau::Tableau;

/// Merged rotation sequence and the Clifford operator that follows it.
/// Passes repeat until no rotation merges or vanishes, since a rotation
/// that cancels can unblock earlier pairs.
pub fn merge_rotations(rot: &RotationSequence, fin: &Tableau) -> (RotationSequence, Tableau) {
    let (mut rot, mut fin) = merge_pass(rot, fin);
    loop {
        let (r, f) = merge_pass(&rot, &fin);
        if r.len() == rot.len() {
            return (rot, fin);
        }
        (rot, fin) = (r, f);
    }
}

fn merge_pass(rot: &RotationSequence, fin: &Tableau) -> (RotationSequence, Tableau) {
    let m = rot.len();
    let n = rot.seq.n_qubits();
    let cols = rot.seq.columns();
    let mut angles = rot.angles.clone();
    let mut live = vec![true; m];
    for j in 0..m {
        for i in (0..j).rev() {
            if !live[i] {
                continue;
            }
            if cols[i] == cols[j] {
                let a = if rot.signs[i] == rot.signs[j] {
                    angles[j]
                } else {
                    -angles[j]
                };
                angles[i] = angles[i] + a;
                live[j] = false;
                if angles[i].is_zero() {
                    live[i] = false;
                }
                break;
            }
            if !commutes(&cols[i], &cols[j]).expect("same width") {
                break;
            }
        }
    }

    // theta tracks K† where K is the product of absorbed Clifford rotations;
    // a later axis Q becomes K† Q K.
    let mut theta = Tableau::identity(n);
    let mut out_cols: Vec<Pauli> = Vec::new();
    let mut out_signs = Vec::new();
    let mut out_angles = Vec::new();
    for i in (0..m).filter(|&i| live[i]) {
        let (q, s) = theta.map_pauli(&cols[i], rot.signs[i]);
        match angles[i].clifford_power() {
            Some(0) => {}
            Some(k) => theta.append_clifford_rotation(&q, s, 4 - k),
            None => {
                out_cols.push(q);
                out_signs.push(s);
                out_angles.push(angles[i]);
            }
        }
    }
    let seq = PauliSequence::from_paulis(n, &out_cols).expect("same width");
    let merged = RotationSequence::new(seq, out_signs, out_angles).expect("lengths agree");
    (merged, Tableau::compose(fin, &theta.invert()))
}

/// Circuit of `rot` followed by `fin`, built from a fresh network.
pub fn synthesize_sequence(rot: &RotationSequence, fin: &Tableau) -> Circuit {
    let net = network_with_markers(&rot.seq);
    let mut out = insert_rotations(&net.circuit, rot, &net.markers).expect("markers from the network");
    let w = Tableau::from_circuit(&net.circuit).expect("networks are Clifford");
    out.extend(&clifford_synthesis(&Tableau::compose(fin, &w.invert())));
    out
}

/// Merges rotations of `c` and re-synthesizes it.
pub fn t_merge(c: &Circuit) -> Result<Circuit> {
    let (rot, fin) = extract_rotation_sequence(c)?;
    let (merged, fin) = merge_rotations(&rot, &fin);
    Ok(synthesize_sequence(&merged, &fin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Angle, Gate};
    use crate::verify::dense::{dense_unitary, equiv_up_to_phase};
    use proptest::prelude::*;

    #[test]
    fn adjacent_t_gates_become_clifford() {
        let c = Circuit::from_gates(1, vec![Gate::Rz(0, Angle::t()), Gate::Rz(0, Angle::t())]).unwrap();
        let out = t_merge(&c).unwrap();
        assert_eq!(out.counts().t_count, 0);
        assert!(equiv_up_to_phase(
            &dense_unitary(&out).unwrap(),
            &dense_unitary(&c).unwrap(),
            1e-12
        ));
    }

    #[test]
    fn opposite_signs_cancel() {
        let t = Angle::t();
        let c = Circuit::from_gates(1, vec![Gate::Rz(0, t), Gate::X(0), Gate::Rz(0, t), Gate::X(0)]).unwrap();
        let out = t_merge(&c).unwrap();
        assert!(out.counts().t_count == 0 && !out.gates.iter().any(|g| g.is_rotation()));
    }

    #[test]
    fn anticommuting_blocker_prevents_merge() {
        let t = Angle::t();
        let c = Circuit::from_gates(
            1,
            vec![Gate::Rz(0, t), Gate::H(0), Gate::Rz(0, t), Gate::H(0), Gate::Rz(0, t)],
        )
        .unwrap();
        assert_eq!(t_merge(&c).unwrap().counts().t_count, 3);
    }

    #[test]
    fn merge_across_commuting_rotation() {
        let t = Angle::t();
        let c = Circuit::from_gates(
            2,
            vec![
                Gate::Rz(0, t),
                Gate::Rz(1, t),
                Gate::Cnot(0, 1),
                Gate::Rz(1, t),
                Gate::Cnot(0, 1),
                Gate::Rz(0, t),
            ],
        )
        .unwrap();
        let out = t_merge(&c).unwrap();
        assert_eq!(out.counts().t_count, 2);
        assert!(equiv_up_to_phase(
            &dense_unitary(&out).unwrap(),
            &dense_unitary(&c).unwrap(),
            1e-12
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn t_merge_is_sound(c in crate::resynth::tests::arb_circuit(4, 50)) {
            let out = t_merge(&c).unwrap();
            prop_assert!(equiv_up_to_phase(&dense_unitary(&out).unwrap(), &dense_unitary(&c).unwrap(), 1e-9));
            let rotations = |c: &Circuit| c.gates.iter().filter(|g| g.is_rotation()).count();
            prop_assert!(rotations(&out) <= rotations(&c));
            if c.gates.iter().all(|g| !g.is_rotation() || matches!(g, Gate::Rz(_, a) if a.is_t_like())) {
                prop_assert!(out.counts().t_count <= c.counts().t_count);
            }
            let rank = |c: &Circuit| extract_rotation_sequence(c).unwrap().0.seq.commutativity_matrix().rank();
            prop_assert!(rank(&out) <= rank(&c));
            prop_assert_eq!(t_merge(&out).unwrap().counts().t_count, out.counts().t_count);
        }
    }
}
