//! Diagonalization networks for Pauli sequences.
//!
//! A diagonalization network for `P_0, ..., P_{m-1}` is a Clifford circuit
//! `C` together with markers `α_0 <= ... <= α_{m-1}` such that the prefix of
//! `C` of length `α_j` conjugates `P_j` to a diagonal product. Placing a
//! `Z`-rotation after each marker realizes the rotation sequence up to the
//! final Clifford operator `C`.

use crate::circuit::{inverse, Angle, Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::PauliSequence;
use crate::tableau::Tableau;
use crate::BitMatrix;

/// Pauli rotations `R_{b_j P_j}(θ_j)`, applied in column order.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationSequence {
    pub seq: PauliSequence,
    /// `true` where `b_j = -1`.
    pub signs: Vec<bool>,
    pub angles: Vec<Angle>,
}

impl RotationSequence {
    pub fn new(seq: PauliSequence, signs: Vec<bool>, angles: Vec<Angle>) -> Result<Self> {
        for len in [signs.len(), angles.len()] {
            if len != seq.m() {
                return Err(Error::Dimension {
                    expected: seq.m(),
                    found: len,
                });
            }
        }
        Ok(RotationSequence { seq, signs, angles })
    }

    pub fn len(&self) -> usize {
        self.seq.m()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.m() == 0
    }
}

/// A network with one marker per input column.
#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    pub circuit: Circuit,
    pub markers: Vec<usize>,
}

/// Output of [`internal_h_network`]: the network splits at `split` into a
/// prefix diagonalizing the auxiliary stabilizers and a suffix whose
/// Hadamard count is minimal. `markers` refer to the original columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitNetwork {
    pub circuit: Circuit,
    pub markers: Vec<usize>,
    pub split: usize,
}

/// Network with the fewest Hadamard gates for `seq`.
pub fn diagonalization_network(seq: &PauliSequence) -> Circuit {
    network_with_markers(seq).circuit
}

pub fn network_with_markers(seq: &PauliSequence) -> Network {
    let n = seq.n_qubits();
    let mut s = seq.clone();
    let mut circuit = Circuit::new(n);
    let mut markers = Vec::with_capacity(seq.m());
    for j in 0..seq.m() {
        if let Some(i) = s.first_x(j) {
            let mut emit = |g: Gate, s: &mut PauliSequence| {
                s.apply_from(&g, j).expect("Clifford");
                circuit.push(g);
            };
            for k in 0..n {
                if k != i && s.x(k, j) {
                    emit(Gate::Cnot(i, k), &mut s);
                }
            }
            if s.z(i, j) {
                emit(Gate::S(i), &mut s);
            }
            emit(Gate::H(i), &mut s);
        }
        debug_assert!(s.is_diagonal_column(j));
        markers.push(circuit.len());
    }
    Network { circuit, markers }
}

/// Appends the stabilizers of `final_clifford`, in qubit order, to `seq`
/// before synthesis, so the network also diagonalizes the trailing Clifford.
/// Markers are returned for the columns of `seq` only.
pub fn network_with_final(seq: &PauliSequence, final_clifford: &Tableau) -> Result<Network> {
    let (stabs, _) = final_clifford.stabilizers();
    let mut net = network_with_markers(&seq.hstack(&stabs)?);
    net.markers.truncate(seq.m());
    Ok(net)
}

pub fn reverse_columns(seq: &PauliSequence) -> PauliSequence {
    seq.reverse_columns()
}

/// Network whose Hadamard gates after the split equal `rank(A)`, the
/// minimum possible between the first and last rotation.
pub fn internal_h_network(seq: &PauliSequence) -> SplitNetwork {
    let n = seq.n_qubits();
    let c1 = diagonalization_network(&seq.reverse_columns());
    let (aux, _) = Tableau::from_circuit(&c1)
        .expect("networks are Clifford")
        .invert()
        .stabilizers();
    let net = network_with_markers(&aux.hstack(seq).expect("same width"));
    let split = if n == 0 { 0 } else { net.markers[n - 1] };
    SplitNetwork {
        circuit: net.circuit,
        markers: net.markers[n..].to_vec(),
        split,
    }
}

pub fn internal_h_minimization(seq: &PauliSequence) -> Circuit {
    internal_h_network(seq).circuit
}

/// Emits `R_{±Z_S}(θ)` for the qubit set `support`: CNOT fan-in onto the
/// smallest qubit, the rotation (X-conjugated when negative), fan-out.
pub(crate) fn emit_rotation(out: &mut Circuit, support: &[usize], negative: bool, angle: Angle) {
    let Some((&pivot, rest)) = support.split_first() else {
        return;
    };
    for &q in rest {
        out.push(Gate::Cnot(q, pivot));
    }
    if negative {
        out.push(Gate::X(pivot));
        out.push(Gate::Rz(pivot, angle));
        out.push(Gate::X(pivot));
    } else {
        out.push(Gate::Rz(pivot, angle));
    }
    for &q in rest.iter().rev() {
        out.push(Gate::Cnot(q, pivot));
    }
}

/// Interleaves `network` with the rotations of `rot`. Rotation `j` is
/// placed right after gate `markers[j]` of the network. The result equals
/// the rotation sequence followed by the network's Clifford operator.
pub fn insert_rotations(network: &Circuit, rot: &RotationSequence, markers: &[usize]) -> Result<Circuit> {
    let m = rot.len();
    if markers.len() != m {
        return Err(Error::Markers {
            expected: m,
            found: markers.len(),
        });
    }
    if markers.windows(2).any(|w| w[0] > w[1]) || markers.last().is_some_and(|&a| a > network.len()) {
        return Err(Error::Markers {
            expected: m,
            found: markers.len(),
        });
    }
    let n = network.n_qubits;
    let mut s = rot.seq.clone();
    let mut signs = BitMatrix::zeros(1, m);
    for (j, &b) in rot.signs.iter().enumerate() {
        signs.set(0, j, b);
    }
    let mut out = Circuit::new(n);
    let mut next = 0;
    let mut support = Vec::with_capacity(n);
    for j in 0..m {
        while next < markers[j] {
            let g = network.gates[next];
            s.apply_signed_from(&g, &mut signs, j)?;
            out.push(g);
            next += 1;
        }
        if !s.is_diagonal_column(j) {
            return Err(Error::Markers {
                expected: m,
                found: markers.len(),
            });
        }
        support.clear();
        support.extend((0..n).filter(|&q| s.z(q, j)));
        emit_rotation(&mut out, &support, signs.get(0, j), rot.angles[j]);
    }
    out.gates.extend_from_slice(&network.gates[next..]);
    Ok(out)
}

/// Clifford circuit for the operator of `t` with the fewest Hadamard
/// gates: exactly the rank of the stabilizers' X block.
pub fn clifford_synthesis(t: &Tableau) -> Circuit {
    let n = t.n_qubits();
    let (stabs, _) = t.stabilizers();
    let v = diagonalization_network(&stabs);
    let mut r = t.clone();
    for g in &v.gates {
        r.append_unchecked(g);
    }
    let mut q = Circuit::new(n);
    let mut app = |g: Gate, r: &mut Tableau| {
        r.append_unchecked(&g);
        q.push(g);
    };
    // Stabilizers are now diagonal; reduce their Z block to the identity.
    // Appended CNOT(c, t) adds qubit column t into column c.
    for k in 0..n {
        if !r.stabilizer(k).0.get(k).0 {
            let p = (k + 1..n)
                .find(|&c| r.stabilizer(k).0.get(c).0)
                .expect("stabilizers are independent");
            app(Gate::Cnot(k, p), &mut r);
        }
        let row = r.stabilizer(k).0;
        for c in row.z_support().filter(|&c| c != k).collect::<Vec<_>>() {
            app(Gate::Cnot(c, k), &mut r);
        }
    }
    // Destabilizers are X_k Z^{B_k} with B symmetric.
    for a in 0..n {
        if r.destabilizer(a).0.get(a).0 {
            app(Gate::S(a), &mut r);
        }
        for b in a + 1..n {
            if r.destabilizer(a).0.get(b).0 {
                for g in [Gate::S(a), Gate::S(b), Gate::Cnot(a, b), Gate::Sdg(b), Gate::Cnot(a, b)] {
                    app(g, &mut r);
                }
            }
        }
    }
    for k in 0..n {
        if r.sign(k) {
            app(Gate::X(k), &mut r);
        }
        if r.sign(n + k) {
            app(Gate::S(k), &mut r);
            app(Gate::S(k), &mut r);
        }
    }
    debug_assert!(r.is_identity());
    let mut out = inverse(&q);
    out.extend(&inverse(&v));
    out
}
