//! Streaming re-synthesis of whole circuits.

use crate::circuit::{inverse, Circuit, Gate};
use crate::error::Result;
use crate::pauli::{Pauli, PauliSequence};
use crate::synth::{clifford_synthesis, emit_rotation, RotationSequence};
use crate::tableau::Tableau;

/// Selects how the Clifford operators around the rotation block are built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Re-synthesize both Clifford operators with the minimal Hadamard count.
    #[default]
    Full,
    /// Reuse existing gate lists; cheaper, but the outer Clifford parts may
    /// hold more Hadamard gates than necessary.
    Fast,
}

/// Signed rotation axes and angles of `c`, plus the tableau of its Clifford
/// part. A rotation `Rz_k(θ)` following Clifford prefix `W` acts as
/// `R_{W† Z_k W}(θ)` on the circuit input, so
/// `c = final · R_{m-1} ··· R_0`.
pub fn extract_rotation_sequence(c: &Circuit) -> Result<(RotationSequence, Tableau)> {
    c.validate()?;
    let n = c.n_qubits;
    let mut w_dag = Tableau::identity(n);
    let mut w = Tableau::identity(n);
    let mut cols: Vec<Pauli> = Vec::new();
    let mut signs = Vec::new();
    let mut angles = Vec::new();
    for g in &c.gates {
        match *g {
            Gate::Rz(k, a) if !a.is_clifford() => {
                let (p, s) = w_dag.stabilizer(k);
                cols.push(p);
                signs.push(s);
                angles.push(a);
            }
            _ => {
                w_dag.prepend_unchecked(&g.inverse());
                w.append_unchecked(g);
            }
        }
    }
    let seq = PauliSequence::from_paulis(n, &cols)?;
    Ok((RotationSequence::new(seq, signs, angles)?, w))
}

/// One streaming pass over `c` that emits each rotation in a basis needing
/// a Hadamard gate only when its current axis is non-diagonal.
///
/// With `t_in` the tableau of `V`, the returned `(out, t)` satisfies
/// `c = t† · out · V` as operators, i.e. `c` is equivalent to the circuit
/// `V :: out :: t†`.
pub fn h_opt(c: &Circuit, t_in: &Tableau) -> Result<(Circuit, Tableau)> {
    c.validate()?;
    let n = c.n_qubits;
    let mut t = t_in.clone();
    let mut out = Circuit::new(n);
    let mut support = Vec::with_capacity(n);
    for g in &c.gates {
        let Gate::Rz(k, angle) = *g else {
            t.prepend_unchecked(&g.inverse());
            continue;
        };
        if angle.is_clifford() {
            t.prepend_unchecked(&g.inverse());
            continue;
        }
        let mut emit = |g: Gate, t: &mut Tableau| {
            t.append_unchecked(&g);
            out.push(g);
        };
        let (p, _) = t.stabilizer(k);
        if let Some(i) = p.x_support().next() {
            for j in p.x_support().skip(1) {
                emit(Gate::Cnot(i, j), &mut t);
            }
            if t.stabilizer(k).0.get(i).0 {
                emit(Gate::S(i), &mut t);
            }
            emit(Gate::H(i), &mut t);
        }
        let (zw, xw, sign) = t.stabilizer_words(k);
        debug_assert!(xw.iter().all(|&w| w == 0));
        support.clear();
        support.extend((0..n).filter(|&q| (zw[q / 64] >> (q % 64)) & 1 == 1));
        emit_rotation(&mut out, &support, sign, angle);
    }
    Ok((out, t))
}

/// `c` re-synthesized with a single streaming pass, followed by the
/// residual Clifford operator.
pub fn h_opt_circuit(c: &Circuit, mode: Mode) -> Result<Circuit> {
    let (mut out, t) = h_opt(c, &Tableau::identity(c.n_qubits))?;
    let tail = match mode {
        Mode::Full => clifford_synthesis(&t.invert()),
        Mode::Fast => {
            let mut tail = inverse(&out.without_rotations());
            tail.extend(&c.without_rotations());
            tail
        }
    };
    out.extend(&tail);
    Ok(out)
}

/// `c` re-synthesized so that the number of Hadamard gates between its
/// first and last non-Clifford rotation equals the rank of the rotation
/// sequence's commutativity matrix, the minimum possible.
pub fn internal_h_opt(c: &Circuit, mode: Mode) -> Result<Circuit> {
    c.validate()?;
    let n = c.n_qubits;
    if !c.gates.iter().any(|g| g.is_rotation()) {
        return Ok(match mode {
            Mode::Full => clifford_synthesis(&Tableau::from_circuit(c)?),
            Mode::Fast => c.clone(),
        });
    }
    let mut t = Tableau::identity(n);
    for g in c.gates.iter().filter(|g| g.is_clifford()) {
        t.prepend_unchecked(&g.inverse());
    }
    let (c_tilde, t_tilde) = h_opt(&inverse(c), &t)?;
    let (c_out, t_f) = h_opt(c, &t_tilde)?;
    let mut result = match mode {
        Mode::Full => clifford_synthesis(&t_tilde),
        Mode::Fast => c_tilde.without_rotations(),
    };
    let prefix = result.clone();
    result.extend(&c_out);
    match mode {
        Mode::Full => result.extend(&clifford_synthesis(&t_f.invert())),
        Mode::Fast => {
            result.extend(&inverse(&c_out.without_rotations()));
            result.extend(&inverse(&prefix));
            result.extend(&c.without_rotations());
        }
    }
    Ok(result)
}
