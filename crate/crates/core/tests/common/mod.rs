//! Benchmark circuits rebuilt from their Toffoli netlists, and shared
//! random generators.

#![allow(dead_code)]

use hopt::{Angle, Circuit, Gate, PauliSequence};
use rand::Rng;

/// Seven-T Toffoli with controls `a`, `b` and target `t`.
pub fn toffoli(c: &mut Circuit, a: usize, b: usize, t: usize) {
    use Gate::*;
    let (tp, tm) = (Angle::t(), Angle::tdg());
    c.extend(&Circuit {
        n_qubits: c.n_qubits,
        gates: vec![
            H(t),
            Cnot(b, t),
            Rz(t, tm),
            Cnot(a, t),
            Rz(t, tp),
            Cnot(b, t),
            Rz(t, tm),
            Cnot(a, t),
            Rz(b, tp),
            Rz(t, tp),
            H(t),
            Cnot(a, b),
            Rz(a, tp),
            Rz(b, tm),
            Cnot(a, b),
        ],
    });
}

/// Reversible gates of a benchmark netlist.
#[derive(Clone, Copy, Debug)]
pub enum Op {
    Tof(usize, usize, usize),
    Cnot(usize, usize),
}

pub fn expand(n: usize, ops: &[Op]) -> Circuit {
    let mut c = Circuit::new(n);
    for op in ops {
        match *op {
            Op::Tof(a, b, t) => toffoli(&mut c, a, b, t),
            Op::Cnot(a, t) => c.push(Gate::Cnot(a, t)),
        }
    }
    c
}

/// Runs a netlist on a classical bit string.
pub fn simulate(ops: &[Op], bits: &mut [bool]) {
    for op in ops {
        match *op {
            Op::Tof(a, b, t) => bits[t] ^= bits[a] & bits[b],
            Op::Cnot(a, t) => bits[t] ^= bits[a],
        }
    }
}

/// Three-control Toffoli on `a b c -> t` with one clean ancilla.
pub fn tof_3_netlist() -> (usize, Vec<Op>) {
    let (a, b, c, anc, t) = (0, 1, 2, 3, 4);
    (5, vec![Op::Tof(a, b, anc), Op::Tof(c, anc, t), Op::Tof(a, b, anc)])
}

/// Four-control Toffoli on `a b c d -> t` with two clean ancillas.
pub fn tof_4_netlist() -> (usize, Vec<Op>) {
    let (a, b, c, d, x, y, t) = (0, 1, 2, 3, 4, 5, 6);
    (
        7,
        vec![
            Op::Tof(a, b, x),
            Op::Tof(c, x, y),
            Op::Tof(d, y, t),
            Op::Tof(c, x, y),
            Op::Tof(a, b, x),
        ],
    )
}

/// Three-control Toffoli with one dirty ancilla.
pub fn barenco_tof_3_netlist() -> (usize, Vec<Op>) {
    let (a, b, c, anc, t) = (0, 1, 2, 3, 4);
    (
        5,
        vec![
            Op::Tof(c, anc, t),
            Op::Tof(a, b, anc),
            Op::Tof(c, anc, t),
            Op::Tof(a, b, anc),
        ],
    )
}

pub const GF_BITS: usize = 16;
/// Low terms of the reduction polynomial x^16 + x^5 + x^3 + x + 1.
pub const GF_TAPS: [usize; 4] = [0, 1, 3, 5];

/// `c = a * b` over GF(2^16) by Horner's rule, with `a`, `b` on wires
/// `0..16`, `16..32` and `c` starting as zero on `32..48`. Multiplying `c`
/// by `x` is a wire relabeling plus CNOTs, so coefficient `k` of the
/// product ends on the returned wire `k`. The 256 partial products are
/// Toffoli gates.
pub fn gf2_16_mult_netlist() -> (usize, Vec<Op>, Vec<usize>) {
    const N: usize = GF_BITS;
    let mut wire: Vec<usize> = (0..N).map(|i| 2 * N + i).collect();
    let mut ops = Vec::new();
    for i in (0..N).rev() {
        if i != N - 1 {
            // the wire leaving position 15 now holds the x^0 coefficient
            wire.rotate_right(1);
            for &k in &GF_TAPS[1..] {
                ops.push(Op::Cnot(wire[0], wire[k]));
            }
        }
        for (j, &w) in wire.iter().enumerate() {
            ops.push(Op::Tof(i, N + j, w));
        }
    }
    (3 * N, ops, wire)
}

/// Polynomial product modulo the reduction polynomial, as a reference.
pub fn gf_mul(a: u32, b: u32) -> u32 {
    let mut acc: u32 = 0;
    for i in 0..GF_BITS {
        if (a >> i) & 1 == 1 {
            acc ^= b << i;
        }
    }
    for d in (GF_BITS..2 * GF_BITS).rev() {
        if (acc >> d) & 1 == 1 {
            for &k in &GF_TAPS {
                acc ^= 1 << (d - GF_BITS + k);
            }
            acc ^= 1 << d;
        }
    }
    acc
}

fn build((n, ops): (usize, Vec<Op>)) -> Circuit {
    expand(n, &ops)
}

pub fn tof_3() -> Circuit {
    build(tof_3_netlist())
}

pub fn tof_4() -> Circuit {
    build(tof_4_netlist())
}

pub fn barenco_tof_3() -> Circuit {
    build(barenco_tof_3_netlist())
}

pub fn gf2_16_mult() -> Circuit {
    let (n, ops, _) = gf2_16_mult_netlist();
    expand(n, &ops)
}

/// Named reconstructions, in Table order.
pub fn reconstructed() -> Vec<(&'static str, Circuit)> {
    vec![
        ("tof_3", tof_3()),
        ("tof_4", tof_4()),
        ("barenco_tof_3", barenco_tof_3()),
        ("gf2^16_mult", gf2_16_mult()),
    ]
}

pub fn random_sequence(rng: &mut impl Rng, n: usize, m: usize) -> PauliSequence {
    let mut s = PauliSequence::new(n, m);
    for j in 0..m {
        loop {
            let mut p = hopt::Pauli::identity(n);
            for q in 0..n {
                p.set(q, rng.gen(), rng.gen());
            }
            if !p.is_identity() {
                s.set_column(j, &p);
                break;
            }
        }
    }
    s
}

pub fn random_circuit(rng: &mut impl Rng, n: usize, len: usize) -> Circuit {
    let angles = [
        Angle::t(),
        Angle::tdg(),
        Angle::exact(1, 3),
        Angle::exact(-1, 3),
        Angle::Float(0.3),
    ];
    let mut c = Circuit::new(n);
    for _ in 0..len {
        let q = rng.gen_range(0..n);
        let g = match rng.gen_range(0..8) {
            0 => Gate::H(q),
            1 => Gate::S(q),
            2 => Gate::Sdg(q),
            3 => Gate::X(q),
            4 | 5 if n > 1 => Gate::Cnot(q, (q + rng.gen_range(1..n)) % n),
            _ => Gate::Rz(q, angles[rng.gen_range(0..angles.len())]),
        };
        c.push(g);
    }
    c
}
