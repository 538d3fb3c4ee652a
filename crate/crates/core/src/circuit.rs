//! Gate-level circuits over {X, CNOT, S, Sdg, H, Rz}.
//!
//! A circuit is read left to right: `gates[0]` acts first. The unitary of
//! `[g0, g1, ..., gk]` is therefore the product `gk ... g1 g0`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use crate::error::{Error, Result};

/// Absolute tolerance in radians used to classify float angles.
pub const ANGLE_TOL: f64 = 1e-12;

const MAX_LOG2_DEN: u32 = 62;

/// A rotation angle, either an exact dyadic multiple of π or a float.
///
/// Exact angles are `num * π / 2^log2_den`, normalized to `[0, 2π)` with the
/// fraction reduced, so structural equality is numeric equality.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    Exact { num: u64, log2_den: u32 },
    Float(f64),
}

impl Angle {
    pub const ZERO: Angle = Angle::Exact { num: 0, log2_den: 0 };

    /// `num * π / 2^log2_den`, normalized.
    pub fn exact(num: i64, log2_den: u32) -> Angle {
        assert!(log2_den <= MAX_LOG2_DEN, "denominator too large");
        let period = 1i128 << (log2_den + 1);
        let n = (num as i128).rem_euclid(period) as u64;
        Self::reduce(n, log2_den)
    }

    fn reduce(mut num: u64, mut k: u32) -> Angle {
        if num == 0 {
            return Angle::ZERO;
        }
        while k > 0 && num.is_multiple_of(2) {
            num /= 2;
            k -= 1;
        }
        Angle::Exact { num, log2_den: k }
    }

    pub fn t() -> Angle {
        Angle::exact(1, 2)
    }

    pub fn tdg() -> Angle {
        Angle::exact(-1, 2)
    }

    pub fn from_radians(theta: f64) -> Angle {
        Angle::Float(theta)
    }

    pub fn radians(self) -> f64 {
        match self {
            Angle::Exact { num, log2_den } => num as f64 * PI / (1u64 << log2_den) as f64,
            Angle::Float(x) => x,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Angle::Exact { .. })
    }

    /// `Some(k)` with `k ∈ 0..4` when the angle is `k·π/2` modulo `2π`.
    pub fn clifford_power(self) -> Option<u8> {
        match self {
            Angle::Exact { num, log2_den } => match log2_den {
                0 => Some((2 * num) as u8),
                1 => Some(num as u8),
                _ => None,
            },
            Angle::Float(x) => {
                let k = (x / FRAC_PI_2).round();
                ((x - k * FRAC_PI_2).abs() <= ANGLE_TOL).then(|| k.rem_euclid(4.0) as u8)
            }
        }
    }

    pub fn is_clifford(self) -> bool {
        self.clifford_power().is_some()
    }

    pub fn is_zero(self) -> bool {
        self.clifford_power() == Some(0)
    }

    /// Odd multiple of π/4.
    pub fn is_t_like(self) -> bool {
        match self {
            Angle::Exact { log2_den, .. } => log2_den == 2,
            Angle::Float(x) => {
                let k = (x / FRAC_PI_4).round();
                (x - k * FRAC_PI_4).abs() <= ANGLE_TOL && k.rem_euclid(2.0) == 1.0
            }
        }
    }
}

/// Negation. Exact angles stay exact.
impl std::ops::Neg for Angle {
    type Output = Angle;

    fn neg(self) -> Angle {
        match self {
            Angle::Exact { num, log2_den } => Angle::exact(-(num as i64), log2_den),
            Angle::Float(x) => Angle::Float(-x),
        }
    }
}

/// Sum. Exact when both operands are exact.
impl std::ops::Add for Angle {
    type Output = Angle;

    fn add(self, other: Angle) -> Angle {
        match (self, other) {
            (Angle::Exact { num: a, log2_den: ka }, Angle::Exact { num: b, log2_den: kb }) => {
                let k = ka.max(kb);
                let a = (a as i128) << (k - ka);
                let b = (b as i128) << (k - kb);
                let period = 1i128 << (k + 1);
                Angle::reduce((a + b).rem_euclid(period) as u64, k)
            }
            _ => Angle::Float(self.radians() + other.radians()),
        }
    }
}

impl fmt::Display for Angle {
    /// Exact angles print as `0`, `pi`, `pi/4`, `3*pi/8`; floats as
    /// radians with 17 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::Exact { num: 0, .. } => write!(f, "0"),
            Angle::Exact { num, log2_den } => {
                if num != 1 {
                    write!(f, "{num}*")?;
                }
                write!(f, "pi")?;
                if log2_den > 0 {
                    write!(f, "/{}", 1u64 << log2_den)?;
                }
                Ok(())
            }
            Angle::Float(x) => write!(f, "{x:.16e}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    X(usize),
    /// `Cnot(control, target)`.
    Cnot(usize, usize),
    S(usize),
    Sdg(usize),
    H(usize),
    /// `Rz(q, θ) = exp(-iθZ/2)` on qubit `q`.
    Rz(usize, Angle),
}

impl Gate {
    pub fn inverse(self) -> Gate {
        match self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            Gate::Rz(q, a) => Gate::Rz(q, -a),
            g => g,
        }
    }

    pub fn is_clifford(self) -> bool {
        match self {
            Gate::Rz(_, a) => a.is_clifford(),
            _ => true,
        }
    }

    pub fn is_h(self) -> bool {
        matches!(self, Gate::H(_))
    }

    /// Rz with a non-Clifford angle.
    pub fn is_rotation(self) -> bool {
        !self.is_clifford()
    }

    pub fn max_qubit(self) -> usize {
        match self {
            Gate::Cnot(c, t) => c.max(t),
            Gate::X(q) | Gate::S(q) | Gate::Sdg(q) | Gate::H(q) | Gate::Rz(q, _) => q,
        }
    }

    pub fn check(self, width: usize) -> Result<()> {
        if let Gate::Cnot(c, t) = self {
            if c == t {
                return Err(Error::CnotSameQubit(c));
            }
        }
        let q = self.max_qubit();
        if q >= width {
            return Err(Error::QubitOutOfRange { index: q, width });
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::X(q) => write!(f, "X{q}"),
            Gate::Cnot(c, t) => write!(f, "CNOT{c},{t}"),
            Gate::S(q) => write!(f, "S{q}"),
            Gate::Sdg(q) => write!(f, "Sdg{q}"),
            Gate::H(q) => write!(f, "H{q}"),
            Gate::Rz(q, a) => write!(f, "Rz{q}({a})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub gate_count: usize,
    pub h_count: usize,
    pub internal_h_count: usize,
    pub t_count: usize,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Circuit {
        Circuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    /// Builds a circuit, checking every gate against the width.
    pub fn from_gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Circuit> {
        for g in &gates {
            g.check(n_qubits)?;
        }
        Ok(Circuit { n_qubits, gates })
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate. Indices are checked in debug builds only; use
    /// [`Circuit::from_gates`] for untrusted input.
    pub fn push(&mut self, g: Gate) {
        debug_assert!(g.check(self.n_qubits).is_ok(), "bad gate {g}");
        self.gates.push(g);
    }

    pub fn extend(&mut self, other: &Circuit) {
        debug_assert_eq!(self.n_qubits, other.n_qubits);
        self.gates.extend_from_slice(&other.gates);
    }

    pub fn validate(&self) -> Result<()> {
        self.gates.iter().try_for_each(|g| g.check(self.n_qubits))
    }

    pub fn counts(&self) -> Counts {
        let rot: Vec<usize> = (0..self.gates.len()).filter(|&i| self.gates[i].is_rotation()).collect();
        let internal_h_count = match (rot.first(), rot.last()) {
            (Some(&a), Some(&b)) if a < b => self.gates[a..b].iter().filter(|g| g.is_h()).count(),
            _ => 0,
        };
        Counts {
            gate_count: self.gates.len(),
            h_count: self.gates.iter().filter(|g| g.is_h()).count(),
            internal_h_count,
            t_count: self
                .gates
                .iter()
                .filter(|g| matches!(g, Gate::Rz(_, a) if a.is_t_like()))
                .count(),
        }
    }

    /// The same circuit without its non-Clifford rotations.
    pub fn without_rotations(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().copied().filter(|g| g.is_clifford()).collect(),
        }
    }
}

/// `a :: b`.
pub fn concat(a: &Circuit, b: &Circuit) -> Result<Circuit> {
    if a.n_qubits != b.n_qubits {
        return Err(Error::Dimension {
            expected: a.n_qubits,
            found: b.n_qubits,
        });
    }
    let mut out = a.clone();
    out.extend(b);
    Ok(out)
}

/// Reverses the gate list and replaces every gate by its adjoint.
pub fn inverse(c: &Circuit) -> Circuit {
    Circuit {
        n_qubits: c.n_qubits,
        gates: c.gates.iter().rev().map(|g| g.inverse()).collect(),
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gates.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn angle_normalization() {
        assert_eq!(Angle::exact(-1, 2), Angle::exact(7, 2));
        assert_eq!(Angle::exact(2, 2), Angle::exact(1, 1));
        assert_eq!(Angle::exact(8, 2), Angle::ZERO);
        assert_eq!(Angle::t() + Angle::t(), Angle::exact(1, 1));
        assert_eq!(Angle::t() + Angle::tdg(), Angle::ZERO);
        assert_eq!(-Angle::exact(3, 3), Angle::exact(13, 3));
    }

    #[test]
    fn angle_classes() {
        assert_eq!(Angle::exact(1, 1).clifford_power(), Some(1));
        assert_eq!(Angle::exact(1, 0).clifford_power(), Some(2));
        assert_eq!(Angle::exact(3, 1).clifford_power(), Some(3));
        assert!(Angle::t().is_t_like() && !Angle::t().is_clifford());
        assert!(Angle::exact(3, 2).is_t_like());
        assert!(!Angle::exact(1, 3).is_t_like());
        assert_eq!(Angle::Float(-FRAC_PI_2).clifford_power(), Some(3));
        assert!(Angle::Float(5.0 * FRAC_PI_4).is_t_like());
        assert!(!Angle::Float(0.3).is_clifford() && !Angle::Float(0.3).is_t_like());
        assert!(Angle::Float(1e-13).is_zero());
    }

    #[test]
    fn angle_display() {
        assert_eq!(Angle::exact(3, 2).to_string(), "3*pi/4");
        assert_eq!(Angle::t().to_string(), "pi/4");
        assert_eq!(Angle::exact(1, 0).to_string(), "pi");
        assert_eq!(Angle::ZERO.to_string(), "0");
        assert_eq!(Angle::Float(0.3).to_string().parse::<f64>().unwrap(), 0.3);
    }

    #[test]
    fn inverse_examples() {
        let c = Circuit::from_gates(1, vec![Gate::S(0)]).unwrap();
        assert_eq!(inverse(&c).gates, vec![Gate::Sdg(0)]);
        let c = Circuit::from_gates(2, vec![Gate::H(0), Gate::Cnot(0, 1)]).unwrap();
        assert_eq!(inverse(&c).gates, vec![Gate::Cnot(0, 1), Gate::H(0)]);
    }

    #[test]
    fn validation() {
        assert_eq!(
            Circuit::from_gates(2, vec![Gate::H(2)]),
            Err(Error::QubitOutOfRange { index: 2, width: 2 })
        );
        assert_eq!(
            Circuit::from_gates(2, vec![Gate::Cnot(1, 1)]),
            Err(Error::CnotSameQubit(1))
        );
        assert!(concat(&Circuit::new(1), &Circuit::new(2)).is_err());
    }

    #[test]
    fn internal_h_counting() {
        let t = Gate::Rz(0, Angle::t());
        let clifford = Circuit::from_gates(1, vec![Gate::H(0), Gate::S(0), Gate::H(0)]).unwrap();
        assert_eq!(clifford.counts().internal_h_count, 0);
        let c = Circuit::from_gates(
            1,
            vec![
                Gate::H(0),
                t,
                Gate::H(0),
                Gate::Rz(0, Angle::exact(1, 1)),
                t,
                Gate::H(0),
            ],
        )
        .unwrap();
        let k = c.counts();
        assert_eq!((k.h_count, k.internal_h_count, k.t_count, k.gate_count), (3, 1, 2, 6));
        let single = Circuit::from_gates(1, vec![Gate::H(0), t, Gate::H(0)]).unwrap();
        assert_eq!(single.counts().internal_h_count, 0);
    }

    pub(crate) fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
        let q = 0..n;
        prop_oneof![
            q.clone().prop_map(Gate::X),
            q.clone().prop_map(Gate::S),
            q.clone().prop_map(Gate::Sdg),
            q.clone().prop_map(Gate::H),
            (q.clone(), -8i64..8).prop_map(|(q, k)| Gate::Rz(q, Angle::exact(k, 2))),
            (q.clone(), -1.0f64..1.0).prop_map(|(q, x)| Gate::Rz(q, Angle::Float(x))),
            (0..n, 1..n.max(2)).prop_map(move |(c, d)| Gate::Cnot(c, (c + d) % n.max(2))),
        ]
        .prop_filter("valid", move |g| g.check(n).is_ok())
    }

    fn arb_circuit() -> impl Strategy<Value = Circuit> {
        (2usize..5).prop_flat_map(|n| {
            prop::collection::vec(arb_gate(n), 0..30).prop_map(move |gates| Circuit { n_qubits: n, gates })
        })
    }

    proptest! {
        #[test]
        fn inverse_is_involution(c in arb_circuit()) {
            prop_assert_eq!(inverse(&inverse(&c)), c);
        }

        #[test]
        fn inverse_preserves_counts(c in arb_circuit()) {
            prop_assert_eq!(inverse(&c).counts(), c.counts());
        }

        #[test]
        fn counts_add_under_concat(a in arb_circuit(), b in arb_circuit()) {
            let b = Circuit { n_qubits: a.n_qubits, gates: b.gates.into_iter().filter(|g| g.check(a.n_qubits).is_ok()).collect() };
            let ab = concat(&a, &b).unwrap();
            prop_assert_eq!(ab.len(), a.len() + b.len());
            prop_assert_eq!(ab.counts().h_count, a.counts().h_count + b.counts().h_count);
            prop_assert!(ab.counts().internal_h_count <= ab.counts().h_count);
        }

        #[test]
        fn exact_angle_addition_is_group(a in -64i64..64, b in -64i64..64, k in 0u32..6) {
            let x = Angle::exact(a, k);
            let y = Angle::exact(b, k);
            prop_assert_eq!(x + y, Angle::exact(a + b, k));
            prop_assert_eq!(x + -x, Angle::ZERO);
            let diff = (x.radians() + y.radians() - (x + y).radians()) / (2.0 * PI);
            prop_assert!((diff - diff.round()).abs() < 1e-12);
        }
    }
}
