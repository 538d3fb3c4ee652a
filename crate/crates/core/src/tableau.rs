//! Stabilizer tableaux of Clifford operators.
//!
//! The tableau of `U` stores the `2n` signed Pauli products
//! `U Z_k U†` (stabilizers, generators `0..n`) and `U X_k U†`
//! (destabilizers, generators `n..2n`). Each generator is one row of the
//! `z` and `x` matrices, so the qubit index runs along the columns.

use crate::bitmatrix::BitMatrix;
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{product_phase, symplectic, Pauli, PauliSequence};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tableau {
    n: usize,
    z: BitMatrix,
    x: BitMatrix,
    signs: Vec<bool>,
}

impl Tableau {
    pub fn identity(n: usize) -> Tableau {
        let mut z = BitMatrix::zeros(2 * n, n);
        let mut x = BitMatrix::zeros(2 * n, n);
        for k in 0..n {
            z.set(k, k, true);
            x.set(n + k, k, true);
        }
        Tableau {
            n,
            z,
            x,
            signs: vec![false; 2 * n],
        }
    }

    /// Tableau of a Clifford circuit. Rz gates must have Clifford angles.
    pub fn from_circuit(c: &Circuit) -> Result<Tableau> {
        let mut t = Tableau::identity(c.n_qubits);
        for g in &c.gates {
            t.append_gate(g)?;
        }
        Ok(t)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn is_identity(&self) -> bool {
        *self == Tableau::identity(self.n)
    }

    /// Generator `g` (stabilizer for `g < n`) with its sign bit.
    pub fn generator(&self, g: usize) -> (Pauli, bool) {
        (
            Pauli::from_words(self.n, self.z.row(g).to_vec(), self.x.row(g).to_vec()),
            self.signs[g],
        )
    }

    pub fn stabilizer(&self, k: usize) -> (Pauli, bool) {
        self.generator(k)
    }

    pub fn destabilizer(&self, k: usize) -> (Pauli, bool) {
        self.generator(self.n + k)
    }

    pub fn sign(&self, g: usize) -> bool {
        self.signs[g]
    }

    /// Stabilizer `k` as raw words `(z, x, sign)`.
    pub(crate) fn stabilizer_words(&self, k: usize) -> (&[u64], &[u64], bool) {
        (self.z.row(k), self.x.row(k), self.signs[k])
    }

    /// The stabilizers as a sequence of `n` columns, plus their signs.
    pub fn stabilizers(&self) -> (PauliSequence, Vec<bool>) {
        let cols: Vec<Pauli> = (0..self.n).map(|k| self.generator(k).0).collect();
        (
            PauliSequence::from_paulis(self.n, &cols).expect("widths agree"),
            self.signs[..self.n].to_vec(),
        )
    }

    /// Checks that generators pair symplectically and signs are consistent
    /// with commutation (structural validity only).
    pub fn is_valid(&self) -> bool {
        let n = self.n;
        (0..2 * n).all(|a| {
            (0..2 * n).all(|b| {
                let anti = symplectic(self.z.row(a), self.x.row(a), self.z.row(b), self.x.row(b));
                anti == (a % n == b % n && a != b)
            })
        })
    }

    #[inline]
    fn bits(&self, g: usize, q: usize) -> (bool, bool) {
        (self.z.get(g, q), self.x.get(g, q))
    }

    fn check_gate(&self, g: &Gate) -> Result<()> {
        g.check(self.n)?;
        if g.is_clifford() {
            Ok(())
        } else {
            Err(Error::NonClifford(g.to_string()))
        }
    }

    /// `U ← gU`: every generator `P` becomes `g P g†`.
    pub fn append_gate(&mut self, g: &Gate) -> Result<()> {
        self.check_gate(g)?;
        self.append_unchecked(g);
        Ok(())
    }

    pub(crate) fn append_unchecked(&mut self, g: &Gate) {
        let rows = 2 * self.n;
        match *g {
            Gate::X(a) => {
                for r in 0..rows {
                    self.signs[r] ^= self.z.get(r, a);
                }
            }
            Gate::S(a) | Gate::Sdg(a) => {
                let dg = matches!(g, Gate::Sdg(_));
                for r in 0..rows {
                    let (z, x) = self.bits(r, a);
                    if x {
                        self.signs[r] ^= z != dg;
                        self.z.flip(r, a);
                    }
                }
            }
            Gate::H(a) => {
                for r in 0..rows {
                    let (z, x) = self.bits(r, a);
                    self.signs[r] ^= z & x;
                    self.z.set(r, a, x);
                    self.x.set(r, a, z);
                }
            }
            Gate::Cnot(c, t) => {
                for r in 0..rows {
                    let (zc, xc) = self.bits(r, c);
                    let (zt, xt) = self.bits(r, t);
                    self.signs[r] ^= xc & zt & !(xt ^ zc);
                    if xc {
                        self.x.flip(r, t);
                    }
                    if zt {
                        self.z.flip(r, c);
                    }
                }
            }
            Gate::Rz(a, angle) => {
                for _ in 0..angle.clifford_power().expect("checked") {
                    self.append_unchecked(&Gate::S(a));
                }
            }
        }
    }

    /// `U ← Ug`: the tableau of the circuit with `g` placed first.
    pub fn prepend_gate(&mut self, g: &Gate) -> Result<()> {
        self.check_gate(g)?;
        self.prepend_unchecked(g);
        Ok(())
    }

    pub(crate) fn prepend_unchecked(&mut self, g: &Gate) {
        let n = self.n;
        match *g {
            Gate::X(a) => self.signs[a] ^= true,
            Gate::H(a) => self.swap_generators(a, n + a),
            // U S X S† U† = U Y U† = i·D·S
            Gate::S(a) => self.mul_row_right(n + a, a, 1),
            Gate::Sdg(a) => self.mul_row_right(n + a, a, 3),
            Gate::Cnot(c, t) => {
                self.mul_row_right(t, c, 0);
                self.mul_row_right(n + c, n + t, 0);
            }
            Gate::Rz(a, angle) => {
                for _ in 0..angle.clifford_power().expect("checked") {
                    self.prepend_unchecked(&Gate::S(a));
                }
            }
        }
    }

    fn swap_generators(&mut self, a: usize, b: usize) {
        self.z.swap_rows(a, b);
        self.x.swap_rows(a, b);
        self.signs.swap(a, b);
    }

    /// Generator `dst ← i^extra · dst · src`. The result must be Hermitian.
    fn mul_row_right(&mut self, dst: usize, src: usize, extra: u32) {
        let e = product_phase(self.z.row(dst), self.x.row(dst), self.z.row(src), self.x.row(src))
            + 2 * (self.signs[dst] as u32 + self.signs[src] as u32)
            + extra;
        debug_assert_eq!(e % 2, 0, "non-Hermitian generator product");
        self.signs[dst] = (e / 2) % 2 == 1;
        self.z.xor_row(dst, src);
        self.x.xor_row(dst, src);
    }

    /// `U P U†` for a signed product `(-1)^sign · P`.
    pub fn map_pauli(&self, p: &Pauli, sign: bool) -> (Pauli, bool) {
        assert_eq!(p.n_qubits(), self.n);
        let n = self.n;
        let words = self.z.stride();
        let mut z = vec![0u64; words];
        let mut x = vec![0u64; words];
        // P = i^{#Y} X^x Z^z, mapped factor by factor.
        let ny: u32 = p
            .z_words()
            .iter()
            .zip(p.x_words())
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        let mut e = ny + 2 * sign as u32;
        let mut mul = |g: usize, z: &mut Vec<u64>, x: &mut Vec<u64>| {
            e += product_phase(z, x, self.z.row(g), self.x.row(g)) + 2 * self.signs[g] as u32;
            for w in 0..words {
                z[w] ^= self.z.row(g)[w];
                x[w] ^= self.x.row(g)[w];
            }
        };
        for q in p.x_support() {
            mul(n + q, &mut z, &mut x);
        }
        for q in p.z_support() {
            mul(q, &mut z, &mut x);
        }
        debug_assert_eq!(e % 2, 0);
        (Pauli::from_words(n, z, x), (e / 2) % 2 == 1)
    }

    /// Tableau of `U†`.
    pub fn invert(&self) -> Tableau {
        let n = self.n;
        let mut out = Tableau::identity(n);
        out.z = BitMatrix::zeros(2 * n, n);
        out.x = BitMatrix::zeros(2 * n, n);
        // U† Z_k U = P with U P U† = Z_k. Expanding Z_k (resp. X_k) in the
        // generators of U via the symplectic pairing gives P's bits.
        for k in 0..n {
            for j in 0..n {
                out.z.set(k, j, self.x.get(n + j, k));
                out.x.set(k, j, self.x.get(j, k));
                out.z.set(n + k, j, self.z.get(n + j, k));
                out.x.set(n + k, j, self.z.get(j, k));
            }
        }
        for g in 0..2 * n {
            let (p, _) = out.generator(g);
            let (img, s) = self.map_pauli(&p, false);
            debug_assert_eq!(
                img,
                {
                    let mut e = Pauli::identity(n);
                    if g < n {
                        e.set(g, true, false)
                    } else {
                        e.set(g - n, false, true)
                    }
                    e
                },
                "tableau is not symplectic"
            );
            out.signs[g] = s;
        }
        out
    }

    /// Tableau of the product `A·B` (apply `B` first, then `A`).
    pub fn compose(a: &Tableau, b: &Tableau) -> Tableau {
        assert_eq!(a.n, b.n);
        let mut out = b.clone();
        for g in 0..2 * b.n {
            let (p, s) = b.generator(g);
            let (q, s2) = a.map_pauli(&p, s);
            out.z.row_mut(g).copy_from_slice(q.z_words());
            out.x.row_mut(g).copy_from_slice(q.x_words());
            out.signs[g] = s2;
        }
        out
    }

    /// Maps every column `P` of `seq` to `U P U†`.
    pub fn map_sequence(&self, seq: &PauliSequence) -> Result<(PauliSequence, Vec<bool>)> {
        if seq.n_qubits() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: seq.n_qubits(),
            });
        }
        let mut out = PauliSequence::new(self.n, seq.m());
        let mut signs = Vec::with_capacity(seq.m());
        for j in 0..seq.m() {
            let (p, s) = self.map_pauli(&seq.column(j), false);
            out.set_column(j, &p);
            signs.push(s);
        }
        Ok((out, signs))
    }

    /// Maps every column `P` of `seq` to `U† P U`.
    pub fn conjugate_sequence(&self, seq: &PauliSequence) -> Result<(PauliSequence, Vec<bool>)> {
        self.invert().map_sequence(seq)
    }

    /// `U ← R U R†` with `R = exp(-i·power·(π/4)·Q)` for the signed product
    /// `Q`, i.e. appends the Clifford rotation `R_Q(power·π/2)`.
    pub fn append_clifford_rotation(&mut self, q: &Pauli, q_sign: bool, power: u8) {
        let power = power % 4;
        if power == 0 {
            return;
        }
        let n = self.n;
        for g in 0..2 * n {
            if !symplectic(self.z.row(g), self.x.row(g), q.z_words(), q.x_words()) {
                continue;
            }
            // G anticommutes with Q: R G R† = R_Q(2ψ) G.
            let extra = match power {
                2 => {
                    self.signs[g] ^= true;
                    continue;
                }
                // quarter turn: i·G·Q, three quarters: -i·G·Q
                1 => 1 + 2 * q_sign as u32,
                _ => 3 + 2 * q_sign as u32,
            };
            let e = product_phase(self.z.row(g), self.x.row(g), q.z_words(), q.x_words())
                + 2 * self.signs[g] as u32
                + extra;
            debug_assert_eq!(e % 2, 0);
            self.signs[g] = (e / 2) % 2 == 1;
            for w in 0..self.z.stride() {
                self.z.row_mut(g)[w] ^= q.z_words()[w];
                self.x.row_mut(g)[w] ^= q.x_words()[w];
            }
        }
    }
}
