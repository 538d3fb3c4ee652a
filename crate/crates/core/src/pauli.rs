//! Sign-free Pauli products and sequences of them.
//!
//! A product on `n` qubits is a pair of bit vectors `(z, x)`. Per qubit,
//! `(0,0) = I`, `(0,1) = X`, `(1,1) = Y`, `(1,0) = Z`.

use std::fmt;
use std::str::FromStr;

use crate::bitmatrix::{words_for, BitMatrix};
use crate::circuit::Gate;
use crate::error::{Error, Result};

/// A single Pauli product, bit-packed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pauli {
    n: usize,
    pub(crate) z: Vec<u64>,
    pub(crate) x: Vec<u64>,
}

impl Pauli {
    pub fn identity(n: usize) -> Pauli {
        Pauli {
            n,
            z: vec![0; words_for(n)],
            x: vec![0; words_for(n)],
        }
    }

    pub fn from_bits(z: &[bool], x: &[bool]) -> Pauli {
        assert_eq!(z.len(), x.len());
        let mut p = Pauli::identity(z.len());
        for q in 0..z.len() {
            p.set(q, z[q], x[q]);
        }
        p
    }

    pub(crate) fn from_words(n: usize, z: Vec<u64>, x: Vec<u64>) -> Pauli {
        Pauli { n, z, x }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// `(z, x)` bits on qubit `q`.
    pub fn get(&self, q: usize) -> (bool, bool) {
        let (w, b) = (q / 64, q % 64);
        ((self.z[w] >> b) & 1 == 1, (self.x[w] >> b) & 1 == 1)
    }

    pub fn set(&mut self, q: usize, z: bool, x: bool) {
        let (w, bit) = (q / 64, 1u64 << (q % 64));
        self.z[w] = if z { self.z[w] | bit } else { self.z[w] & !bit };
        self.x[w] = if x { self.x[w] | bit } else { self.x[w] & !bit };
    }

    pub fn is_identity(&self) -> bool {
        self.z.iter().chain(&self.x).all(|&w| w == 0)
    }

    /// No X or Y factor.
    pub fn is_diagonal(&self) -> bool {
        self.x.iter().all(|&w| w == 0)
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    /// Qubits carrying Pauli `Z` or `Y`.
    pub fn z_support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&q| self.get(q).0)
    }

    /// Qubits carrying Pauli `X` or `Y`.
    pub fn x_support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&q| self.get(q).1)
    }
}

/// Symplectic inner product of packed `(z, x)` words: `⟨z1,x2⟩ ⊕ ⟨x1,z2⟩`.
#[inline]
pub(crate) fn symplectic(z1: &[u64], x1: &[u64], z2: &[u64], x2: &[u64]) -> bool {
    let mut acc = 0u64;
    for w in 0..z1.len() {
        acc ^= (z1[w] & x2[w]) ^ (x1[w] & z2[w]);
    }
    acc.count_ones() % 2 == 1
}

/// Phase exponent of a product of Hermitian Pauli operators.
///
/// With `P(z,x)` the Hermitian product (`Y = iXZ` per qubit),
/// `P(z1,x1) P(z2,x2) = i^e P(z1^z2, x1^x2)`; returns `e mod 4`.
#[inline]
pub(crate) fn product_phase(z1: &[u64], x1: &[u64], z2: &[u64], x2: &[u64]) -> u32 {
    let mut e: u32 = 0;
    for w in 0..z1.len() {
        let (a, b, c, d) = (z1[w], x1[w], z2[w], x2[w]);
        let y3 = (a ^ c) & (b ^ d);
        e = e
            .wrapping_add((a & b).count_ones())
            .wrapping_add((c & d).count_ones())
            .wrapping_add(2 * (a & d).count_ones())
            .wrapping_sub(y3.count_ones());
    }
    e & 3
}

/// True iff `p` and `q` commute.
pub fn commutes(p: &Pauli, q: &Pauli) -> Result<bool> {
    if p.n != q.n {
        return Err(Error::Dimension {
            expected: p.n,
            found: q.n,
        });
    }
    Ok(!symplectic(&p.z, &p.x, &q.z, &q.x))
}

impl FromStr for Pauli {
    type Err = Error;

    /// Parses a string over `IXYZ`; character `q` is the factor on qubit `q`.
    fn from_str(s: &str) -> Result<Pauli> {
        let chars: Vec<char> = s.trim().chars().collect();
        let mut p = Pauli::identity(chars.len());
        for (q, ch) in chars.into_iter().enumerate() {
            let (z, x) = match ch.to_ascii_uppercase() {
                'I' | '_' => (false, false),
                'X' => (false, true),
                'Y' => (true, true),
                'Z' => (true, false),
                _ => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("bad Pauli letter {ch:?}"),
                    })
                }
            };
            p.set(q, z, x);
        }
        Ok(p)
    }
}

fn letter(z: bool, x: bool) -> char {
    match (z, x) {
        (false, false) => 'I',
        (false, true) => 'X',
        (true, true) => 'Y',
        (true, false) => 'Z',
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            let (z, x) = self.get(q);
            write!(f, "{}", letter(z, x))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

/// A sequence of `m` sign-free Pauli products on `n` qubits, stored as the
/// `2n × m` block matrix `[Z; X]`: row `q` is the Z block on qubit `q`, row
/// `n + q` the X block.
#[derive(Clone, PartialEq, Eq)]
pub struct PauliSequence {
    n: usize,
    mat: BitMatrix,
}

impl PauliSequence {
    pub fn new(n: usize, m: usize) -> PauliSequence {
        PauliSequence {
            n,
            mat: BitMatrix::zeros(2 * n, m),
        }
    }

    /// Builds a sequence from `[Z; X]` blocks of identical shape.
    pub fn from_blocks(z: &BitMatrix, x: &BitMatrix) -> Result<PauliSequence> {
        if z.rows() != x.rows() || z.cols() != x.cols() {
            return Err(Error::Dimension {
                expected: z.rows() * z.cols(),
                found: x.rows() * x.cols(),
            });
        }
        Ok(PauliSequence {
            n: z.rows(),
            mat: z.vstack(x),
        })
    }

    pub fn from_paulis(n: usize, cols: &[Pauli]) -> Result<PauliSequence> {
        let mut s = PauliSequence::new(n, cols.len());
        for (j, p) in cols.iter().enumerate() {
            if p.n != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: p.n,
                });
            }
            s.set_column(j, p);
        }
        Ok(s)
    }

    /// Parses whitespace-separated Pauli strings, one product per token.
    pub fn parse(n: usize, text: &str) -> Result<PauliSequence> {
        let cols: Vec<Pauli> = text.split_whitespace().map(str::parse).collect::<Result<_>>()?;
        PauliSequence::from_paulis(n, &cols)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.mat.cols()
    }

    /// The stacked `[Z; X]` matrix.
    pub fn matrix(&self) -> &BitMatrix {
        &self.mat
    }

    pub fn z_block(&self) -> BitMatrix {
        self.block(0)
    }

    pub fn x_block(&self) -> BitMatrix {
        self.block(self.n)
    }

    fn block(&self, off: usize) -> BitMatrix {
        let mut b = BitMatrix::zeros(self.n, self.m());
        for q in 0..self.n {
            b.row_mut(q).copy_from_slice(self.mat.row(off + q));
        }
        b
    }

    #[inline]
    pub fn z(&self, q: usize, j: usize) -> bool {
        self.mat.get(q, j)
    }

    #[inline]
    pub fn x(&self, q: usize, j: usize) -> bool {
        self.mat.get(self.n + q, j)
    }

    pub fn column(&self, j: usize) -> Pauli {
        let mut p = Pauli::identity(self.n);
        for q in 0..self.n {
            p.set(q, self.z(q, j), self.x(q, j));
        }
        p
    }

    pub fn columns(&self) -> Vec<Pauli> {
        (0..self.m()).map(|j| self.column(j)).collect()
    }

    pub fn set_column(&mut self, j: usize, p: &Pauli) {
        for q in 0..self.n {
            let (z, x) = p.get(q);
            self.mat.set(q, j, z);
            self.mat.set(self.n + q, j, x);
        }
    }

    pub fn is_diagonal_column(&self, j: usize) -> bool {
        (0..self.n).all(|q| !self.x(q, j))
    }

    /// Smallest qubit with an X bit in column `j`.
    pub(crate) fn first_x(&self, j: usize) -> Option<usize> {
        (0..self.n).find(|&q| self.x(q, j))
    }

    /// Column order reversed.
    pub fn reverse_columns(&self) -> PauliSequence {
        let m = self.m();
        let mut out = PauliSequence::new(self.n, m);
        for r in 0..2 * self.n {
            for c in self.mat.ones_in_row(r) {
                out.mat.set(r, m - 1 - c, true);
            }
        }
        out
    }

    /// `[self other]`.
    pub fn hstack(&self, other: &PauliSequence) -> Result<PauliSequence> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(PauliSequence {
            n: self.n,
            mat: self.mat.hstack(&other.mat),
        })
    }

    /// Copy of columns `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> PauliSequence {
        PauliSequence {
            n: self.n,
            mat: self.mat.slice_cols(start, end),
        }
    }

    /// Swaps columns `i` and `j`.
    pub fn swap_columns(&mut self, i: usize, j: usize) {
        for r in 0..2 * self.n {
            let (a, b) = (self.mat.get(r, i), self.mat.get(r, j));
            self.mat.set(r, i, b);
            self.mat.set(r, j, a);
        }
    }

    /// Conjugates every column by a Clifford gate, ignoring signs.
    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        g.check(self.n)?;
        self.apply_from(g, 0)
    }

    /// As [`apply_gate`](Self::apply_gate), touching only the words that
    /// hold columns `>= from_col`. Indices are assumed valid.
    pub(crate) fn apply_from(&mut self, g: &Gate, from_col: usize) -> Result<()> {
        let n = self.n;
        match *g {
            Gate::X(_) => {}
            Gate::Cnot(c, t) => {
                self.mat.xor_row_from(c, t, from_col);
                self.mat.xor_row_from(n + t, n + c, from_col);
            }
            Gate::S(q) | Gate::Sdg(q) => self.mat.xor_row_from(q, n + q, from_col),
            Gate::H(q) => self.mat.swap_rows_from(q, n + q, from_col),
            Gate::Rz(q, a) => match a.clifford_power() {
                Some(k) if k % 2 == 1 => self.mat.xor_row_from(q, n + q, from_col),
                Some(_) => {}
                None => return Err(Error::NonClifford(g.to_string())),
            },
        }
        Ok(())
    }

    /// Conjugates every column `P` to `g P g†` and tracks signs.
    ///
    /// `signs` is a one-row matrix with `m` columns; bit `j` set means
    /// column `j` carries a factor `-1`.
    pub(crate) fn apply_signed_from(&mut self, g: &Gate, signs: &mut BitMatrix, from_col: usize) -> Result<()> {
        debug_assert_eq!(signs.cols(), self.m());
        let n = self.n;
        let w0 = from_col / 64;
        let stride = self.mat.stride();
        let sign = |m: &BitMatrix, signs: &mut BitMatrix, f: &dyn Fn(&BitMatrix, usize) -> u64| {
            for w in w0..stride {
                signs.row_mut(0)[w] ^= f(m, w);
            }
        };
        match *g {
            Gate::X(q) => sign(&self.mat, signs, &|m, w| m.row(q)[w]),
            Gate::S(q) => sign(&self.mat, signs, &|m, w| m.row(q)[w] & m.row(n + q)[w]),
            Gate::Sdg(q) => sign(&self.mat, signs, &|m, w| !m.row(q)[w] & m.row(n + q)[w]),
            Gate::H(q) => sign(&self.mat, signs, &|m, w| m.row(q)[w] & m.row(n + q)[w]),
            Gate::Cnot(c, t) => sign(&self.mat, signs, &|m, w| {
                m.row(n + c)[w] & m.row(t)[w] & !(m.row(n + t)[w] ^ m.row(c)[w])
            }),
            Gate::Rz(q, a) => {
                let k = a.clifford_power().ok_or_else(|| Error::NonClifford(g.to_string()))?;
                for _ in 0..k {
                    self.apply_signed_from(&Gate::S(q), signs, from_col)?;
                }
                return Ok(());
            }
        }
        signs.mask_tail();
        self.apply_from(g, from_col)
    }

    pub fn commutativity_matrix(&self) -> CommutativityMatrix {
        commutativity_matrix(self)
    }
}

impl fmt::Debug for PauliSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self.columns().iter().map(|p| p.to_string()).collect();
        write!(f, "PauliSequence[{}]", cols.join(" "))
    }
}

/// Strictly upper-triangular `m × m` matrix with entry `(i, j)` set iff
/// products `i < j` anticommute.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommutativityMatrix {
    data: BitMatrix,
}

impl CommutativityMatrix {
    pub fn m(&self) -> usize {
        self.data.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data.get(i, j)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.data
    }

    pub fn rank(&self) -> usize {
        self.data.rank()
    }
}

pub fn commutativity_matrix(seq: &PauliSequence) -> CommutativityMatrix {
    let m = seq.m();
    let n = seq.n;
    let zt = seq.z_block().transpose();
    let xt = seq.x_block().transpose();
    let mut data = BitMatrix::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            if n > 0 && symplectic(zt.row(i), xt.row(i), zt.row(j), xt.row(j)) {
                data.set(i, j, true);
            }
        }
    }
    CommutativityMatrix { data }
}

/// `M = [X; A]`, the `(n + m) × m` matrix whose rank is the minimal H-count.
pub fn stack_xa(seq: &PauliSequence, a: &CommutativityMatrix) -> Result<BitMatrix> {
    if a.m() != seq.m() {
        return Err(Error::Dimension {
            expected: seq.m(),
            found: a.m(),
        });
    }
    Ok(seq.x_block().vstack(&a.data))
}
