//! Dense unitary simulation for small circuits.
//!
//! Qubit `q` is bit `q` of the basis-state index. A circuit's matrix is the
//! product of its gates in reverse list order, so `dense_unitary([a, b])`
//! is `B·A`. Gates are represented up to global phase: `Rz(θ)` is
//! `diag(1, e^{iθ})` and `H` is the real Hadamard.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::circuit::{Angle, Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::Pauli;

pub const DEFAULT_MAX_QUBITS: usize = 12;

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl Mat {
    pub fn identity(dim: usize) -> Mat {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Mat { dim, data }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        Mat { dim: d, data: out }
    }

    pub fn adjoint(&self) -> Mat {
        let d = self.dim;
        let mut out = self.clone();
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Mat {
        Mat {
            dim: self.dim,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Mat) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Mat, tol: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) <= tol
    }

    /// Applies a gate on the left (`self ← G·self`).
    pub fn apply_left(&mut self, g: &Gate) {
        let d = self.dim;
        let cols = d;
        match *g {
            Gate::X(q) => {
                let b = 1 << q;
                for r in 0..d {
                    if r & b == 0 {
                        for c in 0..cols {
                            self.data.swap(r * d + c, (r | b) * d + c);
                        }
                    }
                }
            }
            Gate::Cnot(ctl, t) => {
                let (bc, bt) = (1 << ctl, 1 << t);
                for r in 0..d {
                    if r & bc != 0 && r & bt == 0 {
                        for c in 0..cols {
                            self.data.swap(r * d + c, (r | bt) * d + c);
                        }
                    }
                }
            }
            Gate::H(q) => {
                let b = 1 << q;
                let h = FRAC_1_SQRT_2;
                for r in 0..d {
                    if r & b == 0 {
                        for c in 0..cols {
                            let (u, v) = (self.data[r * d + c], self.data[(r | b) * d + c]);
                            self.data[r * d + c] = (u + v) * h;
                            self.data[(r | b) * d + c] = (u - v) * h;
                        }
                    }
                }
            }
            Gate::S(q) => self.phase_rows(q, Complex64::new(0.0, 1.0)),
            Gate::Sdg(q) => self.phase_rows(q, Complex64::new(0.0, -1.0)),
            Gate::Rz(q, a) => self.phase_rows(q, unit_phase(a)),
        }
    }

    fn phase_rows(&mut self, q: usize, ph: Complex64) {
        let d = self.dim;
        let b = 1 << q;
        for r in 0..d {
            if r & b != 0 {
                for v in &mut self.data[r * d..(r + 1) * d] {
                    *v *= ph;
                }
            }
        }
    }
}

/// `e^{iθ}`, exact for multiples of π/4.
pub fn unit_phase(a: Angle) -> Complex64 {
    if let Angle::Exact { num, log2_den } = a {
        if log2_den <= 2 {
            let eighths = (num << (2 - log2_den)) % 8;
            let h = FRAC_1_SQRT_2;
            let (re, im) = match eighths {
                0 => (1.0, 0.0),
                1 => (h, h),
                2 => (0.0, 1.0),
                3 => (-h, h),
                4 => (-1.0, 0.0),
                5 => (-h, -h),
                6 => (0.0, -1.0),
                _ => (h, -h),
            };
            return Complex64::new(re, im);
        }
    }
    Complex64::from_polar(1.0, a.radians())
}

pub fn gate_matrix(g: &Gate, n: usize) -> Mat {
    let mut m = Mat::identity(1 << n);
    m.apply_left(g);
    m
}

/// Dense matrix of a Hermitian Pauli product (`Y = [[0,-i],[i,0]]`).
pub fn dense_pauli(p: &Pauli) -> Mat {
    let n = p.n_qubits();
    let d = 1usize << n;
    let mut m = Mat {
        dim: d,
        data: vec![Complex64::new(0.0, 0.0); d * d],
    };
    let (mut zmask, mut xmask) = (0usize, 0usize);
    for q in 0..n {
        let (z, x) = p.get(q);
        zmask |= (z as usize) << q;
        xmask |= (x as usize) << q;
    }
    let ny = (zmask & xmask).count_ones();
    let iy = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ][(ny % 4) as usize];
    // P = i^{#Y} X^x Z^z, so P|c> = i^{#Y} (-1)^{z·c} |c ^ x>.
    for c in 0..d {
        let sign = if (zmask & c).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        m.data[(c ^ xmask) * d + c] = iy * sign;
    }
    m
}

/// Unitary of a circuit, up to global phase, for widths up to `cap`.
pub fn dense_unitary_capped(c: &Circuit, cap: usize) -> Result<Mat> {
    if c.n_qubits > cap {
        return Err(Error::WidthCap { n: c.n_qubits, cap });
    }
    let mut m = Mat::identity(1 << c.n_qubits);
    for g in &c.gates {
        m.apply_left(g);
    }
    Ok(m)
}

pub fn dense_unitary(c: &Circuit) -> Result<Mat> {
    dense_unitary_capped(c, DEFAULT_MAX_QUBITS)
}

/// True iff `a = λ·b` for a unit scalar `λ` within max-entry tolerance `tol`.
/// `λ` is read off at the largest-magnitude entry of `b`.
pub fn equiv_up_to_phase(a: &Mat, b: &Mat, tol: f64) -> bool {
    phase_distance(a, b).is_some_and(|d| d <= tol)
}

/// The max-entry deviation `‖a − λb‖` for the best-guess unit `λ`.
pub fn phase_distance(a: &Mat, b: &Mat) -> Option<f64> {
    if a.dim != b.dim {
        return None;
    }
    let (k, bk) = b
        .data
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))?;
    if bk.norm() == 0.0 {
        return Some(a.max_abs_diff(b));
    }
    let ratio = a.data[k] / bk;
    if ratio.norm() == 0.0 {
        return Some(f64::INFINITY);
    }
    let lambda = ratio / ratio.norm();
    Some(a.max_abs_diff(&b.scale(lambda)))
}
