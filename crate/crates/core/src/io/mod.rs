//! Circuit file formats.

mod qasm;
mod qc;
pub mod stats;

use std::path::Path;

pub use qasm::{emit_qasm2, parse_qasm2};
pub use qc::{emit_qc, parse_qc};

use crate::circuit::{Angle, Circuit};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Qc,
    Qasm2,
}

impl Format {
    /// `.qasm` selects OpenQASM 2; anything else is `.qc`.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("qasm") => Format::Qasm2,
            _ => Format::Qc,
        }
    }
}

pub fn parse(text: &str, format: Format) -> Result<Circuit> {
    match format {
        Format::Qc => parse_qc(text),
        Format::Qasm2 => parse_qasm2(text),
    }
}

pub fn emit(c: &Circuit, format: Format) -> String {
    match format {
        Format::Qc => emit_qc(c),
        Format::Qasm2 => emit_qasm2(c),
    }
}

/// A value of the angle grammar: `coef · π^pi_pow` with rational `coef`,
/// or a plain float once exactness is lost.
#[derive(Clone, Copy, Debug)]
enum Val {
    Rat { num: i128, den: i128, pi_pow: i32 },
    Float(f64),
}

impl Val {
    fn to_f64(self) -> f64 {
        match self {
            Val::Rat { num, den, pi_pow } => num as f64 / den as f64 * std::f64::consts::PI.powi(pi_pow),
            Val::Float(x) => x,
        }
    }

    fn rat(num: i128, den: i128, pi_pow: i32) -> Option<Val> {
        if den == 0 {
            return None;
        }
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i128;
        let s = if den < 0 { -1 } else { 1 };
        Some(Val::Rat {
            num: s * num / g,
            den: s * den / g,
            pi_pow,
        })
    }

    fn mul(self, o: Val) -> Val {
        if let (
            Val::Rat {
                num: a,
                den: b,
                pi_pow: p,
            },
            Val::Rat {
                num: c,
                den: d,
                pi_pow: q,
            },
        ) = (self, o)
        {
            if let (Some(n), Some(m)) = (a.checked_mul(c), b.checked_mul(d)) {
                if let Some(v) = Val::rat(n, m, p + q) {
                    return v;
                }
            }
        }
        Val::Float(self.to_f64() * o.to_f64())
    }

    fn div(self, o: Val) -> Val {
        match o {
            Val::Rat { num, den, pi_pow } if num != 0 => self.mul(Val::Rat {
                num: den,
                den: num,
                pi_pow: -pi_pow,
            }),
            _ => Val::Float(self.to_f64() / o.to_f64()),
        }
    }

    fn add(self, o: Val) -> Val {
        match (self, o) {
            (Val::Rat { num: 0, .. }, v) | (v, Val::Rat { num: 0, .. }) => v,
            (
                Val::Rat {
                    num: a,
                    den: b,
                    pi_pow: p,
                },
                Val::Rat {
                    num: c,
                    den: d,
                    pi_pow: q,
                },
            ) if p == q => {
                let n = a
                    .checked_mul(d)
                    .zip(c.checked_mul(b))
                    .and_then(|(x, y)| x.checked_add(y));
                match (n, b.checked_mul(d)) {
                    (Some(n), Some(m)) => Val::rat(n, m, p).unwrap_or(Val::Float(f64::NAN)),
                    _ => Val::Float(self.to_f64() + o.to_f64()),
                }
            }
            _ => Val::Float(self.to_f64() + o.to_f64()),
        }
    }

    fn neg(self) -> Val {
        match self {
            Val::Rat { num, den, pi_pow } => Val::Rat { num: -num, den, pi_pow },
            Val::Float(x) => Val::Float(-x),
        }
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

struct AngleParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl AngleParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> std::result::Result<Val, String> {
        let mut v = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let r = self.term()?;
            v = if op == b'+' { v.add(r) } else { v.add(r.neg()) };
        }
        Ok(v)
    }

    fn term(&mut self) -> std::result::Result<Val, String> {
        let mut v = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    v = v.mul(self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    v = v.div(self.unary()?);
                }
                // implicit product such as `3pi`
                Some(b'p') => v = v.mul(self.unary()?),
                _ => return Ok(v),
            }
        }
    }

    fn unary(&mut self) -> std::result::Result<Val, String> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> std::result::Result<Val, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err("expected ')'".into());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'p') if self.s[self.pos..].starts_with(b"pi") => {
                self.pos += 2;
                Ok(Val::Rat {
                    num: 1,
                    den: 1,
                    pi_pow: 1,
                })
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                let mut is_float = false;
                while let Some(&c) = self.s.get(self.pos) {
                    let exp_sign = matches!(c, b'+' | b'-') && matches!(self.s[self.pos - 1], b'e' | b'E');
                    if c.is_ascii_digit() || exp_sign {
                        self.pos += 1;
                    } else if matches!(c, b'.' | b'e' | b'E') {
                        is_float = true;
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                if is_float {
                    text.parse::<f64>()
                        .map(Val::Float)
                        .map_err(|_| format!("bad number {text:?}"))
                } else {
                    text.parse::<i128>()
                        .map(|n| Val::Rat {
                            num: n,
                            den: 1,
                            pi_pow: 0,
                        })
                        .map_err(|_| format!("bad number {text:?}"))
                }
            }
            Some(c) => Err(format!("unexpected {:?} in angle", c as char)),
            None => Err("empty angle".into()),
        }
    }
}

/// Parses an angle expression such as `pi/4`, `-3*pi/8`, `0.3` or `2*pi`.
/// Dyadic multiples of π stay exact.
pub fn parse_angle(text: &str) -> std::result::Result<Angle, String> {
    let mut p = AngleParser {
        s: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(format!("trailing input in angle {text:?}"));
    }
    if let Val::Rat { num, den, pi_pow } = v {
        if num == 0 {
            return Ok(Angle::ZERO);
        }
        if pi_pow == 1 && (den as u128).is_power_of_two() && den.trailing_zeros() <= 62 {
            let k = den.trailing_zeros();
            let num = num.rem_euclid(2 * den) as i64;
            return Ok(Angle::exact(num, k));
        }
    }
    let x = v.to_f64();
    if x.is_finite() {
        Ok(Angle::Float(x))
    } else {
        Err(format!("angle {text:?} is not finite"))
    }
}
