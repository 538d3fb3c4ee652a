//! A subset of OpenQASM 2.0: one `qreg`, gates `x h s sdg z t tdg rz cx`.

use super::parse_angle;
use crate::circuit::{Angle, Circuit, Gate};
use crate::error::{Error, Result};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Splits the source into `;`-terminated statements with the line number
/// each one starts on. `//` comments are removed.
fn statements(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split("//").next().unwrap_or("");
        for ch in line.chars() {
            if cur.trim().is_empty() && !ch.is_whitespace() {
                start = idx + 1;
            }
            if ch == ';' {
                out.push((start, cur.trim().to_string()));
                cur.clear();
            } else {
                cur.push(ch);
            }
        }
        cur.push(' ');
    }
    if !cur.trim().is_empty() {
        out.push((start, cur.trim().to_string()));
    }
    out
}

pub fn parse_qasm2(text: &str) -> Result<Circuit> {
    let mut reg: Option<(String, usize)> = None;
    let mut gates = Vec::new();
    let stmts = statements(text);
    let last_line = text.lines().count().max(1);
    if let Some((ln, s)) = stmts.last() {
        if !text.trim_end().ends_with(';') && !s.is_empty() {
            return Err(err(*ln, format!("missing ';' after {s:?}")));
        }
    }
    for (ln, s) in stmts {
        if s.is_empty() {
            continue;
        }
        if s.starts_with("OPENQASM") {
            if s.split_whitespace().nth(1) != Some("2.0") {
                return Err(err(ln, "only OpenQASM 2.0 is supported"));
            }
            continue;
        }
        if s.starts_with("include") {
            continue;
        }
        if let Some(rest) = s.strip_prefix("qreg") {
            if reg.is_some() {
                return Err(err(ln, "multiple qreg declarations are not supported"));
            }
            let (name, size) = parse_ref(rest.trim(), ln)?;
            reg = Some((name.to_string(), size));
            continue;
        }
        if s.starts_with("creg") {
            continue;
        }
        let (name, params, args) = split_gate(&s, ln)?;
        match name {
            "ccx" => return Err(err(ln, "ccx is not supported; pre-decompose it into Clifford+T")),
            "measure" | "reset" | "barrier" | "if" => {
                return Err(err(
                    ln,
                    format!("{name} is not supported; only unitary Clifford+Rz programs are accepted"),
                ))
            }
            _ => {}
        }
        let Some((rname, size)) = &reg else {
            return Err(err(ln, "gate before qreg declaration"));
        };
        let qubits: Vec<usize> = args
            .split(',')
            .map(|a| {
                let (r, i) = parse_ref(a.trim(), ln)?;
                if r != rname {
                    return Err(err(ln, format!("unknown register {r:?}")));
                }
                if i >= *size {
                    return Err(err(ln, format!("index {i} out of range for {r}[{size}]")));
                }
                Ok(i)
            })
            .collect::<Result<_>>()?;
        let arity = |k: usize| -> Result<()> {
            if qubits.len() == k {
                Ok(())
            } else {
                Err(err(ln, format!("{name} takes {k} qubit(s), got {}", qubits.len())))
            }
        };
        if params.is_some() && matches!(name, "x" | "h" | "s" | "sdg" | "z" | "t" | "tdg" | "cx" | "CX") {
            return Err(err(ln, format!("{name} takes no parameters")));
        }
        match name {
            "x" | "h" | "s" | "sdg" | "z" | "t" | "tdg" | "rz" => {
                arity(1)?;
                let q = qubits[0];
                match name {
                    "x" => gates.push(Gate::X(q)),
                    "h" => gates.push(Gate::H(q)),
                    "s" => gates.push(Gate::S(q)),
                    "sdg" => gates.push(Gate::Sdg(q)),
                    "z" => gates.extend([Gate::S(q), Gate::S(q)]),
                    "t" => gates.push(Gate::Rz(q, Angle::t())),
                    "tdg" => gates.push(Gate::Rz(q, Angle::tdg())),
                    _ => {
                        let p = params.ok_or_else(|| err(ln, "rz needs an angle"))?;
                        gates.push(Gate::Rz(q, parse_angle(p).map_err(|m| err(ln, m))?));
                    }
                }
            }
            "cx" | "CX" => {
                arity(2)?;
                if qubits[0] == qubits[1] {
                    return Err(err(ln, "cx control equals target"));
                }
                gates.push(Gate::Cnot(qubits[0], qubits[1]));
            }
            _ => {
                return Err(err(
                    ln,
                    format!("unsupported gate {name:?}; pre-decompose it into x, h, s, sdg, t, tdg, rz, cx"),
                ))
            }
        }
    }
    let n = reg.map_or(0, |r| r.1);
    Circuit::from_gates(n, gates).map_err(|e| err(last_line, e.to_string()))
}

/// `name[idx]`.
fn parse_ref(s: &str, ln: usize) -> Result<(&str, usize)> {
    let open = s
        .find('[')
        .ok_or_else(|| err(ln, format!("expected reg[index], found {s:?}")))?;
    let close = s
        .rfind(']')
        .filter(|&c| c > open)
        .ok_or_else(|| err(ln, format!("unclosed index in {s:?}")))?;
    let idx = s[open + 1..close]
        .trim()
        .parse()
        .map_err(|_| err(ln, format!("bad index in {s:?}")))?;
    Ok((s[..open].trim(), idx))
}

/// `name(params) args` or `name args`.
fn split_gate(s: &str, ln: usize) -> Result<(&str, Option<&str>, &str)> {
    let name_end = s
        .find(|c: char| c.is_whitespace() || c == '(')
        .ok_or_else(|| err(ln, format!("malformed statement {s:?}")))?;
    let name = &s[..name_end];
    let rest = s[name_end..].trim_start();
    if let Some(r) = rest.strip_prefix('(') {
        let close = r.find(')').ok_or_else(|| err(ln, "unclosed parameter list"))?;
        Ok((name, Some(&r[..close]), r[close + 1..].trim()))
    } else {
        Ok((name, None, rest))
    }
}

pub fn emit_qasm2(c: &Circuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    out.push_str(&format!("qreg q[{}];\n", c.n_qubits));
    for g in &c.gates {
        let line = match *g {
            Gate::X(q) => format!("x q[{q}];"),
            Gate::H(q) => format!("h q[{q}];"),
            Gate::S(q) => format!("s q[{q}];"),
            Gate::Sdg(q) => format!("sdg q[{q}];"),
            Gate::Cnot(a, b) => format!("cx q[{a}],q[{b}];"),
            Gate::Rz(q, a) if a == Angle::t() => format!("t q[{q}];"),
            Gate::Rz(q, a) if a == Angle::tdg() => format!("tdg q[{q}];"),
            Gate::Rz(q, a) => format!("rz({a}) q[{q}];"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}
