//! The `.qc` format used by reversible-logic benchmark suites.
//!
//! ```text
//! .v a b c
//! .i a b
//! .o c
//! BEGIN
//! H c
//! tof a c
//! T* c
//! Rz(3*pi/8) b
//! END
//! ```
//!
//! Gates: `H`, `S`, `S*`, `T`, `T*`, `X`, `Z`, `Rz(<angle>)` on one wire;
//! `tof`/`cnot` with one wire (NOT) or two wires (control, target).
//! Toffoli gates with two or more controls must be decomposed beforehand.

use std::collections::HashMap;

use super::parse_angle;
use crate::circuit::{Angle, Circuit, Gate};
use crate::error::{Error, Result};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_qc(text: &str) -> Result<Circuit> {
    let mut wires: HashMap<String, usize> = HashMap::new();
    let mut declared = false;
    let mut in_body = false;
    let mut ended = false;
    let mut gates = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if ended {
            return Err(err(ln, "content after END"));
        }
        if !in_body {
            if let Some(rest) = line.strip_prefix('.') {
                let mut it = rest.split_whitespace();
                let key = it.next().unwrap_or("");
                let ids: Vec<&str> = it.flat_map(|t| t.split(',')).filter(|t| !t.is_empty()).collect();
                match key {
                    "v" => {
                        if declared {
                            return Err(err(ln, "duplicate .v header"));
                        }
                        declared = true;
                        for id in ids {
                            let next = wires.len();
                            if wires.insert(id.to_string(), next).is_some() {
                                return Err(err(ln, format!("wire {id:?} declared twice")));
                            }
                        }
                    }
                    "i" | "o" | "c" | "ol" => {
                        for id in ids {
                            if !wires.contains_key(id) && key != "c" {
                                return Err(err(ln, format!("undeclared wire {id:?} in .{key}")));
                            }
                        }
                    }
                    _ => return Err(err(ln, format!("unknown header .{key}"))),
                }
                continue;
            }
            if line == "BEGIN" {
                if !declared {
                    return Err(err(ln, "BEGIN before .v header"));
                }
                in_body = true;
                continue;
            }
            return Err(err(ln, format!("expected header or BEGIN, found {line:?}")));
        }
        if line == "END" {
            ended = true;
            continue;
        }
        parse_gate_line(line, ln, &wires, &mut gates)?;
    }
    if !declared {
        return Err(err(1, "missing .v header"));
    }
    if !in_body || !ended {
        return Err(err(text.lines().count().max(1), "missing BEGIN/END block"));
    }
    Circuit::from_gates(wires.len(), gates).map_err(|e| err(0, e.to_string()))
}

fn parse_gate_line(line: &str, ln: usize, wires: &HashMap<String, usize>, gates: &mut Vec<Gate>) -> Result<()> {
    let (name, args) = if let Some(rest) = line.strip_prefix("Rz(").or_else(|| line.strip_prefix("rz(")) {
        let close = rest.rfind(')').ok_or_else(|| err(ln, "unclosed Rz("))?;
        (&line[..close + 4], &rest[close + 1..])
    } else {
        line.split_once(char::is_whitespace).unwrap_or((line, ""))
    };
    let args: Vec<usize> = args
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|id| {
            wires
                .get(id)
                .copied()
                .ok_or_else(|| err(ln, format!("undeclared wire {id:?}")))
        })
        .collect::<Result<_>>()?;
    let one = |g: &dyn Fn(usize) -> Gate| -> Result<Gate> {
        match args.as_slice() {
            [q] => Ok(g(*q)),
            _ => Err(err(ln, format!("{name} takes one wire, got {}", args.len()))),
        }
    };
    match name {
        "H" => gates.push(one(&Gate::H)?),
        "S" => gates.push(one(&Gate::S)?),
        "S*" => gates.push(one(&Gate::Sdg)?),
        "X" => gates.push(one(&Gate::X)?),
        "Z" => {
            let g = one(&Gate::S)?;
            gates.extend([g, g]);
        }
        "T" => gates.push(one(&|q| Gate::Rz(q, Angle::t()))?),
        "T*" => gates.push(one(&|q| Gate::Rz(q, Angle::tdg()))?),
        _ if name.starts_with("Rz(") || name.starts_with("rz(") => {
            let a = parse_angle(&name[3..name.len() - 1]).map_err(|m| err(ln, m))?;
            gates.push(one(&|q| Gate::Rz(q, a))?);
        }
        _ if name.eq_ignore_ascii_case("tof") || name.eq_ignore_ascii_case("cnot") => match args.as_slice() {
            [t] => gates.push(Gate::X(*t)),
            [c, t] if c == t => return Err(err(ln, "control equals target")),
            [c, t] => gates.push(Gate::Cnot(*c, *t)),
            [] => return Err(err(ln, format!("{name} needs wires"))),
            _ => {
                return Err(err(
                    ln,
                    format!(
                        "{name} with {} controls is not supported; pre-decompose it into Clifford+T",
                        args.len() - 1
                    ),
                ))
            }
        },
        _ => return Err(err(ln, format!("unknown gate {name:?}"))),
    }
    Ok(())
}

pub fn emit_qc(c: &Circuit) -> String {
    let names: Vec<String> = (0..c.n_qubits).map(|q| format!("q{q}")).collect();
    let all = names.join(" ");
    let mut out = format!(".v {all}\n.i {all}\n.o {all}\n\nBEGIN\n");
    for g in &c.gates {
        let line = match *g {
            Gate::H(q) => format!("H {}", names[q]),
            Gate::S(q) => format!("S {}", names[q]),
            Gate::Sdg(q) => format!("S* {}", names[q]),
            Gate::X(q) => format!("X {}", names[q]),
            Gate::Cnot(a, b) => format!("tof {} {}", names[a], names[b]),
            Gate::Rz(q, a) if a == Angle::t() => format!("T {}", names[q]),
            Gate::Rz(q, a) if a == Angle::tdg() => format!("T* {}", names[q]),
            Gate::Rz(q, a) => format!("Rz({a}) {}", names[q]),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("END\n");
    out
}
