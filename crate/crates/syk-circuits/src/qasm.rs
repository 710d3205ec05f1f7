//! OpenQASM 2.0 emission and parsing for the supported gate set.
//!
//! Emission is deterministic and parse-back exact: angles are printed as
//! plain decimals with 18 significant digits, which round-trips every finite
//! f64. The parser accepts only the dialect this crate emits (one quantum
//! register, gates from {h, s, sdg, x, z, t, tdg, cx, cz, rz}) and rejects
//! anything else with a line-numbered error; it never panics on arbitrary
//! input.

use std::fmt::Write as _;

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate};

#[derive(Debug, Error, PartialEq)]
pub enum QasmError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown gate `{name}`")]
    UnknownGate { line: usize, name: String },
    #[error("line {line}: {0}", line = .1)]
    Invalid(CircuitError, usize),
}

fn syntax(line: usize, message: impl Into<String>) -> QasmError {
    QasmError::Syntax {
        line,
        message: message.into(),
    }
}

/// Formats a finite real as a plain decimal that parses back bit-exactly.
///
/// 18 significant digits cover the 17 needed for f64 round-tripping plus one
/// guard digit for the exponent estimate.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0".into() } else { "0.0".into() };
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (17 - exp).max(1) as usize;
    format!("{x:.decimals$}")
}

/// Emits OpenQASM 2.0 text: header, one register `q`, gates in order.
pub fn emit_qasm(circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.n_qubits());
    if circuit.global_phase() != 0.0 {
        // QASM 2.0 has no phase statement; recorded as a structured comment
        // so parse-back reproduces the circuit exactly.
        let _ = writeln!(out, "// global-phase {}", format_real(circuit.global_phase()));
    }
    for gate in circuit.gates() {
        match *gate {
            Gate::H(q) => {
                let _ = writeln!(out, "h q[{q}];");
            }
            Gate::S(q) => {
                let _ = writeln!(out, "s q[{q}];");
            }
            Gate::Sdg(q) => {
                let _ = writeln!(out, "sdg q[{q}];");
            }
            Gate::X(q) => {
                let _ = writeln!(out, "x q[{q}];");
            }
            Gate::Z(q) => {
                let _ = writeln!(out, "z q[{q}];");
            }
            Gate::T(q) => {
                let _ = writeln!(out, "t q[{q}];");
            }
            Gate::Tdg(q) => {
                let _ = writeln!(out, "tdg q[{q}];");
            }
            Gate::Cnot(c, t) => {
                let _ = writeln!(out, "cx q[{c}],q[{t}];");
            }
            Gate::Cz(a, b) => {
                let _ = writeln!(out, "cz q[{a}],q[{b}];");
            }
            Gate::Rz(q, angle) => {
                let _ = writeln!(out, "rz({}) q[{q}];", format_real(angle));
            }
        }
    }
    out
}

struct Statement {
    line: usize,
    tokens: Vec<String>,
}

/// Splits source into `;`-terminated statements of primitive tokens.
/// Comments run to end of line; `// global-phase <x>` is captured separately.
fn tokenize(src: &str) -> Result<(Vec<Statement>, Option<(usize, String)>), QasmError> {
    let mut statements = Vec::new();
    let mut current: Vec<String> = Vec::new();
    let mut current_line = 1;
    let mut global_phase: Option<(usize, String)> = None;
    let mut chars = src.chars().peekable();
    let mut line = 1;

    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '/' => {
                chars.next();
                if chars.peek() == Some(&'/') {
                    chars.next();
                    let mut comment = String::new();
                    while let Some(&c) = chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        comment.push(c);
                        chars.next();
                    }
                    let comment = comment.trim();
                    if let Some(rest) = comment.strip_prefix("global-phase") {
                        if global_phase.is_some() {
                            return Err(syntax(line, "duplicate global-phase comment"));
                        }
                        global_phase = Some((line, rest.trim().to_owned()));
                    }
                } else {
                    return Err(syntax(line, "stray `/`"));
                }
            }
            '"' => {
                chars.next();
                let mut s = String::from("\"");
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\n') | None => return Err(syntax(line, "unterminated string")),
                        Some(c) => s.push(c),
                    }
                }
                s.push('"');
                if current.is_empty() {
                    current_line = line;
                }
                current.push(s);
            }
            ';' => {
                chars.next();
                if current.is_empty() {
                    return Err(syntax(line, "empty statement"));
                }
                statements.push(Statement {
                    line: current_line,
                    tokens: std::mem::take(&mut current),
                });
            }
            '(' | ')' | '[' | ']' | ',' => {
                chars.next();
                if current.is_empty() {
                    current_line = line;
                }
                current.push(c.to_string());
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut id = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        id.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if current.is_empty() {
                    current_line = line;
                }
                current.push(id);
            }
            c if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' => {
                let mut num = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '-' | '+') {
                        // `-`/`+` only valid leading or right after an exponent marker.
                        if matches!(c, '-' | '+')
                            && !num.is_empty()
                            && !num.ends_with('e')
                            && !num.ends_with('E')
                        {
                            break;
                        }
                        num.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if current.is_empty() {
                    current_line = line;
                }
                current.push(num);
            }
            other => return Err(syntax(line, format!("unexpected character `{other}`"))),
        }
    }
    if !current.is_empty() {
        return Err(syntax(current_line, "missing trailing `;`"));
    }
    Ok((statements, global_phase))
}

fn parse_index(tok: &str, line: usize) -> Result<usize, QasmError> {
    tok.parse::<usize>()
        .map_err(|_| syntax(line, format!("expected qubit index, got `{tok}`")))
}

fn parse_real(tok: &str, line: usize) -> Result<f64, QasmError> {
    let v: f64 = tok
        .parse()
        .map_err(|_| syntax(line, format!("expected real number, got `{tok}`")))?;
    if !v.is_finite() {
        return Err(syntax(line, format!("non-finite number `{tok}`")));
    }
    Ok(v)
}

/// Expects `<reg> [ <idx> ]` starting at `tokens[at]`; returns (idx, next).
fn parse_operand(
    tokens: &[String],
    at: usize,
    reg: &str,
    line: usize,
) -> Result<(usize, usize), QasmError> {
    if tokens.len() < at + 4 {
        return Err(syntax(line, "truncated operand"));
    }
    if tokens[at] != reg {
        return Err(syntax(
            line,
            format!("unknown register `{}` (declared `{reg}`)", tokens[at]),
        ));
    }
    if tokens[at + 1] != "[" || tokens[at + 3] != "]" {
        return Err(syntax(line, "malformed operand, expected reg[index]"));
    }
    let idx = parse_index(&tokens[at + 2], line)?;
    Ok((idx, at + 4))
}

/// Parses the dialect produced by [`emit_qasm`] back into a [`Circuit`].
pub fn parse_qasm(src: &str) -> Result<Circuit, QasmError> {
    let (statements, global_phase) = tokenize(src)?;
    let mut stmts = statements.into_iter();

    let header = stmts.next().ok_or_else(|| syntax(1, "empty program"))?;
    if header.tokens != ["OPENQASM", "2.0"] {
        return Err(syntax(header.line, "expected `OPENQASM 2.0;` header"));
    }

    let mut next = stmts.next();
    if let Some(stmt) = &next {
        if stmt.tokens.first().map(String::as_str) == Some("include") {
            if stmt.tokens != ["include", "\"qelib1.inc\""] {
                return Err(syntax(stmt.line, "only `include \"qelib1.inc\";` is supported"));
            }
            next = stmts.next();
        }
    }

    let qreg = next.ok_or_else(|| syntax(1, "missing qreg declaration"))?;
    if qreg.tokens.len() != 5
        || qreg.tokens[0] != "qreg"
        || qreg.tokens[2] != "["
        || qreg.tokens[4] != "]"
    {
        return Err(syntax(qreg.line, "expected `qreg <name>[<size>];`"));
    }
    let reg_name = qreg.tokens[1].clone();
    let n_qubits = parse_index(&qreg.tokens[3], qreg.line)?;
    if n_qubits == 0 {
        return Err(syntax(qreg.line, "register must hold at least one qubit"));
    }
    let mut circuit = Circuit::new(n_qubits);
    if let Some((line, text)) = global_phase {
        circuit.add_global_phase(parse_real(&text, line)?);
    }

    for stmt in stmts {
        let line = stmt.line;
        let toks = &stmt.tokens;
        let name = toks[0].as_str();
        let push = |circuit: &mut Circuit, gate: Gate| {
            circuit.push(gate).map_err(|e| QasmError::Invalid(e, line))
        };
        match name {
            "qreg" => return Err(syntax(line, "only one qreg is supported")),
            "h" | "s" | "sdg" | "x" | "z" | "t" | "tdg" => {
                let (q, end) = parse_operand(toks, 1, &reg_name, line)?;
                if end != toks.len() {
                    return Err(syntax(line, "trailing tokens after operand"));
                }
                let gate = match name {
                    "h" => Gate::H(q),
                    "s" => Gate::S(q),
                    "sdg" => Gate::Sdg(q),
                    "x" => Gate::X(q),
                    "z" => Gate::Z(q),
                    "t" => Gate::T(q),
                    _ => Gate::Tdg(q),
                };
                push(&mut circuit, gate)?;
            }
            "cx" | "cz" => {
                let (a, at) = parse_operand(toks, 1, &reg_name, line)?;
                if toks.get(at).map(String::as_str) != Some(",") {
                    return Err(syntax(line, "expected `,` between operands"));
                }
                let (b, end) = parse_operand(toks, at + 1, &reg_name, line)?;
                if end != toks.len() {
                    return Err(syntax(line, "trailing tokens after operands"));
                }
                let gate = if name == "cx" { Gate::Cnot(a, b) } else { Gate::Cz(a, b) };
                push(&mut circuit, gate)?;
            }
            "rz" => {
                if toks.len() < 4 || toks[1] != "(" || toks[3] != ")" {
                    return Err(syntax(line, "expected `rz(<angle>) <operand>;`"));
                }
                let angle = parse_real(&toks[2], line)?;
                let (q, end) = parse_operand(toks, 4, &reg_name, line)?;
                if end != toks.len() {
                    return Err(syntax(line, "trailing tokens after operand"));
                }
                push(&mut circuit, Gate::Rz(q, angle))?;
            }
            other => {
                return Err(QasmError::UnknownGate {
                    line,
                    name: other.to_owned(),
                })
            }
        }
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_circuit_emits_header_only() {
        let c = Circuit::new(2);
        assert_eq!(
            emit_qasm(&c),
            "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\n"
        );
    }

    #[test]
    fn two_gate_example() {
        let mut c = Circuit::new(2);
        c.push(Gate::H(0)).unwrap();
        c.push(Gate::Cnot(0, 1)).unwrap();
        let text = emit_qasm(&c);
        assert!(text.ends_with("h q[0];\ncx q[0],q[1];\n"));
        assert_eq!(parse_qasm(&text).unwrap(), c);
    }

    #[test]
    fn round_trip_all_gate_kinds() {
        let mut c = Circuit::new(3);
        for g in [
            Gate::H(0),
            Gate::S(1),
            Gate::Sdg(2),
            Gate::X(0),
            Gate::Z(1),
            Gate::T(2),
            Gate::Tdg(0),
            Gate::Cnot(0, 2),
            Gate::Cz(2, 1),
            Gate::Rz(1, std::f64::consts::FRAC_PI_4),
            Gate::Rz(2, -1.2345678901234567e-3),
            Gate::Rz(0, 1e-300),
        ] {
            c.push(g).unwrap();
        }
        c.add_global_phase(-0.375);
        assert_eq!(parse_qasm(&emit_qasm(&c)).unwrap(), c);
    }

    #[test]
    fn format_real_round_trips() {
        for x in [
            0.0,
            -0.0,
            1.0,
            -1.0,
            std::f64::consts::PI,
            1e17,
            999.99999999999999,
            1.0000000000000002,
            -2.2250738585072014e-308,
            7.29e9,
        ] {
            let s = format_real(x);
            assert!(!s.contains('e'), "plain decimal required: {s}");
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x} -> {s} -> {back}");
        }
    }

    #[test]
    fn rejects_malformed_input() {
        // Wrong header.
        assert!(parse_qasm("OPENQASM 3.0;\nqreg q[1];\n").is_err());
        // Unknown gate.
        assert!(parse_qasm("OPENQASM 2.0;\nqreg q[1];\ncy q[0];\n").is_err());
        // Out-of-range operand.
        let e = parse_qasm("OPENQASM 2.0;\nqreg q[1];\nh q[3];\n");
        assert!(matches!(e, Err(QasmError::Invalid(_, 3))));
        // Repeated two-qubit operand.
        assert!(parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[0];\n").is_err());
        // Missing semicolon.
        assert!(parse_qasm("OPENQASM 2.0;\nqreg q[1];\nh q[0]\n").is_err());
        // Zero-width register.
        assert!(parse_qasm("OPENQASM 2.0;\nqreg q[0];\n").is_err());
        // Garbage.
        assert!(parse_qasm("!!!").is_err());
        assert!(parse_qasm("").is_err());
    }

    #[test]
    fn comments_are_ignored() {
        let src = "OPENQASM 2.0;\n// a comment\nqreg q[1];\nh q[0]; // trailing\n";
        let c = parse_qasm(src).unwrap();
        assert_eq!(c.gates(), &[Gate::H(0)]);
        assert_eq!(c.global_phase(), 0.0);
    }
}
