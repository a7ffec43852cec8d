//! Circuit files and the Clifford-algebra backend.
//!
//! ```text
//! qubits 3
//! # comments run to the end of the line
//! h 1
//! cnot 1 2
//! phase 3 0.785398
//! u2 1 0 1 1 0
//! ```
//!
//! The first non-blank line is `qubits N`. Each later line is a gate name, its
//! 1-based wires, then parameters: one angle for `phase`, four complex entries
//! `a b c d` of `[[a, b], [c, d]]` for `u2`. Complex literals are `1.5`, `2i`,
//! `-i`, `0.5-0.25i`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gates::{apply, matrix2_unitarity_deviation, Gate, GateElement, Matrix2, UNITARY_TOL};
use crate::witt::{basis_state, state_to_amplitudes, SpinorState, WittContext, MAX_QUBITS};

#[derive(Clone, Debug, PartialEq)]
pub struct GateOp {
    pub gate: Gate,
    /// 1-based.
    pub wires: Vec<usize>,
}

impl GateOp {
    pub fn element(&self, ctx: &WittContext) -> Result<GateElement> {
        self.gate.element(ctx, &self.wires)
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.gate.name())?;
        for w in &self.wires {
            write!(f, " {w}")?;
        }
        match &self.gate {
            Gate::Phase(phi) => write!(f, " {phi}")?,
            Gate::U2(m) => {
                for z in m.iter().flatten() {
                    write!(f, " {}", complex_literal(*z))?;
                }
            }
            _ => {}
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n: usize,
    ops: Vec<GateOp>,
}

impl Circuit {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCountOutOfRange {
                got: n,
                max: MAX_QUBITS,
            });
        }
        Ok(Self { n, ops: Vec::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Appends a gate after checking arity, wire range and distinctness.
    pub fn push(&mut self, gate: Gate, wires: Vec<usize>) -> Result<()> {
        if wires.len() != gate.arity() {
            return Err(Error::Arity {
                gate: gate.name().to_string(),
                expected: gate.arity(),
                got: wires.len(),
            });
        }
        for &w in &wires {
            if w == 0 || w > self.n {
                return Err(Error::WireOutOfRange { wire: w, n: self.n });
            }
        }
        for (i, w) in wires.iter().enumerate() {
            if wires[i + 1..].contains(w) {
                return Err(Error::DuplicateWires(wires));
            }
        }
        if let Gate::U2(m) = &gate {
            let dev = matrix2_unitarity_deviation(m);
            if dev > UNITARY_TOL {
                return Err(Error::NonUnitary(dev));
            }
        }
        self.ops.push(GateOp { gate, wires });
        Ok(())
    }

    pub fn with(mut self, gate: Gate, wires: &[usize]) -> Result<Self> {
        self.push(gate, wires.to_vec())?;
        Ok(self)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n)?;
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}

/// Formats a complex number so that [`parse_complex`] reads it back exactly.
pub fn complex_literal(z: Complex64) -> String {
    if z.im == 0.0 && !z.im.is_sign_negative() {
        return format!("{}", z.re);
    }
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", z.re, z.im.abs())
}

/// Parses `1.5`, `-2i`, `i`, `0.5+0.25i`, `1e-3-2e-4i`.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let parse = |t: &str| -> Option<f64> {
        let v: f64 = t.parse().ok()?;
        v.is_finite().then_some(v)
    };
    let Some(body) = s.strip_suffix('i') else {
        return parse(s).map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let imag = |t: &str| -> Option<f64> {
        match t {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            _ => parse(t),
        }
    };
    match split {
        Some(p) => Some(Complex64::new(parse(&body[..p])?, imag(&body[p..])?)),
        None => Some(Complex64::new(0.0, imag(body)?)),
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in code.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &code[s..i],
                    column: code[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &code[s..],
            column: code[..s].chars().count() + 1,
        });
    }
    out
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let tokens = tokenize(raw);
        let Some(head) = tokens.first() else {
            continue;
        };
        let Some(c) = circuit.as_mut() else {
            circuit = Some(parse_header(line, &tokens)?);
            continue;
        };
        let name = head.text;
        let Some(arity) = Gate::arity_of(name) else {
            return Err(parse_err(line, head.column, format!("unknown gate `{name}`")));
        };
        let nparams = Gate::param_count(name);
        let args = &tokens[1..];
        if args.len() != arity + nparams {
            let column = args.get(arity + nparams).map_or(raw.chars().count() + 1, |t| t.column);
            let message = if nparams == 0 {
                format!("`{name}` takes {arity} wire(s), got {} argument(s)", args.len())
            } else {
                format!(
                    "`{name}` takes {arity} wire(s) and {nparams} parameter(s), got {} argument(s)",
                    args.len()
                )
            };
            return Err(parse_err(line, column, message));
        }
        let mut wires = Vec::with_capacity(arity);
        for t in &args[..arity] {
            let w: usize = t
                .text
                .parse()
                .map_err(|_| parse_err(line, t.column, format!("invalid wire `{}`", t.text)))?;
            if w == 0 || w > c.n() {
                return Err(parse_err(
                    line,
                    t.column,
                    format!("wire {w} out of range 1..={}", c.n()),
                ));
            }
            if wires.contains(&w) {
                return Err(parse_err(line, t.column, format!("wire {w} repeated")));
            }
            wires.push(w);
        }
        let params = &args[arity..];
        let gate = match name {
            "phase" => {
                let t = &params[0];
                let phi: f64 = t
                    .text
                    .parse()
                    .ok()
                    .filter(|v: &f64| v.is_finite())
                    .ok_or_else(|| parse_err(line, t.column, format!("invalid angle `{}`", t.text)))?;
                Gate::Phase(phi)
            }
            "u2" => {
                let mut z = [Complex64::new(0.0, 0.0); 4];
                for (slot, t) in z.iter_mut().zip(params) {
                    *slot = parse_complex(t.text).ok_or_else(|| {
                        parse_err(line, t.column, format!("invalid complex number `{}`", t.text))
                    })?;
                }
                let m: Matrix2 = [[z[0], z[1]], [z[2], z[3]]];
                let dev = matrix2_unitarity_deviation(&m);
                if dev > UNITARY_TOL {
                    return Err(parse_err(
                        line,
                        params[0].column,
                        format!("u2 matrix is not unitary (deviation {dev:.3e})"),
                    ));
                }
                Gate::U2(m)
            }
            _ => Gate::from_name(name).expect("registry name"),
        };
        c.push(gate, wires)
            .map_err(|e| parse_err(line, head.column, e.to_string()))?;
    }
    circuit.ok_or_else(|| parse_err(last_line.max(1), 1, "missing `qubits N` header"))
}

fn parse_header(line: usize, tokens: &[Token<'_>]) -> Result<Circuit> {
    let head = &tokens[0];
    if head.text != "qubits" {
        return Err(parse_err(line, head.column, "expected `qubits N` header"));
    }
    let Some(count) = tokens.get(1) else {
        return Err(parse_err(line, head.column + head.text.len(), "missing qubit count"));
    };
    if let Some(extra) = tokens.get(2) {
        return Err(parse_err(line, extra.column, "unexpected token after qubit count"));
    }
    let n: usize = count
        .text
        .parse()
        .map_err(|_| parse_err(line, count.column, format!("invalid qubit count `{}`", count.text)))?;
    Circuit::new(n).map_err(|e| parse_err(line, count.column, e.to_string()))
}

/// Parses an MSB-first bitstring such as `0110`.
pub fn parse_bitstring(s: &str, n: usize) -> Result<Vec<bool>> {
    let mut bits = Vec::with_capacity(s.len());
    for (i, ch) in s.chars().enumerate() {
        match ch {
            '0' => bits.push(false),
            '1' => bits.push(true),
            _ => {
                return Err(parse_err(1, i + 1, format!("invalid bit `{ch}`")));
            }
        }
    }
    if bits.len() != n {
        return Err(Error::BitCount {
            expected: n,
            got: bits.len(),
        });
    }
    Ok(bits)
}

/// Product of all gate elements, last gate leftmost.
pub fn circuit_element(ctx: &WittContext, circuit: &Circuit) -> Result<GateElement> {
    check_ctx(ctx, circuit)?;
    let mut acc = GateElement::identity(ctx);
    for op in circuit.ops() {
        acc = acc.then(&op.element(ctx)?)?;
    }
    Ok(acc)
}

fn check_ctx(ctx: &WittContext, circuit: &Circuit) -> Result<()> {
    if ctx.n() != circuit.n() {
        return Err(Error::QubitMismatch {
            left: ctx.n(),
            right: circuit.n(),
        });
    }
    Ok(())
}

/// Runs the circuit on `|init⟩` by left multiplication in the algebra.
pub fn run_clifford(ctx: &WittContext, circuit: &Circuit, init: &[bool]) -> Result<SpinorState> {
    check_ctx(ctx, circuit)?;
    let mut state = basis_state(ctx, init)?;
    for op in circuit.ops() {
        state = apply(&op.element(ctx)?, &state)?;
    }
    Ok(state)
}

pub fn clifford_amplitudes(circuit: &Circuit, init: &[bool]) -> Result<Vec<Complex64>> {
    let ctx = WittContext::new(circuit.n())?;
    let state = run_clifford(&ctx, circuit, init)?;
    state_to_amplitudes(&ctx, &state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn bell_circuit() {
        let c = parse_circuit("qubits 2\nh 1\ncnot 1 2").unwrap();
        assert_eq!(c.n(), 2);
        assert_eq!(c.ops()[0].gate, Gate::H);
        assert_eq!(c.ops()[1].wires, vec![1, 2]);
        let amps = clifford_amplitudes(&c, &[false, false]).unwrap();
        let expected = [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2];
        for (a, e) in amps.iter().zip(expected) {
            assert!((a - Complex64::new(e, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn phase_parameter() {
        let c = parse_circuit("qubits 1\nphase 1 0.25").unwrap();
        assert_eq!(c.ops()[0].gate, Gate::Phase(0.25));
    }

    #[test]
    fn wire_out_of_range() {
        let err = parse_circuit("qubits 2\ncnot 1 3").unwrap_err();
        let Error::Parse { line, column, message } = err else {
            panic!("expected a parse error");
        };
        assert_eq!((line, column), (2, 8));
        assert!(message.contains("out of range"), "{message}");
    }

    #[test]
    fn diagnostics() {
        let cases = [
            ("", 1, 1),
            ("h 1", 1, 1),
            ("qubits", 1, 7),
            ("qubits two", 1, 8),
            ("qubits 0", 1, 8),
            ("qubits 2\n  foo 1", 2, 3),
            ("qubits 2\nh 1 2", 2, 5),
            ("qubits 2\ncnot 1", 2, 7),
            ("qubits 2\ncnot 1 1", 2, 8),
            ("qubits 2\nh x", 2, 3),
            ("qubits 1\nphase 1 abc", 2, 9),
            ("qubits 1\nphase 1 nan", 2, 9),
            ("qubits 1\nu2 1 1 1 0 1", 2, 6),
            ("qubits 1\nu2 1 1 0 0 1j", 2, 12),
        ];
        for (text, line, column) in cases {
            match parse_circuit(text) {
                Err(Error::Parse { line: l, column: c, .. }) => {
                    assert_eq!((l, c), (line, column), "{text:?}")
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header comment\n\nqubits 3 # three\n\nx 2  # flip\n   \nccnot 1 2 3\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(c.n(), 3);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn complex_literals() {
        let cases = [
            ("1", Complex64::new(1.0, 0.0)),
            ("-0.5", Complex64::new(-0.5, 0.0)),
            ("i", Complex64::new(0.0, 1.0)),
            ("-i", Complex64::new(0.0, -1.0)),
            ("2i", Complex64::new(0.0, 2.0)),
            ("0.5+0.25i", Complex64::new(0.5, 0.25)),
            ("0.5-i", Complex64::new(0.5, -1.0)),
            ("1e-3-2e-4i", Complex64::new(1e-3, -2e-4)),
            ("-1E+2+3i", Complex64::new(-100.0, 3.0)),
        ];
        for (s, z) in cases {
            assert_eq!(parse_complex(s), Some(z), "{s}");
            assert_eq!(parse_complex(&complex_literal(z)), Some(z), "{s}");
        }
        for bad in ["", "x", "1+", "ii", "1j", "inf"] {
            assert_eq!(parse_complex(bad), None, "{bad}");
        }
    }

    #[test]
    fn render_roundtrip() {
        let h = FRAC_1_SQRT_2;
        let u = [
            [Complex64::new(h, 0.0), Complex64::new(0.0, h)],
            [Complex64::new(0.0, h), Complex64::new(h, 0.0)],
        ];
        let c = Circuit::new(3)
            .unwrap()
            .with(Gate::H, &[1])
            .unwrap()
            .with(Gate::Phase(-0.1), &[2])
            .unwrap()
            .with(Gate::U2(u), &[3])
            .unwrap()
            .with(Gate::Cswap, &[3, 1, 2])
            .unwrap();
        let text = c.to_string();
        assert_eq!(parse_circuit(&text).unwrap(), c);
    }

    #[test]
    fn push_validation() {
        let mut c = Circuit::new(2).unwrap();
        assert!(matches!(c.push(Gate::Cnot, vec![1]), Err(Error::Arity { .. })));
        assert!(matches!(c.push(Gate::X, vec![3]), Err(Error::WireOutOfRange { .. })));
        assert!(matches!(c.push(Gate::Swap, vec![2, 2]), Err(Error::DuplicateWires(_))));
        let bad = [[Complex64::new(2.0, 0.0); 2]; 2];
        assert!(matches!(c.push(Gate::U2(bad), vec![1]), Err(Error::NonUnitary(_))));
        assert!(Circuit::new(0).is_err());
        assert!(Circuit::new(MAX_QUBITS + 1).is_err());
    }

    #[test]
    fn bitstrings() {
        assert_eq!(parse_bitstring("101", 3).unwrap(), vec![true, false, true]);
        assert!(matches!(parse_bitstring("10", 3), Err(Error::BitCount { .. })));
        assert!(matches!(parse_bitstring("1a1", 3), Err(Error::Parse { column: 2, .. })));
    }

    #[test]
    fn circuit_element_matches_run() {
        let c = parse_circuit("qubits 2\nh 1\ncnot 1 2\ns 2").unwrap();
        let ctx = WittContext::new(2).unwrap();
        let g = circuit_element(&ctx, &c).unwrap();
        let init = basis_state(&ctx, &[false, true]).unwrap();
        let direct = apply(&g, &init).unwrap();
        let stepwise = run_clifford(&ctx, &c, &[false, true]).unwrap();
        assert!(direct.value().approx_eq(stepwise.value(), 1e-13));
        let other = WittContext::new(3).unwrap();
        assert!(matches!(run_clifford(&other, &c, &[false; 3]), Err(Error::QubitMismatch { .. })));
    }
}
