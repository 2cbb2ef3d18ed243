//! Line-oriented circuit text: a `QUBITS n` header, then one gate per line
//! (`H q`, `CX c t`, `CCX c1 c2 t`, `CZ c t`).

use std::fmt::Write;

use ghz_erasure_core::codec::{self, CodeLayout, ErasureFlags};
use ghz_erasure_core::{Gate, GateSequence};
use thiserror::Error;

use crate::config::Operator;
use crate::error::HarnessError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircuitError {
    #[error("gate {index} ({gate}) has no text form")]
    Unsupported { index: usize, gate: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub fn to_text(seq: &GateSequence, n_qubits: usize) -> Result<String, CircuitError> {
    let mut out = format!("QUBITS {n_qubits}\n");
    for (index, g) in seq.iter().enumerate() {
        if matches!(g, Gate::U1q { .. } | Gate::U2q { .. }) {
            return Err(CircuitError::Unsupported { index, gate: g.to_string() });
        }
        writeln!(out, "{g}").expect("writing to a String");
    }
    Ok(out)
}

/// Inverse of [`to_text`]. Blank lines and `#` comments are skipped.
pub fn parse(text: &str) -> Result<(usize, GateSequence), CircuitError> {
    let mut n_qubits = None;
    let mut seq = GateSequence::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: &str| CircuitError::Parse { line, msg: msg.to_owned() };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let op = words.next().unwrap_or_default();
        let args: Vec<usize> = words
            .map(|w| w.parse().map_err(|_| err(&format!("bad qubit index `{w}`"))))
            .collect::<Result<_, _>>()?;
        let Some(n) = n_qubits else {
            if op != "QUBITS" || args.len() != 1 {
                return Err(err("expected `QUBITS n` header"));
            }
            n_qubits = Some(args[0]);
            continue;
        };
        let gate = match (op, args.as_slice()) {
            ("H", &[q]) => Gate::h(q),
            ("CX", &[c, t]) => Gate::cnot(c, t),
            ("CCX", &[a, b, t]) => Gate::toffoli(a, b, t),
            ("CZ", &[c, t]) => Gate::cz(c, t),
            _ => return Err(err(&format!("unrecognized gate `{content}`"))),
        };
        gate.validate(n).map_err(|e| err(&e.to_string()))?;
        seq.push(gate);
    }
    let n = n_qubits.ok_or(CircuitError::Parse { line: 0, msg: "empty circuit".into() })?;
    Ok((n, seq))
}

/// The gate sequence for `op` and the qubit count it acts on. `dec`, `rec`
/// and `restore` include the restore block; `rec` needs exactly one flag.
pub fn operator(
    layout: &CodeLayout,
    op: Operator,
    flags: &ErasureFlags,
) -> Result<(GateSequence, usize), HarnessError> {
    let code = layout.code_qubits();
    let wide = layout.qubits_with_restore_block();
    Ok(match op {
        Operator::Red => (codec::build_u_red(layout), code),
        Operator::Had => (codec::build_hadamard_layer(layout), code),
        Operator::Ghz => (codec::build_u_ghz(layout), code),
        Operator::Enc => (codec::build_u_enc(layout), code),
        Operator::Dec => (codec::build_u_dec(layout, flags), wide),
        Operator::Rec => match flags.entries() {
            [e] => (codec::build_u_rec(layout, e.position, e.block)?, wide),
            _ => return Err(HarnessError::Usage("rec needs exactly one flagged erasure".into())),
        },
        Operator::Restore => (codec::build_restore(layout, flags)?, wide),
    })
}
