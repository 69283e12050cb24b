//! Plain-text Pauli-sum files.
//!
//! ```text
//! # two-site transverse model
//! qubits 2          # optional; otherwise 1 + largest index
//! 0.5 X 0 X 1
//! -1.0 Z 0
//! 0.25              # identity term
//! ```
//!
//! Qubit indices are 0-based and little-endian. Written coefficients carry
//! 17 significant digits, so a write/parse round trip is exact.

use std::fmt::Write as _;
use std::path::Path;

use super::{Pauli, PauliSum, PauliTerm};
use crate::error::{Error, Result};

pub fn parse_pauli_str(text: &str) -> Result<PauliSum> {
    let mut header: Option<(usize, usize)> = None;
    let mut terms = Vec::new();
    let mut max_q: Option<(usize, usize)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "qubits" {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate 'qubits' line"));
            }
            let [_, count] = fields.as_slice() else {
                return Err(Error::parse(line_no, "expected 'qubits <count>'"));
            };
            let count = count
                .parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("bad qubit count {count:?}")))?;
            header = Some((count, line_no));
            continue;
        }

        let coef: f64 = fields[0].parse().map_err(|_| {
            Error::parse(line_no, format!("non-numeric coefficient {:?}", fields[0]))
        })?;
        if !coef.is_finite() {
            return Err(Error::parse(line_no, "coefficient must be finite"));
        }
        let rest = &fields[1..];
        if !rest.len().is_multiple_of(2) {
            return Err(Error::parse(line_no, "expected 'coef P q [P q]...'"));
        }
        let mut ops = Vec::with_capacity(rest.len() / 2);
        for pair in rest.chunks(2) {
            let q = pair[1]
                .parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("bad qubit index {:?}", pair[1])))?;
            let p = match pair[0] {
                "I" | "i" => None,
                s if s.len() == 1 => Some(
                    Pauli::from_char(s.chars().next().unwrap())
                        .ok_or_else(|| Error::parse(line_no, format!("unknown Pauli {s:?}")))?,
                ),
                s => return Err(Error::parse(line_no, format!("unknown Pauli {s:?}"))),
            };
            max_q = max_q.max(Some((q, line_no)));
            if let Some(p) = p {
                ops.push((q, p));
            }
        }
        let term = PauliTerm::new(coef, ops).map_err(|e| Error::parse(line_no, e.to_string()))?;
        terms.push(term);
    }

    let n = match (header, max_q) {
        (Some((n, _)), Some((q, line_no))) if q >= n => {
            return Err(Error::parse(
                line_no,
                format!("qubit {q} outside a {n}-qubit register"),
            ))
        }
        (Some((n, _)), _) => n,
        (None, q) => q.map_or(0, |(q, _)| q + 1),
    };
    PauliSum::new(n, terms)
}

pub fn parse_pauli_file(path: impl AsRef<Path>) -> Result<PauliSum> {
    parse_pauli_str(&std::fs::read_to_string(path)?)
}

pub fn format_pauli_file(h: &PauliSum) -> String {
    let mut out = format!("qubits {}\n", h.n_qubits());
    for t in h.terms() {
        write!(out, "{:.16e}", t.coefficient).unwrap();
        for (q, p) in t.ops() {
            write!(out, " {p} {q}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_pauli_file(h: &PauliSum, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_pauli_file(h))?;
    Ok(())
}
