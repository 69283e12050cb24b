use serde::{Deserialize, Serialize};

use super::{decompose, Circuit, GateKind};

/// CNOT equivalents booked for the triple-controlled RY inside a decomposed
/// DE. With the six explicit CNOTs around it a DE totals 13.
pub const C3RY_CNOT_COST: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Metrics {
    /// Two-qubit gate count of the decomposed circuit (CNOT and CZ count
    /// one each, the DE core counts [`C3RY_CNOT_COST`]).
    pub cnot_count: usize,
    /// Depth of the decomposed circuit, counting every gate as one time step.
    pub depth: usize,
    pub n_params: usize,
}

/// Resource counts on the native-gate form of `c`.
///
/// Depth is an ASAP schedule: each gate starts one step after the latest
/// gate on any of its operands.
pub fn metrics(c: &Circuit) -> Metrics {
    let d = decompose(c);
    let mut frontier = vec![0usize; d.n_qubits];
    let mut cnot_count = 0;
    for g in &d.gates {
        cnot_count += match g.kind {
            GateKind::Cnot | GateKind::Cz => 1,
            GateKind::C3ry => C3RY_CNOT_COST,
            _ => 0,
        };
        let level = g.qubits.iter().map(|&q| frontier[q]).max().unwrap_or(0) + 1;
        for &q in &g.qubits {
            frontier[q] = level;
        }
    }
    Metrics {
        cnot_count,
        depth: frontier.into_iter().max().unwrap_or(0),
        n_params: c.n_params,
    }
}
