//! Gate-level circuit representation.
//!
//! Qubit indices are 0-based; basis states are little-endian (qubit 0 is the
//! least significant bit), matching [`crate::sim`] and the Pauli file format.
//!
//! Four-qubit excitation gates act on two molecular orbitals in the operand
//! order `(a_alpha, a_beta, b_alpha, b_beta)`.

mod ansatz;
mod color;
mod decompose;
mod metrics;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ansatz::{build_cry_hea, build_excitation_ansatz, embed_swap_network, Flavor};
pub use color::edge_color;
pub use decompose::{decompose, decompose_gate};
pub use metrics::{metrics, Metrics, C3RY_CNOT_COST};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    Ry,
    H,
    X,
    Cnot,
    Cz,
    /// Controlled RY, operands `[control, target]`.
    Cry,
    Swap,
    /// Fermionic swap: SWAP followed by CZ.
    Fswap,
    /// Exchanges two molecular orbitals (two qubits each) with fermionic sign.
    Oswap,
    /// Approximate paired single excitation.
    Se,
    /// Approximate paired double excitation.
    De,
    /// RY on the last operand, controlled on the first three.
    C3ry,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Ry | GateKind::H | GateKind::X => 1,
            GateKind::Cnot | GateKind::Cz | GateKind::Cry | GateKind::Swap | GateKind::Fswap => 2,
            GateKind::Oswap | GateKind::Se | GateKind::De | GateKind::C3ry => 4,
        }
    }

    pub fn is_parametrized(self) -> bool {
        matches!(
            self,
            GateKind::Ry | GateKind::Cry | GateKind::Se | GateKind::De | GateKind::C3ry
        )
    }

    /// Kinds left after [`decompose`].
    pub fn is_native(self) -> bool {
        matches!(
            self,
            GateKind::Ry
                | GateKind::H
                | GateKind::X
                | GateKind::Cnot
                | GateKind::Cz
                | GateKind::C3ry
        )
    }

    pub const ALL: [GateKind; 12] = [
        GateKind::Ry,
        GateKind::H,
        GateKind::X,
        GateKind::Cnot,
        GateKind::Cz,
        GateKind::Cry,
        GateKind::Swap,
        GateKind::Fswap,
        GateKind::Oswap,
        GateKind::Se,
        GateKind::De,
        GateKind::C3ry,
    ];
}

/// Angle `scale * params[index]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRef {
    pub index: usize,
    pub scale: f64,
}

impl ParamRef {
    pub fn new(index: usize) -> Self {
        ParamRef { index, scale: 1.0 }
    }

    pub fn scaled(self, factor: f64) -> Self {
        ParamRef {
            index: self.index,
            scale: self.scale * factor,
        }
    }

    pub fn angle(&self, params: &[f64]) -> f64 {
        self.scale * params[self.index]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub param: Option<ParamRef>,
}

impl Gate {
    /// Checked constructor: operand count, distinct operands, and parameter
    /// presence must match the kind.
    pub fn new(kind: GateKind, qubits: Vec<usize>, param: Option<ParamRef>) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::InvalidCircuit(format!(
                "{kind:?} takes {} qubits, got {}",
                kind.arity(),
                qubits.len()
            )));
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::InvalidCircuit(format!("{kind:?} repeats qubit {q}")));
            }
        }
        if kind.is_parametrized() != param.is_some() {
            return Err(Error::InvalidCircuit(format!(
                "{kind:?} {} a parameter",
                if kind.is_parametrized() {
                    "needs"
                } else {
                    "takes no"
                }
            )));
        }
        Ok(Gate {
            kind,
            qubits,
            param,
        })
    }

    fn fixed(kind: GateKind, qubits: Vec<usize>) -> Self {
        Gate::new(kind, qubits, None).expect("valid fixed gate")
    }

    fn param(kind: GateKind, qubits: Vec<usize>, p: ParamRef) -> Self {
        Gate::new(kind, qubits, Some(p)).expect("valid parametrized gate")
    }

    pub fn ry(q: usize, p: ParamRef) -> Self {
        Gate::param(GateKind::Ry, vec![q], p)
    }
    pub fn h(q: usize) -> Self {
        Gate::fixed(GateKind::H, vec![q])
    }
    pub fn x(q: usize) -> Self {
        Gate::fixed(GateKind::X, vec![q])
    }
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::fixed(GateKind::Cnot, vec![control, target])
    }
    pub fn cz(a: usize, b: usize) -> Self {
        Gate::fixed(GateKind::Cz, vec![a, b])
    }
    pub fn cry(control: usize, target: usize, p: ParamRef) -> Self {
        Gate::param(GateKind::Cry, vec![control, target], p)
    }
    pub fn swap(a: usize, b: usize) -> Self {
        Gate::fixed(GateKind::Swap, vec![a, b])
    }
    pub fn fswap(a: usize, b: usize) -> Self {
        Gate::fixed(GateKind::Fswap, vec![a, b])
    }
    pub fn oswap(q: [usize; 4]) -> Self {
        Gate::fixed(GateKind::Oswap, q.to_vec())
    }
    pub fn se(q: [usize; 4], p: ParamRef) -> Self {
        Gate::param(GateKind::Se, q.to_vec(), p)
    }
    pub fn de(q: [usize; 4], p: ParamRef) -> Self {
        Gate::param(GateKind::De, q.to_vec(), p)
    }
    pub fn c3ry(controls: [usize; 3], target: usize, p: ParamRef) -> Self {
        Gate::param(
            GateKind::C3ry,
            vec![controls[0], controls[1], controls[2], target],
            p,
        )
    }
}

/// Ordered gate list over `n_qubits` with a parameter table of `n_params`
/// entries.
///
/// `output_layout[l]` is the physical qubit that holds logical qubit `l`
/// once the circuit has run; swap networks move logical qubits around, and
/// observables must be read through this map.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
    pub n_params: usize,
    pub output_layout: Vec<usize>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
            n_params: 0,
            output_layout: (0..n_qubits).collect(),
        }
    }

    /// Allocates a fresh parameter slot.
    pub fn new_param(&mut self) -> ParamRef {
        self.n_params += 1;
        ParamRef::new(self.n_params - 1)
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends `other`, renumbering its parameters after ours. The output
    /// layout of the result composes both relabellings.
    pub fn append(&mut self, other: &Circuit) {
        assert_eq!(self.n_qubits, other.n_qubits, "qubit count mismatch");
        let offset = self.n_params;
        for g in &other.gates {
            let mut g = g.clone();
            if let Some(p) = &mut g.param {
                p.index += offset;
            }
            self.gates.push(g);
        }
        self.n_params += other.n_params;
        // logical l sat on physical self.layout[l] before `other` ran, and
        // `other` moves whatever is on physical q to other.layout[q].
        self.output_layout = self
            .output_layout
            .iter()
            .map(|&q| other.output_layout[q])
            .collect();
    }

    /// Prepends X gates on the given qubits, e.g. to load an occupation
    /// reference before number-conserving excitations.
    pub fn with_reference(mut self, occupied: &[usize]) -> Self {
        let mut gates: Vec<Gate> = occupied.iter().map(|&q| Gate::x(q)).collect();
        gates.append(&mut self.gates);
        self.gates = gates;
        self
    }

    /// Structural checks: operand ranges, parameter ranges, layout permutation.
    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.gates.iter().enumerate() {
            Gate::new(g.kind, g.qubits.clone(), g.param)
                .map_err(|e| Error::InvalidCircuit(format!("gate {i}: {e}")))?;
            if let Some(&q) = g.qubits.iter().find(|&&q| q >= self.n_qubits) {
                return Err(Error::InvalidCircuit(format!(
                    "gate {i} acts on qubit {q} of a {}-qubit circuit",
                    self.n_qubits
                )));
            }
            if let Some(p) = g.param {
                if p.index >= self.n_params {
                    return Err(Error::InvalidCircuit(format!(
                        "gate {i} uses parameter {} of {}",
                        p.index, self.n_params
                    )));
                }
            }
        }
        let mut seen = vec![false; self.n_qubits];
        if self.output_layout.len() != self.n_qubits {
            return Err(Error::InvalidCircuit(
                "output layout has the wrong length".into(),
            ));
        }
        for &q in &self.output_layout {
            if q >= self.n_qubits || std::mem::replace(&mut seen[q], true) {
                return Err(Error::InvalidCircuit(
                    "output layout is not a permutation".into(),
                ));
            }
        }
        Ok(())
    }

    /// True when every parameter slot is used by exactly one gate, as the
    /// ansatz builders guarantee.
    pub fn params_independent(&self) -> bool {
        let mut uses = vec![0usize; self.n_params];
        for p in self.gates.iter().filter_map(|g| g.param) {
            if p.index >= self.n_params {
                return false;
            }
            uses[p.index] += 1;
        }
        uses.iter().all(|&u| u == 1)
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind == kind).count()
    }

    pub fn to_file(&self) -> CircuitFile {
        CircuitFile {
            n_qubits: self.n_qubits,
            n_params: self.n_params,
            gates: self
                .gates
                .iter()
                .map(|g| GateRecord {
                    kind: g.kind,
                    qubits: g.qubits.clone(),
                    param: g.param.map(|p| p.index),
                    scale: g.param.map(|p| p.scale).filter(|&s| s != 1.0),
                })
                .collect(),
            output_layout: self.output_layout.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("circuit serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<CircuitFile>(text)?.into_circuit()
    }
}

/// JSON layout of a circuit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitFile {
    pub n_qubits: usize,
    pub n_params: usize,
    pub gates: Vec<GateRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub output_layout: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
}

impl CircuitFile {
    pub fn into_circuit(self) -> Result<Circuit> {
        let gates = self
            .gates
            .into_iter()
            .map(|r| {
                let param = r.param.map(|index| ParamRef {
                    index,
                    scale: r.scale.unwrap_or(1.0),
                });
                Gate::new(r.kind, r.qubits, param)
            })
            .collect::<Result<Vec<_>>>()?;
        let c = Circuit {
            n_qubits: self.n_qubits,
            gates,
            n_params: self.n_params,
            output_layout: if self.output_layout.is_empty() {
                (0..self.n_qubits).collect()
            } else {
                self.output_layout
            },
        };
        c.validate()?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_arity_and_params_enforced() {
        assert!(Gate::new(GateKind::Cnot, vec![0], None).is_err());
        assert!(Gate::new(GateKind::Ry, vec![0], None).is_err());
        assert!(Gate::new(GateKind::H, vec![0], Some(ParamRef::new(0))).is_err());
        assert!(Gate::new(GateKind::Swap, vec![1, 1], None).is_err());
        assert!(Gate::new(GateKind::Se, vec![0, 1, 2, 3], Some(ParamRef::new(0))).is_ok());
    }

    #[test]
    fn validate_catches_ranges() {
        let mut c = Circuit::new(2);
        let p = c.new_param();
        c.push(Gate::ry(0, p));
        c.push(Gate::cnot(0, 1));
        assert!(c.validate().is_ok());
        assert!(c.params_independent());

        let mut bad = c.clone();
        bad.push(Gate::h(2));
        assert!(bad.validate().is_err());

        let mut bad = c.clone();
        bad.push(Gate::ry(1, ParamRef::new(5)));
        assert!(bad.validate().is_err());

        let mut shared = c.clone();
        shared.push(Gate::ry(1, p));
        assert!(!shared.params_independent());
    }

    #[test]
    fn json_round_trip() {
        let mut c = Circuit::new(4);
        let p = c.new_param();
        let q = c.new_param();
        c.push(Gate::de([0, 1, 2, 3], p));
        c.push(Gate::ry(2, q.scaled(-0.5)));
        c.push(Gate::oswap([0, 1, 2, 3]));
        c.output_layout = vec![2, 3, 0, 1];
        let text = c.to_json();
        assert!(text.contains("\"kind\": \"DE\""));
        assert_eq!(Circuit::from_json(&text).unwrap(), c);
    }

    #[test]
    fn append_renumbers_and_composes_layouts() {
        let mut a = Circuit::new(3);
        let p = a.new_param();
        a.push(Gate::ry(0, p));
        a.push(Gate::swap(0, 1));
        a.output_layout = vec![1, 0, 2];
        let mut b = Circuit::new(3);
        let q = b.new_param();
        b.push(Gate::ry(1, q));
        b.push(Gate::swap(1, 2));
        b.output_layout = vec![0, 2, 1];
        a.append(&b);
        assert_eq!(a.n_params, 2);
        assert_eq!(a.gates[2].param.unwrap().index, 1);
        // logical 0: physical 0 -> 1 -> 2
        assert_eq!(a.output_layout, vec![2, 0, 1]);
    }
}
