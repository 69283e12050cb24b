use serde::{Deserialize, Serialize};

use super::{edge_color, Circuit, Gate};
use crate::error::{Error, Result};
use crate::graph::ConnectivityGraph;
use crate::router::SwapProtocol;

/// Which entangling gate and which swap an embedded network uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// One qubit per vertex, RY-RY-CRY entanglers, plain SWAPs.
    Qubit,
    /// Two qubits per vertex (an orbital), DE+SE entanglers, orbital swaps.
    Fermionic,
}

impl Flavor {
    pub fn qubits_per_vertex(self) -> usize {
        match self {
            Flavor::Qubit => 1,
            Flavor::Fermionic => 2,
        }
    }
}

fn orbital(a: usize, b: usize) -> [usize; 4] {
    [2 * a, 2 * a + 1, 2 * b, 2 * b + 1]
}

fn push_slot(c: &mut Circuit, matchings: &[Vec<(usize, usize)>], layers: usize, flavor: Flavor) {
    for _ in 0..layers {
        for m in matchings {
            for &(u, v) in m {
                match flavor {
                    Flavor::Qubit => {
                        let (a, b, t) = (c.new_param(), c.new_param(), c.new_param());
                        c.push(Gate::ry(u, a));
                        c.push(Gate::ry(v, b));
                        c.push(Gate::cry(u, v, t));
                    }
                    Flavor::Fermionic => {
                        let (d, s) = (c.new_param(), c.new_param());
                        c.push(Gate::de(orbital(u, v), d));
                        c.push(Gate::se(orbital(u, v), s));
                    }
                }
            }
        }
    }
}

/// Hardware-efficient ansatz: every edge gets RY on both ends and a CRY,
/// three fresh parameters per edge and layer, scheduled matching by matching.
pub fn build_cry_hea(g: &ConnectivityGraph, layers: usize) -> Circuit {
    let mut c = Circuit::new(g.n());
    push_slot(&mut c, &edge_color(g), layers, Flavor::Qubit);
    c
}

/// Number-conserving ansatz on an orbital graph: vertex `i` owns qubits
/// `2i` and `2i + 1`, and every edge gets a double then a single excitation.
pub fn build_excitation_ansatz(g_mo: &ConnectivityGraph, layers: usize) -> Circuit {
    let mut c = Circuit::new(2 * g_mo.n());
    push_slot(&mut c, &edge_color(g_mo), layers, Flavor::Fermionic);
    c
}

/// Interleaves entangling slots with the blocks of `protocol`.
///
/// One repetition is: slot, block 1, slot, block 2, ..., last block, slot.
/// Each slot holds `layers_per_slot` entangling layers on the edges of `g`.
/// Swaps become SWAP gates (qubit flavor) or orbital swaps on the four
/// qubits of the two vertices (fermionic flavor). The output layout tracks
/// where each logical qubit ends up.
pub fn embed_swap_network(
    g: &ConnectivityGraph,
    protocol: &SwapProtocol,
    layers_per_slot: usize,
    repetitions: usize,
    flavor: Flavor,
) -> Result<Circuit> {
    if protocol.n != g.n() {
        return Err(Error::InvalidCircuit(format!(
            "protocol routes {} vertices but the graph has {}",
            protocol.n,
            g.n()
        )));
    }
    for block in &protocol.blocks {
        for layer in block.layers() {
            layer.validate(g)?;
        }
    }

    let per = flavor.qubits_per_vertex();
    let matchings = edge_color(g);
    let mut c = Circuit::new(per * g.n());
    // position of each logical vertex
    let mut pos: Vec<usize> = (0..g.n()).collect();
    let mut at: Vec<usize> = (0..g.n()).collect();

    for _ in 0..repetitions {
        push_slot(&mut c, &matchings, layers_per_slot, flavor);
        for block in &protocol.blocks {
            for layer in block.layers() {
                for &(u, v) in layer.swaps() {
                    match flavor {
                        Flavor::Qubit => c.push(Gate::swap(u, v)),
                        Flavor::Fermionic => c.push(Gate::oswap(orbital(u, v))),
                    }
                    at.swap(u, v);
                    pos[at[u]] = u;
                    pos[at[v]] = v;
                }
            }
            push_slot(&mut c, &matchings, layers_per_slot, flavor);
        }
    }

    c.output_layout = (0..per * g.n())
        .map(|q| per * pos[q / per] + q % per)
        .collect();
    Ok(c)
}
