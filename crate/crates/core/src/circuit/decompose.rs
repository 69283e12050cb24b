use super::{Circuit, Gate, GateKind};

/// Rewrites every gate into `{RY, H, X, CNOT, CZ, C3RY}`.
///
/// - SWAP: three alternating CNOTs.
/// - CRY(t): RY(t/2), CNOT, RY(-t/2), CNOT on the target.
/// - FSWAP: SWAP's three CNOTs then CZ.
/// - OSWAP: four FSWAPs in three layers, `(a_b,b_a) (a_a,a_b)(b_a,b_b) (a_b,b_a)`.
/// - SE(t): H/CNOT ladder around four RY(-t/2), 4 CNOTs.
/// - DE(t): CNOT/X ladder around a triple-controlled RY(-2t), 6 CNOTs.
///
/// Parameter indices are kept; only their scale changes, so the result
/// shares slots between gates. The output layout is unchanged.
pub fn decompose(c: &Circuit) -> Circuit {
    let mut out = Circuit {
        n_qubits: c.n_qubits,
        gates: Vec::with_capacity(c.gates.len() * 4),
        n_params: c.n_params,
        output_layout: c.output_layout.clone(),
    };
    for g in &c.gates {
        decompose_into(g, &mut out.gates);
    }
    out
}

/// Native-gate expansion of a single gate.
pub fn decompose_gate(g: &Gate) -> Vec<Gate> {
    let mut out = Vec::new();
    decompose_into(g, &mut out);
    out
}

fn decompose_into(g: &Gate, out: &mut Vec<Gate>) {
    let q = &g.qubits;
    match g.kind {
        k if k.is_native() => out.push(g.clone()),
        GateKind::Swap => {
            out.push(Gate::cnot(q[1], q[0]));
            out.push(Gate::cnot(q[0], q[1]));
            out.push(Gate::cnot(q[1], q[0]));
        }
        GateKind::Cry => {
            let p = g.param.expect("CRY is parametrized");
            out.push(Gate::ry(q[1], p.scaled(0.5)));
            out.push(Gate::cnot(q[0], q[1]));
            out.push(Gate::ry(q[1], p.scaled(-0.5)));
            out.push(Gate::cnot(q[0], q[1]));
        }
        GateKind::Fswap => {
            decompose_into(&Gate::swap(q[0], q[1]), out);
            out.push(Gate::cz(q[0], q[1]));
        }
        GateKind::Oswap => {
            for (a, b) in [(q[1], q[2]), (q[0], q[1]), (q[2], q[3]), (q[1], q[2])] {
                decompose_into(&Gate::fswap(a, b), out);
            }
        }
        GateKind::Se => {
            let p = g.param.expect("SE is parametrized");
            out.push(Gate::h(q[0]));
            out.push(Gate::h(q[1]));
            out.push(Gate::cnot(q[0], q[2]));
            out.push(Gate::cnot(q[1], q[3]));
            for &t in q {
                out.push(Gate::ry(t, p.scaled(-0.5)));
            }
            out.push(Gate::cnot(q[1], q[3]));
            out.push(Gate::cnot(q[0], q[2]));
            out.push(Gate::h(q[0]));
            out.push(Gate::h(q[1]));
        }
        GateKind::De => {
            let p = g.param.expect("DE is parametrized");
            out.push(Gate::cnot(q[0], q[1]));
            out.push(Gate::cnot(q[2], q[3]));
            out.push(Gate::cnot(q[0], q[2]));
            out.push(Gate::x(q[1]));
            out.push(Gate::x(q[3]));
            out.push(Gate::c3ry([q[1], q[2], q[3]], q[0], p.scaled(-2.0)));
            out.push(Gate::x(q[1]));
            out.push(Gate::x(q[3]));
            out.push(Gate::cnot(q[0], q[2]));
            out.push(Gate::cnot(q[0], q[1]));
            out.push(Gate::cnot(q[2], q[3]));
        }
        _ => unreachable!("native kinds handled above"),
    }
}
