//! Dense statevector simulation.
//!
//! Amplitudes are indexed little-endian: qubit `q` is bit `q` of the basis
//! index. Registers are capped at [`MAX_SIM_QUBITS`].
//!
//! The excitation gates are applied as exponentials of their generators,
//! each a sum of mutually commuting Pauli strings on the operands
//! `(a_alpha, a_beta, b_alpha, b_beta)`:
//!
//! - SE(t) = exp(i t/4 (X0 Y2 - Y0 X2 + X1 Y3 - Y1 X3))
//! - DE(t) = exp(i t/8 (Y0X1X2X3 + X0Y1X2X3 - X0X1Y2X3 - X0X1X2Y3
//!   + Y0Y1X2Y3 + Y0Y1Y2X3 - X0Y1Y2Y3 - Y0X1Y2Y3))

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::hamiltonian::{Pauli, PauliMask, PauliSum};

pub const MAX_SIM_QUBITS: usize = 20;

/// A sign and a Pauli string over four gate operands (`None` is identity).
pub type SignedString = (f64, [Option<Pauli>; 4]);

/// Signed Pauli strings of the single-excitation generator, with the
/// prefactor of the exponent.
pub const SE_GENERATOR: (f64, [SignedString; 4]) = {
    use Pauli::{X, Y};
    (
        0.25,
        [
            (1.0, [Some(X), None, Some(Y), None]),
            (-1.0, [Some(Y), None, Some(X), None]),
            (1.0, [None, Some(X), None, Some(Y)]),
            (-1.0, [None, Some(Y), None, Some(X)]),
        ],
    )
};

/// Signed Pauli strings of the double-excitation generator.
pub const DE_GENERATOR: (f64, [SignedString; 8]) = {
    use Pauli::{X, Y};
    (
        0.125,
        [
            (1.0, [Some(Y), Some(X), Some(X), Some(X)]),
            (1.0, [Some(X), Some(Y), Some(X), Some(X)]),
            (-1.0, [Some(X), Some(X), Some(Y), Some(X)]),
            (-1.0, [Some(X), Some(X), Some(X), Some(Y)]),
            (1.0, [Some(Y), Some(Y), Some(X), Some(Y)]),
            (1.0, [Some(Y), Some(Y), Some(Y), Some(X)]),
            (-1.0, [Some(X), Some(Y), Some(Y), Some(Y)]),
            (-1.0, [Some(Y), Some(X), Some(Y), Some(Y)]),
        ],
    )
};

#[derive(Debug, Clone, PartialEq)]
pub struct State {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl State {
    /// `|0...0>` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(State { n_qubits, amps })
    }

    /// Wraps raw amplitudes; the length must be a power of two. No
    /// normalisation is applied.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes",
                amps.len()
            )));
        }
        let n_qubits = amps.len().trailing_zeros() as usize;
        check_size(n_qubits)?;
        Ok(State { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest amplitude difference to `other`.
    pub fn max_deviation(&self, other: &State) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Expected number of qubits in `|1>`.
    pub fn particle_number(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(b, a)| b.count_ones() as f64 * a.norm_sqr())
            .sum()
    }

    fn single(&mut self, q: usize, controls: usize, m: [[Complex64; 2]; 2]) {
        let bit = 1usize << q;
        for b in 0..self.amps.len() {
            if b & bit != 0 || b & controls != controls {
                continue;
            }
            let (a0, a1) = (self.amps[b], self.amps[b | bit]);
            self.amps[b] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[b | bit] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    fn swap_bits(&mut self, p: usize, q: usize, sign_if_both: bool) {
        let (bp, bq) = (1usize << p, 1usize << q);
        for b in 0..self.amps.len() {
            if b & bp != 0 && b & bq == 0 {
                self.amps.swap(b, b ^ bp ^ bq);
            } else if sign_if_both && b & bp != 0 && b & bq != 0 {
                self.amps[b] = -self.amps[b];
            }
        }
    }

    /// `exp(i phi P)`, using `P^2 = 1`.
    fn pauli_rotation(&mut self, p: &PauliMask, phi: f64) {
        let (c, s) = (phi.cos(), phi.sin());
        let is = Complex64::new(0.0, s);
        let x = p.x as usize;
        if x == 0 {
            for (b, a) in self.amps.iter_mut().enumerate() {
                *a *= c + is * p.factor(b);
            }
            return;
        }
        for b in 0..self.amps.len() {
            let partner = b ^ x;
            if partner < b {
                continue;
            }
            let (a, d) = (self.amps[b], self.amps[partner]);
            self.amps[b] = a * c + is * p.factor(partner) * d;
            self.amps[partner] = d * c + is * p.factor(b) * a;
        }
    }

    fn permute_signed(&mut self, f: impl Fn(usize) -> (usize, f64)) {
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (b, &a) in self.amps.iter().enumerate() {
            let (to, sign) = f(b);
            out[to] = a * sign;
        }
        self.amps = out;
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_SIM_QUBITS {
        return Err(Error::TooLarge(format!(
            "simulation is limited to {MAX_SIM_QUBITS} qubits, got {n}"
        )));
    }
    Ok(())
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn ry(theta: f64) -> [[Complex64; 2]; 2] {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co), c(-s)], [c(s), c(co)]]
}

fn generator_masks<const K: usize>(
    terms: &[(f64, [Option<Pauli>; 4]); K],
    qubits: &[usize],
) -> [(f64, PauliMask); K] {
    terms.map(|(sign, string)| {
        let ops: Vec<(usize, Pauli)> = string
            .iter()
            .zip(qubits)
            .filter_map(|(p, &q)| p.map(|p| (q, p)))
            .collect();
        (sign, PauliMask::from_ops(&ops))
    })
}

/// Applies one gate in place. `params` is the full parameter vector of the
/// circuit the gate belongs to.
pub fn apply_gate(s: &mut State, gate: &Gate, params: &[f64]) -> Result<()> {
    if let Some(&q) = gate.qubits.iter().find(|&&q| q >= s.n_qubits) {
        return Err(Error::InvalidCircuit(format!(
            "{:?} on qubit {q} of a {}-qubit state",
            gate.kind, s.n_qubits
        )));
    }
    let q = &gate.qubits;
    let angle = match gate.param {
        Some(p) if p.index >= params.len() => {
            return Err(Error::DimensionMismatch(format!(
                "gate uses parameter {} of {}",
                p.index,
                params.len()
            )))
        }
        Some(p) => p.angle(params),
        None => 0.0,
    };
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let x = [[c(0.0), c(1.0)], [c(1.0), c(0.0)]];
    match gate.kind {
        GateKind::Ry => s.single(q[0], 0, ry(angle)),
        GateKind::H => s.single(q[0], 0, [[c(h), c(h)], [c(h), c(-h)]]),
        GateKind::X => s.single(q[0], 0, x),
        GateKind::Cnot => s.single(q[1], 1 << q[0], x),
        GateKind::Cz => s.single(q[1], 1 << q[0], [[c(1.0), c(0.0)], [c(0.0), c(-1.0)]]),
        GateKind::Cry => s.single(q[1], 1 << q[0], ry(angle)),
        GateKind::C3ry => s.single(q[3], (1 << q[0]) | (1 << q[1]) | (1 << q[2]), ry(angle)),
        GateKind::Swap => s.swap_bits(q[0], q[1], false),
        GateKind::Fswap => s.swap_bits(q[0], q[1], true),
        GateKind::Oswap => {
            let (a0, a1, b0, b1) = (q[0], q[1], q[2], q[3]);
            s.permute_signed(|b| {
                let bit = |k: usize| (b >> k) & 1;
                let (na, nb) = (bit(a0) + bit(a1), bit(b0) + bit(b1));
                let cleared = b & !((1 << a0) | (1 << a1) | (1 << b0) | (1 << b1));
                let to = cleared | bit(b0) << a0 | bit(b1) << a1 | bit(a0) << b0 | bit(a1) << b1;
                (to, if na * nb % 2 == 1 { -1.0 } else { 1.0 })
            });
        }
        GateKind::Se => {
            let (pre, terms) = SE_GENERATOR;
            for (sign, m) in generator_masks(&terms, q) {
                s.pauli_rotation(&m, pre * sign * angle);
            }
        }
        GateKind::De => {
            let (pre, terms) = DE_GENERATOR;
            for (sign, m) in generator_masks(&terms, q) {
                s.pauli_rotation(&m, pre * sign * angle);
            }
        }
    }
    Ok(())
}

/// Runs `c` from `|0...0>`.
pub fn simulate(c: &Circuit, params: &[f64]) -> Result<State> {
    if params.len() != c.n_params {
        return Err(Error::DimensionMismatch(format!(
            "circuit has {} parameters, got {}",
            c.n_params,
            params.len()
        )));
    }
    let mut s = State::zero(c.n_qubits)?;
    for g in &c.gates {
        apply_gate(&mut s, g, params)?;
    }
    Ok(s)
}

/// `<psi|H|psi>`.
pub fn expectation(s: &State, h: &PauliSum) -> Result<f64> {
    if s.n_qubits != h.n_qubits() {
        return Err(Error::DimensionMismatch(format!(
            "{}-qubit state, {}-qubit operator",
            s.n_qubits,
            h.n_qubits()
        )));
    }
    Ok(h.terms()
        .iter()
        .map(|t| t.coefficient * t.mask().expectation(&s.amps))
        .sum())
}

/// Energy of `h`, given on logical qubits, in the output of `c`. The
/// operator is moved through the circuit's output layout first.
pub fn energy(c: &Circuit, params: &[f64], h: &PauliSum) -> Result<f64> {
    let observable = h.permuted(&c.output_layout)?;
    expectation(&simulate(c, params)?, &observable)
}
