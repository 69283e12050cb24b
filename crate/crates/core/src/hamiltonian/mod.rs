//! Pauli-sum operators, random spin-glass instances, a plain-text file
//! format and exact ground-state energies.
//!
//! Basis states are little-endian: qubit 0 is the least significant bit of
//! the basis index.

mod exact;
mod io;
mod spin_glass;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use num_complex::Complex64;

pub use exact::{exact_ground_energy, DENSE_MAX_QUBITS, EXACT_MAX_QUBITS};
pub use io::{format_pauli_file, parse_pauli_file, parse_pauli_str, write_pauli_file};
pub use spin_glass::{gen_spin_glass, SpinGlassInstance};

/// Largest register a Pauli string can address.
pub const MAX_PAULI_QUBITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Pauli> {
        match c.to_ascii_uppercase() {
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        };
        write!(f, "{c}")
    }
}

/// Bit-mask form of a Pauli string, used for matrix-free products.
///
/// `P|b> = i^ny (-1)^popcount(b & z) |b ^ x>`, where Y sets both bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliMask {
    pub x: u64,
    pub z: u64,
    phase: Complex64,
}

impl PauliMask {
    pub fn new(x: u64, z: u64) -> Self {
        let ny = (x & z).count_ones();
        let phase = match ny % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        PauliMask { x, z, phase }
    }

    pub fn from_ops(ops: &[(usize, Pauli)]) -> Self {
        let (mut x, mut z) = (0u64, 0u64);
        for &(q, p) in ops {
            let bit = 1u64 << q;
            match p {
                Pauli::X => x |= bit,
                Pauli::Y => {
                    x |= bit;
                    z |= bit;
                }
                Pauli::Z => z |= bit,
            }
        }
        PauliMask::new(x, z)
    }

    /// Amplitude factor picked up by basis state `b`; the image is `b ^ x`.
    #[inline]
    pub fn factor(&self, b: usize) -> Complex64 {
        if (b as u64 & self.z).count_ones().is_multiple_of(2) {
            self.phase
        } else {
            -self.phase
        }
    }

    /// `out += scale * P psi`.
    pub fn apply_add(&self, psi: &[Complex64], out: &mut [Complex64], scale: f64) {
        let x = self.x as usize;
        for (b, &a) in psi.iter().enumerate() {
            out[b ^ x] += self.factor(b) * a * scale;
        }
    }

    /// `<psi|P|psi>`, which is real for a normalised or unnormalised state.
    pub fn expectation(&self, psi: &[Complex64]) -> f64 {
        let x = self.x as usize;
        psi.iter()
            .enumerate()
            .map(|(b, &a)| (psi[b ^ x].conj() * self.factor(b) * a).re)
            .sum()
    }

    /// True when the string is real-valued as a matrix (an even number of Ys).
    pub fn is_real(&self) -> bool {
        (self.x & self.z).count_ones().is_multiple_of(2)
    }
}

/// A real coefficient times a tensor product of single-qubit Paulis.
/// Qubits not listed carry the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coefficient: f64,
    ops: Vec<(usize, Pauli)>,
}

impl PauliTerm {
    pub fn new(coefficient: f64, ops: impl IntoIterator<Item = (usize, Pauli)>) -> Result<Self> {
        if !coefficient.is_finite() {
            return Err(Error::Config(format!(
                "non-finite coefficient {coefficient}"
            )));
        }
        let mut ops: Vec<(usize, Pauli)> = ops.into_iter().collect();
        ops.sort_unstable();
        for w in ops.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Config(format!(
                    "qubit {} appears twice in one term",
                    w[0].0
                )));
            }
        }
        if let Some(&(q, _)) = ops.last() {
            if q >= MAX_PAULI_QUBITS {
                return Err(Error::TooLarge(format!("qubit index {q}")));
            }
        }
        Ok(PauliTerm { coefficient, ops })
    }

    pub fn identity(coefficient: f64) -> Result<Self> {
        PauliTerm::new(coefficient, [])
    }

    /// Non-identity factors sorted by qubit.
    pub fn ops(&self) -> &[(usize, Pauli)] {
        &self.ops
    }

    pub fn mask(&self) -> PauliMask {
        PauliMask::from_ops(&self.ops)
    }

    fn max_qubit(&self) -> Option<usize> {
        self.ops.last().map(|&(q, _)| q)
    }
}

/// Real-weighted sum of Pauli strings on `n_qubits` qubits. Equal strings
/// are merged on construction, so the operator is Hermitian and each string
/// appears once, in order of first appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl PauliSum {
    pub fn new(n_qubits: usize, terms: impl IntoIterator<Item = PauliTerm>) -> Result<Self> {
        if n_qubits > MAX_PAULI_QUBITS {
            return Err(Error::TooLarge(format!("{n_qubits} qubits")));
        }
        let mut merged: Vec<PauliTerm> = Vec::new();
        let mut index: HashMap<Vec<(usize, Pauli)>, usize> = HashMap::new();
        for t in terms {
            if let Some(q) = t.max_qubit() {
                if q >= n_qubits {
                    return Err(Error::DimensionMismatch(format!(
                        "term acts on qubit {q} of a {n_qubits}-qubit operator"
                    )));
                }
            }
            match index.get(&t.ops) {
                Some(&i) => merged[i].coefficient += t.coefficient,
                None => {
                    index.insert(t.ops.clone(), merged.len());
                    merged.push(t);
                }
            }
        }
        Ok(PauliSum {
            n_qubits,
            terms: merged,
        })
    }

    pub fn zero(n_qubits: usize) -> Result<Self> {
        PauliSum::new(n_qubits, [])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coefficient *= c;
        }
        out
    }

    /// Moves the factor on qubit `q` to qubit `map[q]`, e.g. to read an
    /// observable on logical qubits after a circuit that permuted them.
    pub fn permuted(&self, map: &[usize]) -> Result<Self> {
        if map.len() != self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "qubit map of length {} for a {}-qubit operator",
                map.len(),
                self.n_qubits
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| PauliTerm::new(t.coefficient, t.ops.iter().map(|&(q, p)| (map[q], p))))
            .collect::<Result<Vec<_>>>()?;
        PauliSum::new(self.n_qubits, terms)
    }

    pub fn masks(&self) -> Vec<(f64, PauliMask)> {
        self.terms
            .iter()
            .map(|t| (t.coefficient, t.mask()))
            .collect()
    }

    /// True when every string has a real matrix, so the whole operator is
    /// real symmetric.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.mask().is_real())
    }

    /// `out = H psi`.
    pub fn apply(&self, psi: &[Complex64], out: &mut [Complex64]) -> Result<()> {
        let dim = 1usize << self.n_qubits;
        if psi.len() != dim || out.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a {}-qubit operator",
                psi.len(),
                self.n_qubits
            )));
        }
        out.fill(Complex64::new(0.0, 0.0));
        for t in &self.terms {
            t.mask().apply_add(psi, out, t.coefficient);
        }
        Ok(())
    }
}
