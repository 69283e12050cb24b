use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Pauli, PauliSum, PauliTerm};
use crate::error::{Error, Result};

/// Random transverse-coupled spin glass
/// `H = sum_{i<j} J_ij X_i X_j + sum_i h_i Z_i` with every coefficient
/// uniform in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinGlassInstance {
    pub n: usize,
    pub seed: u64,
    /// Couplings for `i < j`, row-major: (0,1), (0,2), ..., (1,2), ...
    pub j: Vec<f64>,
    pub h: Vec<f64>,
}

/// Draws an instance from ChaCha8 seeded with `seed`: first the couplings in
/// row-major order, then the fields.
pub fn gen_spin_glass(n: usize, seed: u64) -> Result<SpinGlassInstance> {
    if n < 2 {
        return Err(Error::Config(format!("spin glass needs n >= 2, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let j = (0..n * (n - 1) / 2)
        .map(|_| rng.random_range(-1.0..=1.0))
        .collect();
    let h = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
    Ok(SpinGlassInstance { n, seed, j, h })
}

impl SpinGlassInstance {
    pub fn coupling(&self, a: usize, b: usize) -> f64 {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        assert!(i != j && j < self.n, "no coupling ({a}, {b})");
        // offset of row i in the flattened upper triangle
        let row = i * (2 * self.n - i - 1) / 2;
        self.j[row + (j - i - 1)]
    }

    pub fn hamiltonian(&self) -> Result<PauliSum> {
        let mut terms = Vec::with_capacity(self.j.len() + self.n);
        let mut k = 0;
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                terms.push(PauliTerm::new(self.j[k], [(a, Pauli::X), (b, Pauli::X)])?);
                k += 1;
            }
        }
        for (a, &h) in self.h.iter().enumerate() {
            terms.push(PauliTerm::new(h, [(a, Pauli::Z)])?);
        }
        PauliSum::new(self.n, terms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: SpinGlassInstance = serde_json::from_str(text)?;
        if inst.n < 2 || inst.j.len() != inst.n * (inst.n - 1) / 2 || inst.h.len() != inst.n {
            return Err(Error::Config(format!(
                "spin glass with n = {} needs {} couplings and {} fields",
                inst.n,
                inst.n * inst.n.saturating_sub(1) / 2,
                inst.n
            )));
        }
        Ok(inst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_counts() {
        for n in 2..=10 {
            let inst = gen_spin_glass(n, 3).unwrap();
            let h = inst.hamiltonian().unwrap();
            assert_eq!(h.len(), n * (n - 1) / 2 + n);
        }
        let h = gen_spin_glass(7, 0).unwrap().hamiltonian().unwrap();
        let xx = h.terms().iter().filter(|t| t.ops().len() == 2).count();
        assert_eq!((xx, h.len() - xx), (21, 7));
    }

    #[test]
    fn deterministic_and_bounded() {
        let a = gen_spin_glass(6, 42).unwrap();
        assert_eq!(a, gen_spin_glass(6, 42).unwrap());
        assert_ne!(a, gen_spin_glass(6, 43).unwrap());
        assert!(a.j.iter().chain(&a.h).all(|v| (-1.0..=1.0).contains(v)));
        assert!(gen_spin_glass(1, 0).is_err());
    }

    #[test]
    fn stream_order() {
        let inst = gen_spin_glass(4, 9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let draws: Vec<f64> = (0..10).map(|_| rng.random_range(-1.0..=1.0)).collect();
        assert_eq!(inst.j, draws[..6]);
        assert_eq!(inst.h, draws[6..]);
        assert_eq!(inst.coupling(1, 3), draws[4]);
        assert_eq!(inst.coupling(3, 2), draws[5]);
    }

    #[test]
    fn json_round_trip() {
        let inst = gen_spin_glass(5, 1).unwrap();
        assert_eq!(SpinGlassInstance::from_json(&inst.to_json()).unwrap(), inst);
        assert!(SpinGlassInstance::from_json(r#"{"n":3,"seed":0,"j":[0.1],"h":[0,0,0]}"#).is_err());
    }
}
