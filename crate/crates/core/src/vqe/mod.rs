//! Variational energy minimization over circuit parameters.

mod optim;
mod stats;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{metrics, Circuit, Metrics};
use crate::error::{Error, Result};
use crate::hamiltonian::PauliSum;
use crate::sim::{expectation, simulate};

pub use optim::{central_difference, lbfgs, nelder_mead, Minimum, FD_STEP, SIMPLEX_STEP};
pub use stats::{iqr, median, quantile, Summary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Optimizer {
    /// Nelder-Mead; `max_iters` bounds objective evaluations.
    SimplexFree,
    /// L-BFGS on finite-difference gradients; `max_iters` bounds iterations.
    QuasiNewton,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VqeConfig {
    pub optimizer: Optimizer,
    pub max_iters: usize,
    /// Initial angles are uniform in `[-init_scale, init_scale]`.
    pub init_scale: f64,
    pub seed: u64,
    pub tol: f64,
}

impl Default for VqeConfig {
    fn default() -> Self {
        VqeConfig::simplex()
    }
}

impl VqeConfig {
    pub fn simplex() -> Self {
        VqeConfig {
            optimizer: Optimizer::SimplexFree,
            max_iters: 10_000,
            init_scale: 1e-2,
            seed: 0,
            tol: 1e-9,
        }
    }

    pub fn quasi_newton() -> Self {
        VqeConfig {
            optimizer: Optimizer::QuasiNewton,
            max_iters: 1000,
            ..VqeConfig::simplex()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        if !(self.init_scale >= 0.0 && self.init_scale.is_finite()) {
            return Err(Error::Config(
                "init_scale must be finite and non-negative".into(),
            ));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Config("tol must be positive".into()));
        }
        Ok(())
    }

    /// Seeded starting point for `n` parameters.
    pub fn initial_params(&self, n: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let s = self.init_scale;
        (0..n)
            .map(|_| {
                if s > 0.0 {
                    rng.random_range(-s..=s)
                } else {
                    0.0
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeResult {
    pub best_energy: f64,
    pub best_params: Vec<f64>,
    /// Energy at every evaluation (simplex) or every iterate (quasi-Newton).
    pub energy_trace: Vec<f64>,
    pub iterations_used: usize,
    pub evaluations: usize,
    pub metrics: Metrics,
}

impl VqeResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }
}

/// Minimizes the energy of `h` over the parameters of `c`. The Hamiltonian
/// is read on logical qubits through the circuit's output layout.
pub fn run_vqe(c: &Circuit, h: &PauliSum, cfg: &VqeConfig) -> Result<VqeResult> {
    cfg.validate()?;
    if c.n_qubits != h.n_qubits() {
        return Err(Error::DimensionMismatch(format!(
            "{}-qubit circuit, {}-qubit Hamiltonian",
            c.n_qubits,
            h.n_qubits()
        )));
    }
    c.validate()?;
    let observable = h.permuted(&c.output_layout)?;
    let objective = |p: &[f64]| -> f64 {
        let s = simulate(c, p).expect("validated circuit");
        expectation(&s, &observable).expect("sizes checked")
    };
    let x0 = cfg.initial_params(c.n_params);
    let m = match cfg.optimizer {
        Optimizer::SimplexFree => nelder_mead(objective, &x0, cfg.max_iters, cfg.tol),
        Optimizer::QuasiNewton => lbfgs(objective, &x0, cfg.max_iters, cfg.tol),
    };
    Ok(VqeResult {
        best_energy: m.f,
        best_params: m.x,
        energy_trace: m.trace,
        iterations_used: match cfg.optimizer {
            Optimizer::SimplexFree => m.evaluations,
            Optimizer::QuasiNewton => m.iterations,
        },
        evaluations: m.evaluations,
        metrics: metrics(c),
    })
}

/// `best_energy - reference`.
pub fn energy_error(result: &VqeResult, reference: f64) -> f64 {
    result.best_energy - reference
}
