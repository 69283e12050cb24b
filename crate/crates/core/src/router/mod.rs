//! Swap-network synthesis.
//!
//! Starting from a labelled connectivity graph, the router repeatedly picks
//! a block of up to `k` swap layers that minimizes
//!
//! ```text
//! C(G, H) = sum_{i<j} H_ij * d_ij^p
//! ```
//!
//! where `H` is the history matrix after the block (pairs that have never
//! been adjacent) and `d_ij` the label distance, until every label has been
//! next to every other. Blocks are found by simulated annealing over
//! add/remove-swap moves.

mod anneal;
mod brute;
mod cost;
mod network;
mod protocol;

pub use anneal::{anneal_block, propose_move, AnnealOutcome};
pub use brute::brute_force_network;
pub use cost::{cost, cost_with_exponent};
pub use network::optimize_network;
pub use protocol::{ProtocolFile, SwapProtocol};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simulated-annealing settings for one routing run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnealConfig {
    /// Maximum number of swap layers per block.
    pub k: usize,
    /// Proposals per annealing chain.
    pub steps: usize,
    /// Initial temperature in cost units; `None` calibrates it from the mean
    /// absolute cost change of 50 random probe moves.
    pub t0: Option<f64>,
    /// Geometric cooling factor applied after every step.
    pub alpha: f64,
    /// Probability of proposing an added swap rather than a removal.
    pub p_add: f64,
    /// Independent chains per block; the best result wins.
    pub restarts: usize,
    pub seed: u64,
    /// Stop after this many blocks even if routing is incomplete.
    pub max_blocks: Option<usize>,
    /// Distance exponent in the cost function.
    pub exponent: u32,
}

impl AnnealConfig {
    pub fn new(k: usize) -> Self {
        AnnealConfig {
            k,
            steps: 2000 * k.max(1),
            t0: None,
            alpha: 0.995,
            p_add: 0.5,
            restarts: 4,
            seed: 0,
            max_blocks: None,
            exponent: 2,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if self.k == 0 {
            return bad("k must be at least 1");
        }
        if self.steps == 0 {
            return bad("steps must be at least 1");
        }
        if self.restarts == 0 {
            return bad("restarts must be at least 1");
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad("alpha must lie in (0, 1)");
        }
        if !(self.p_add > 0.0 && self.p_add < 1.0) {
            return bad("p_add must lie in (0, 1)");
        }
        if let Some(t0) = self.t0 {
            if !(t0.is_finite() && t0 > 0.0) {
                return bad("t0 must be positive and finite");
            }
        }
        Ok(())
    }
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig::new(2)
    }
}
