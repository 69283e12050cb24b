use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::cost::cost_after_update;
use super::AnnealConfig;
use crate::error::{Error, Result};
use crate::graph::{ConnectivityGraph, HistoryMatrix, SwapBlock};

const PROBE_MOVES: usize = 50;

/// Random neighbour of `block`.
///
/// Picks one of the `k` layers uniformly. With probability `p_add` a swap is
/// added on a uniformly chosen edge sharing no vertex with the layer's
/// current swaps, otherwise a uniformly chosen swap is removed. When the
/// drawn branch is impossible (no free edge, or nothing to remove) the other
/// branch is taken; if both are impossible the block comes back unchanged.
///
/// # Panics
/// If `block` does not have exactly `cfg.k` layers.
pub fn propose_move<R: Rng + ?Sized>(
    block: &SwapBlock,
    g: &ConnectivityGraph,
    cfg: &AnnealConfig,
    rng: &mut R,
) -> SwapBlock {
    assert_eq!(block.depth(), cfg.k, "block depth must equal k");
    let mut next = block.clone();
    let layer_idx = rng.random_range(0..cfg.k);
    let want_add = rng.random::<f64>() < cfg.p_add;

    let layer = &mut next.layers_mut()[layer_idx];
    let free: Vec<_> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| !layer.touches(u) && !layer.touches(v))
        .collect();

    let add = if want_add {
        !free.is_empty()
    } else {
        layer.is_empty() && !free.is_empty()
    };
    if add {
        let e = free[rng.random_range(0..free.len())];
        layer.insert(e);
    } else if !layer.is_empty() {
        let idx = rng.random_range(0..layer.len());
        layer.remove_at(idx);
    }
    next
}

/// Best block found for one routing step.
#[derive(Debug, Clone)]
pub struct AnnealOutcome {
    /// Winning block with empty layers dropped.
    pub block: SwapBlock,
    /// Input graph relabelled by `block`.
    pub graph: ConnectivityGraph,
    /// Input history updated with the adjacency of `graph`.
    pub history: HistoryMatrix,
    pub cost: u64,
}

/// Runs `cfg.restarts` independent annealing chains from the identity block
/// and returns the lowest-cost block seen by any of them. Ties go to the
/// block with fewer swaps, then to the earliest chain and step. The identity
/// block is always a candidate, so the result never costs more than leaving
/// the labels where they are.
pub fn anneal_block(
    g: &ConnectivityGraph,
    h: &HistoryMatrix,
    cfg: &AnnealConfig,
) -> Result<AnnealOutcome> {
    cfg.validate()?;
    if g.n() != h.n() {
        return Err(Error::DimensionMismatch(format!(
            "graph has {} labels, history {}",
            g.n(),
            h.n()
        )));
    }
    if h.is_zero() {
        return Err(Error::NothingToRoute);
    }

    let unvisited: Vec<(usize, usize)> = h.unvisited_pairs().collect();
    let chains: Vec<Candidate> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(r as u64));
            Chain::new(g, &unvisited, cfg).run(&mut rng)
        })
        .collect();

    let best = chains
        .into_iter()
        .reduce(|a, b| if b.beats(&a) { b } else { a })
        .expect("restarts >= 1");

    let block = best.block.pruned();
    let graph = g.apply_swap_block(&block)?;
    let history = h.update(&graph);
    Ok(AnnealOutcome {
        block,
        graph,
        history,
        cost: best.cost,
    })
}

#[derive(Debug, Clone)]
struct Candidate {
    block: SwapBlock,
    cost: u64,
    swaps: usize,
}

impl Candidate {
    fn beats(&self, other: &Candidate) -> bool {
        (self.cost, self.swaps) < (other.cost, other.swaps)
    }
}

struct Chain<'a> {
    g: &'a ConnectivityGraph,
    unvisited: &'a [(usize, usize)],
    cfg: &'a AnnealConfig,
    labels: Vec<usize>,
    positions: Vec<usize>,
}

impl<'a> Chain<'a> {
    fn new(
        g: &'a ConnectivityGraph,
        unvisited: &'a [(usize, usize)],
        cfg: &'a AnnealConfig,
    ) -> Self {
        Chain {
            g,
            unvisited,
            cfg,
            labels: g.labelling().to_vec(),
            positions: g.positions().to_vec(),
        }
    }

    fn evaluate(&mut self, block: &SwapBlock) -> u64 {
        self.labels.copy_from_slice(self.g.labelling());
        self.positions.copy_from_slice(self.g.positions());
        for layer in block.layers() {
            for &(u, v) in layer.swaps() {
                let (a, b) = (self.labels[u], self.labels[v]);
                self.labels.swap(u, v);
                self.positions[a] = v;
                self.positions[b] = u;
            }
        }
        cost_after_update(self.g, self.unvisited, &self.positions, self.cfg.exponent)
    }

    fn initial_temperature<R: Rng>(
        &mut self,
        start: &SwapBlock,
        start_cost: u64,
        rng: &mut R,
    ) -> f64 {
        if let Some(t0) = self.cfg.t0 {
            return t0;
        }
        let mut block = start.clone();
        let mut prev = start_cost;
        let mut total = 0.0;
        for _ in 0..PROBE_MOVES {
            block = propose_move(&block, self.g, self.cfg, rng);
            let c = self.evaluate(&block);
            total += (c as f64 - prev as f64).abs();
            prev = c;
        }
        let mean = total / PROBE_MOVES as f64;
        if mean > 0.0 {
            mean
        } else {
            1.0
        }
    }

    fn run<R: Rng>(mut self, rng: &mut R) -> Candidate {
        let mut current = SwapBlock::identity(self.cfg.k);
        let mut current_cost = self.evaluate(&current);
        let mut best = Candidate {
            block: current.clone(),
            cost: current_cost,
            swaps: 0,
        };
        let mut temperature = self.initial_temperature(&current, current_cost, rng);

        for _ in 0..self.cfg.steps {
            let proposal = propose_move(&current, self.g, self.cfg, rng);
            let c = self.evaluate(&proposal);
            let cand = Candidate {
                swaps: proposal.swap_count(),
                block: proposal,
                cost: c,
            };
            if cand.beats(&best) {
                best = cand.clone();
            }
            let delta = c as f64 - current_cost as f64;
            if delta <= 0.0 || rng.random::<f64>() < (-delta / temperature).exp() {
                current = cand.block;
                current_cost = c;
            }
            temperature *= self.cfg.alpha;
        }
        best
    }
}
