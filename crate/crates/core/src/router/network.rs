use super::anneal::anneal_block;
use super::cost::cost_with_exponent;
use super::{AnnealConfig, SwapProtocol};
use crate::error::Result;
use crate::graph::{ConnectivityGraph, HistoryMatrix, SwapBlock, SwapLayer};

/// Builds a swap network for `g` by annealing one block at a time until
/// every label pair has been adjacent.
///
/// Stops early with `complete = false` once `cfg.max_blocks` blocks have
/// been placed. Without a cap, a generous internal limit of `4 n^2 + 16`
/// blocks still applies.
pub fn optimize_network(g: &ConnectivityGraph, cfg: &AnnealConfig) -> Result<SwapProtocol> {
    cfg.validate()?;
    let n = g.n();
    let limit = cfg.max_blocks.unwrap_or(4 * n * n + 16);

    let mut cur = g.clone();
    let mut h = HistoryMatrix::init(g);
    let mut blocks = Vec::new();

    while !h.is_zero() && blocks.len() < limit {
        let step_cfg = AnnealConfig {
            seed: cfg
                .seed
                .wrapping_add((blocks.len() as u64).wrapping_mul(cfg.restarts as u64)),
            ..cfg.clone()
        };
        let current_cost = cost_with_exponent(&cur, &h, cfg.exponent);
        let outcome = anneal_block(&cur, &h, &step_cfg)?;
        let block = if outcome.cost < current_cost {
            outcome.block
        } else {
            approach_block(&cur, &h, cfg.k)
        };
        cur = cur.apply_swap_block(&block)?;
        h = h.update(&cur);
        blocks.push(block);
    }

    SwapProtocol::from_blocks(g, cfg.k, cfg.seed, cfg.exponent, blocks)
}

/// Fallback when annealing finds no cost improvement: walk the closest
/// unvisited label pair towards each other along a shortest path, one swap
/// per layer, for at most `k` layers. The pair's distance strictly drops,
/// and reaches 1 if it was at most `k + 1`.
fn approach_block(g: &ConnectivityGraph, h: &HistoryMatrix, k: usize) -> SwapBlock {
    let (i, j) = h
        .unvisited_pairs()
        .min_by_key(|&(i, j)| (g.label_distance(i, j), i, j))
        .expect("history has an unvisited pair");
    let target = g.vertex_of(j);
    let mut at = g.vertex_of(i);
    let steps = (g.label_distance(i, j) as usize - 1).min(k);
    let mut layers = Vec::with_capacity(steps);
    for _ in 0..steps {
        let next = g
            .neighbors(at)
            .iter()
            .copied()
            .find(|&w| g.vertex_distance(w, target) + 1 == g.vertex_distance(at, target))
            .expect("shortest-path neighbour exists in a connected graph");
        layers.push(SwapLayer::new([(at, next)]));
        at = next;
    }
    SwapBlock::new(layers)
}
