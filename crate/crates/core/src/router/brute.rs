use std::collections::{HashMap, VecDeque};

use super::SwapProtocol;
use crate::error::{Error, Result};
use crate::graph::{ConnectivityGraph, Edge, HistoryMatrix, SwapBlock, SwapLayer};

const MAX_N: usize = 6;

#[derive(Debug, Clone, Copy)]
enum Step {
    Layer(usize),
    Close,
}

/// Exhaustive search for a complete swap network with the fewest layers.
///
/// States are (labelling, history, layers used in the open block). Adding a
/// non-empty matching costs one layer; closing the block updates the
/// history and is free. A 0-1 breadth-first search therefore returns a
/// minimum-layer network. Returns `Ok(None)` if none exists within
/// `max_layers` layers.
pub fn brute_force_network(
    g: &ConnectivityGraph,
    k: usize,
    max_layers: usize,
) -> Result<Option<SwapProtocol>> {
    let n = g.n();
    if n > MAX_N {
        return Err(Error::TooLarge(format!(
            "exhaustive routing supports at most {MAX_N} vertices, got {n}"
        )));
    }
    if k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    let h0 = HistoryMatrix::init(g);
    if h0.is_zero() {
        return SwapProtocol::from_blocks(g, k, 0, 2, Vec::new()).map(Some);
    }

    let matchings = all_matchings(g.edges());
    let codec = Codec::new(n);
    let start = codec.pack(g.labelling(), h0.packed(), 0);

    let mut dist: HashMap<u64, usize> = HashMap::new();
    let mut parent: HashMap<u64, (u64, Step)> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(start, 0);
    queue.push_back(start);

    let mut goal = None;
    while let Some(key) = queue.pop_front() {
        let d = dist[&key];
        let (labels, hist, depth) = codec.unpack(key);
        if hist == 0 && depth == 0 {
            goal = Some(key);
            break;
        }
        let mut relax = |next: u64, nd: usize, step: Step, front: bool| {
            if dist.get(&next).is_none_or(|&old| nd < old) {
                dist.insert(next, nd);
                parent.insert(next, (key, step));
                if front {
                    queue.push_front(next);
                } else {
                    queue.push_back(next);
                }
            }
        };
        if depth > 0 {
            let closed = codec.close(g, &labels, hist);
            relax(codec.pack(&labels, closed, 0), d, Step::Close, true);
        }
        if depth < k && d < max_layers {
            for (mi, m) in matchings.iter().enumerate() {
                let mut next = labels.clone();
                for &(u, v) in m {
                    next.swap(u, v);
                }
                relax(
                    codec.pack(&next, hist, depth + 1),
                    d + 1,
                    Step::Layer(mi),
                    false,
                );
            }
        }
    }

    let Some(goal) = goal else {
        return Ok(None);
    };
    let mut steps = Vec::new();
    let mut at = goal;
    while let Some(&(prev, step)) = parent.get(&at) {
        steps.push(step);
        at = prev;
    }
    steps.reverse();

    let mut blocks = Vec::new();
    let mut open = Vec::new();
    for step in steps {
        match step {
            Step::Layer(mi) => open.push(SwapLayer::new(matchings[mi].iter().copied())),
            Step::Close => blocks.push(SwapBlock::new(std::mem::take(&mut open))),
        }
    }
    debug_assert!(open.is_empty());
    SwapProtocol::from_blocks(g, k, 0, 2, blocks).map(Some)
}

/// Every non-empty matching of the edge list.
pub(crate) fn all_matchings(edges: &[Edge]) -> Vec<Vec<Edge>> {
    fn rec(edges: &[Edge], from: usize, used: u64, cur: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        for i in from..edges.len() {
            let (u, v) = edges[i];
            let mask = (1u64 << u) | (1u64 << v);
            if used & mask == 0 {
                cur.push((u, v));
                out.push(cur.clone());
                rec(edges, i + 1, used | mask, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(edges, 0, 0, &mut Vec::new(), &mut out);
    out
}

struct Codec {
    n: usize,
}

impl Codec {
    const LABEL_BITS: usize = 3;
    const HIST_SHIFT: usize = 24;
    const DEPTH_SHIFT: usize = 48;

    fn new(n: usize) -> Self {
        Codec { n }
    }

    fn pack(&self, labels: &[usize], hist: u64, depth: usize) -> u64 {
        let mut key = 0u64;
        for (v, &l) in labels.iter().enumerate() {
            key |= (l as u64) << (v * Self::LABEL_BITS);
        }
        key | (hist << Self::HIST_SHIFT) | ((depth as u64) << Self::DEPTH_SHIFT)
    }

    fn unpack(&self, key: u64) -> (Vec<usize>, u64, usize) {
        let labels = (0..self.n)
            .map(|v| ((key >> (v * Self::LABEL_BITS)) & 0b111) as usize)
            .collect();
        let hist = (key >> Self::HIST_SHIFT) & ((1 << (Self::DEPTH_SHIFT - Self::HIST_SHIFT)) - 1);
        let depth = (key >> Self::DEPTH_SHIFT) as usize;
        (labels, hist, depth)
    }

    fn pair_bit(&self, i: usize, j: usize) -> u64 {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let idx = i * self.n - i * (i + 1) / 2 + (j - i - 1);
        1 << idx
    }

    fn close(&self, g: &ConnectivityGraph, labels: &[usize], hist: u64) -> u64 {
        g.edges()
            .iter()
            .fold(hist, |h, &(u, v)| h & !self.pair_bit(labels[u], labels[v]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::presets::{complete, linear};

    #[test]
    fn known_optima() {
        let p = brute_force_network(&linear(3).unwrap(), 1, 10)
            .unwrap()
            .unwrap();
        assert_eq!(p.total_layers(), 1);
        assert!(p.complete);

        let p = brute_force_network(&linear(4).unwrap(), 1, 10)
            .unwrap()
            .unwrap();
        assert_eq!(p.total_layers(), 2);

        let p = brute_force_network(&complete(4).unwrap(), 1, 10)
            .unwrap()
            .unwrap();
        assert_eq!(p.total_layers(), 0);
    }

    #[test]
    fn depth_two_is_never_better_in_layers() {
        for n in 3..=5 {
            let g = linear(n).unwrap();
            let a = brute_force_network(&g, 1, 20)
                .unwrap()
                .unwrap()
                .total_layers();
            let b = brute_force_network(&g, 2, 20)
                .unwrap()
                .unwrap()
                .total_layers();
            assert_eq!(a, b, "n = {n}");
        }
    }

    #[test]
    fn budget_exhaustion_is_none() {
        assert!(brute_force_network(&linear(5).unwrap(), 1, 1)
            .unwrap()
            .is_none());
        assert!(brute_force_network(&linear(7).unwrap(), 1, 10).is_err());
    }

    #[test]
    fn matchings_of_a_triangle() {
        let m = all_matchings(&[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(m.len(), 3);
        let m = all_matchings(complete(4).unwrap().edges());
        assert_eq!(m.len(), 6 + 3);
    }

    #[test]
    fn codec_agrees_with_history_packing() {
        let g = linear(5).unwrap();
        let h = HistoryMatrix::init(&g);
        let c = Codec::new(5);
        let moved = g.with_labelling(vec![1, 0, 2, 4, 3]).unwrap();
        assert_eq!(
            c.close(&moved, moved.labelling(), h.packed()),
            h.update(&moved).packed()
        );
    }
}
