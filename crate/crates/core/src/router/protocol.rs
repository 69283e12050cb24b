use serde::{Deserialize, Serialize};

use super::cost::cost_with_exponent;
use crate::error::{Error, Result};
use crate::graph::{ConnectivityGraph, HistoryMatrix, SwapBlock, SwapLayer};

/// An optimized swap network: the blocks chosen step by step together with
/// the labelling and cost after each one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapProtocol {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub exponent: u32,
    pub initial_labelling: Vec<usize>,
    pub initial_cost: u64,
    pub blocks: Vec<SwapBlock>,
    /// Labelling (vertex -> label) after each block.
    pub labelling_trace: Vec<Vec<usize>>,
    /// Cost after each block, against the history updated at that block.
    pub cost_trace: Vec<u64>,
    /// True when the history matrix reached all zeros.
    pub complete: bool,
}

impl SwapProtocol {
    /// Replays `blocks` from `g`, updating the history at each block
    /// boundary, and records the traces.
    pub fn from_blocks(
        g: &ConnectivityGraph,
        k: usize,
        seed: u64,
        exponent: u32,
        blocks: Vec<SwapBlock>,
    ) -> Result<Self> {
        let mut h = HistoryMatrix::init(g);
        let initial_cost = cost_with_exponent(g, &h, exponent);
        let mut cur = g.clone();
        let mut labelling_trace = Vec::with_capacity(blocks.len());
        let mut cost_trace = Vec::with_capacity(blocks.len());
        for block in &blocks {
            if block.depth() > k {
                return Err(Error::InvalidLayer(format!(
                    "block of depth {} exceeds k = {k}",
                    block.depth()
                )));
            }
            cur = cur.apply_swap_block(block)?;
            h = h.update(&cur);
            labelling_trace.push(cur.labelling().to_vec());
            cost_trace.push(cost_with_exponent(&cur, &h, exponent));
        }
        Ok(SwapProtocol {
            n: g.n(),
            k,
            seed,
            exponent,
            initial_labelling: g.labelling().to_vec(),
            initial_cost,
            blocks,
            labelling_trace,
            cost_trace,
            complete: h.is_zero(),
        })
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Total number of depth-1 swap layers.
    pub fn total_layers(&self) -> usize {
        self.blocks.iter().map(SwapBlock::depth).sum()
    }

    pub fn total_swaps(&self) -> usize {
        self.blocks.iter().map(SwapBlock::swap_count).sum()
    }

    /// Labelling after the last block.
    pub fn final_labelling(&self) -> &[usize] {
        self.labelling_trace
            .last()
            .map(Vec::as_slice)
            .unwrap_or(&self.initial_labelling)
    }

    /// Replays the protocol on `g` and checks every recorded trace entry.
    /// Returns the final graph and history.
    pub fn replay(&self, g: &ConnectivityGraph) -> Result<(ConnectivityGraph, HistoryMatrix)> {
        if g.n() != self.n || g.labelling() != self.initial_labelling.as_slice() {
            return Err(Error::DimensionMismatch(
                "protocol was produced for a different graph or labelling".into(),
            ));
        }
        let fresh =
            SwapProtocol::from_blocks(g, self.k, self.seed, self.exponent, self.blocks.clone())?;
        if fresh.labelling_trace != self.labelling_trace
            || fresh.cost_trace != self.cost_trace
            || fresh.complete != self.complete
        {
            return Err(Error::InvalidLayer(
                "replay does not reproduce the recorded traces".into(),
            ));
        }
        let mut cur = g.clone();
        let mut h = HistoryMatrix::init(g);
        for block in &self.blocks {
            cur = cur.apply_swap_block(block)?;
            h = h.update(&cur);
        }
        Ok((cur, h))
    }

    pub fn to_file(&self) -> ProtocolFile {
        let one = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
        ProtocolFile {
            n: self.n,
            k: self.k,
            seed: self.seed,
            exponent: self.exponent,
            complete: self.complete,
            initial_cost: self.initial_cost,
            cost_trace: self.cost_trace.clone(),
            total_layers: self.total_layers(),
            total_swaps: self.total_swaps(),
            initial_labelling: one(&self.initial_labelling),
            blocks: self
                .blocks
                .iter()
                .map(|b| {
                    b.layers()
                        .iter()
                        .map(|l| l.swaps().iter().map(|&(u, v)| [u + 1, v + 1]).collect())
                        .collect()
                })
                .collect(),
            labelling_trace: self.labelling_trace.iter().map(|l| one(l)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("protocol serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<ProtocolFile>(text)?.into_protocol()
    }
}

/// On-disk protocol layout. Vertices and labels are 1-based; field order
/// is fixed so that identical protocols serialize to identical bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtocolFile {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub exponent: u32,
    pub complete: bool,
    pub initial_cost: u64,
    pub cost_trace: Vec<u64>,
    pub total_layers: usize,
    pub total_swaps: usize,
    pub initial_labelling: Vec<usize>,
    /// `blocks[b][layer]` is a list of `[u, v]` vertex pairs.
    pub blocks: Vec<Vec<Vec<[usize; 2]>>>,
    pub labelling_trace: Vec<Vec<usize>>,
}

impl ProtocolFile {
    pub fn into_protocol(self) -> Result<SwapProtocol> {
        let zero = |v: &[usize]| -> Result<Vec<usize>> {
            v.iter()
                .map(|&x| {
                    x.checked_sub(1)
                        .ok_or_else(|| Error::Config("protocol indices are 1-based".into()))
                })
                .collect()
        };
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let mut layers = Vec::with_capacity(b.len());
            for l in b {
                let mut pairs = Vec::with_capacity(l.len());
                for &[u, v] in l {
                    let p = zero(&[u, v])?;
                    pairs.push((p[0], p[1]));
                }
                layers.push(SwapLayer::new(pairs));
            }
            blocks.push(SwapBlock::new(layers));
        }
        Ok(SwapProtocol {
            n: self.n,
            k: self.k,
            seed: self.seed,
            exponent: self.exponent,
            initial_labelling: zero(&self.initial_labelling)?,
            initial_cost: self.initial_cost,
            blocks,
            labelling_trace: self
                .labelling_trace
                .iter()
                .map(|l| zero(l))
                .collect::<Result<_>>()?,
            cost_trace: self.cost_trace,
            complete: self.complete,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::presets::linear;

    fn path4_protocol() -> SwapProtocol {
        let g = linear(4).unwrap();
        let blocks = vec![
            SwapBlock::new(vec![SwapLayer::new([(1, 2)])]),
            SwapBlock::new(vec![SwapLayer::new([(0, 1), (2, 3)])]),
        ];
        SwapProtocol::from_blocks(&g, 1, 0, 2, blocks).unwrap()
    }

    #[test]
    fn hand_built_path4_network_completes() {
        let p = path4_protocol();
        assert!(p.complete);
        assert_eq!(p.total_layers(), 2);
        assert_eq!(p.total_swaps(), 3);
        assert_eq!(p.initial_cost, 17);
        assert_eq!(p.cost_trace, vec![9, 0]);
        let (_, h) = p.replay(&linear(4).unwrap()).unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn json_round_trip_is_one_based() {
        let p = path4_protocol();
        let text = p.to_json();
        assert!(text.contains("\"initial_labelling\": [\n    1,"));
        assert_eq!(SwapProtocol::from_json(&text).unwrap(), p);
    }

    #[test]
    fn tampered_trace_fails_replay() {
        let mut p = path4_protocol();
        p.cost_trace[0] = 1;
        assert!(p.replay(&linear(4).unwrap()).is_err());
    }
}
