use std::collections::BTreeSet;

use super::{ordered, ConnectivityGraph};
use crate::error::{Error, Result};

/// Merges each vertex pair into a single coarse node.
///
/// Coarse node `a` stands for `pairs[a]`. Two coarse nodes are joined when
/// any edge of `g` runs between their member vertices. The pairs must be
/// edges of `g` and must partition its vertex set.
pub fn coarsen(g: &ConnectivityGraph, pairs: &[(usize, usize)]) -> Result<ConnectivityGraph> {
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    for (idx, &(u, v)) in pairs.iter().enumerate() {
        if u >= n || v >= n {
            return Err(Error::InvalidCoarsening(format!(
                "pair ({u}, {v}) references a vertex outside 0..{n}"
            )));
        }
        if !g.has_edge(u, v) {
            return Err(Error::InvalidCoarsening(format!(
                "pair ({u}, {v}) is not an edge"
            )));
        }
        for w in [u, v] {
            if owner[w] != usize::MAX {
                return Err(Error::InvalidCoarsening(format!(
                    "vertex {w} appears in more than one pair"
                )));
            }
            owner[w] = idx;
        }
    }
    if let Some(w) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::InvalidCoarsening(format!(
            "vertex {w} is not covered by any pair"
        )));
    }

    let coarse_edges: BTreeSet<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (owner[u], owner[v]))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| ordered(a, b))
        .collect();
    ConnectivityGraph::new(pairs.len(), coarse_edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pair_collapses_to_one_node() {
        let g = ConnectivityGraph::new(2, [(0, 1)]).unwrap();
        let c = coarsen(&g, &[(0, 1)]).unwrap();
        assert_eq!(c.n(), 1);
        assert!(c.edges().is_empty());
    }

    #[test]
    fn path_of_four() {
        let g = ConnectivityGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = coarsen(&g, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(c.n(), 2);
        assert_eq!(c.edges(), &[(0, 1)]);
        assert_eq!(c.labelling(), &[0, 1]);
    }

    #[test]
    fn rejects_bad_pairings() {
        let g = ConnectivityGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        // not an edge
        assert!(coarsen(&g, &[(0, 2), (1, 3)]).is_err());
        // overlapping
        assert!(coarsen(&g, &[(0, 1), (1, 2)]).is_err());
        // not covering
        assert!(coarsen(&g, &[(0, 1)]).is_err());
    }
}
