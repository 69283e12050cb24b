use crate::graph::{ConnectivityGraph, HistoryMatrix};

/// Routing cost with the default quadratic distance penalty.
pub fn cost(g: &ConnectivityGraph, h: &HistoryMatrix) -> u64 {
    cost_with_exponent(g, h, 2)
}

/// `sum_{i<j} H_ij * d_ij^exponent` over unordered label pairs.
///
/// # Panics
/// If `g` and `h` disagree on the number of labels.
pub fn cost_with_exponent(g: &ConnectivityGraph, h: &HistoryMatrix, exponent: u32) -> u64 {
    assert_eq!(g.n(), h.n(), "history/graph size mismatch");
    h.unvisited_pairs()
        .map(|(i, j)| u64::from(g.label_distance(i, j)).pow(exponent))
        .sum()
}

/// Cost of the labelling given by `positions` (label -> vertex) against the
/// unvisited pairs of the history *before* the relabelling. Pairs that the
/// relabelling makes adjacent drop out, which is exactly the cost against
/// the updated history.
pub(crate) fn cost_after_update(
    g: &ConnectivityGraph,
    unvisited: &[(usize, usize)],
    positions: &[usize],
    exponent: u32,
) -> u64 {
    unvisited
        .iter()
        .map(|&(i, j)| {
            let d = g.vertex_distance(positions[i], positions[j]);
            if d <= 1 {
                0
            } else {
                u64::from(d).pow(exponent)
            }
        })
        .sum()
}
