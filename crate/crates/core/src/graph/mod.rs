//! Labelled connectivity graphs.
//!
//! A [`ConnectivityGraph`] pairs a fixed, undirected topology (the physical
//! qubit sites and their couplers) with a label permutation recording which
//! logical qubit currently sits on which site. Swap layers move labels and
//! never touch the topology, so the topology (including its all-pairs
//! distance table) is shared between relabelled copies.
//!
//! Vertices and labels are 0-based everywhere in the API; the text file
//! format in [`io`] is 1-based.

mod coarsen;
mod history;
pub mod io;
pub mod presets;

use std::collections::VecDeque;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use coarsen::coarsen;
pub use history::HistoryMatrix;

/// Undirected edge between two vertices, stored with `.0 < .1`.
pub type Edge = (usize, usize);

/// Normalizes an unordered pair so that the smaller index comes first.
pub fn ordered(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug)]
struct Topology {
    n: usize,
    edges: Vec<Edge>,
    neighbors: Vec<Vec<usize>>,
    adjacent: Vec<bool>,
    // vertex-level BFS distances, row-major n*n
    dist: Vec<u32>,
}

impl Topology {
    fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut adjacent = vec![false; n * n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {u}")));
            }
            if adjacent[u * n + v] {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            adjacent[u * n + v] = true;
            adjacent[v * n + u] = true;
            list.push(ordered(u, v));
        }
        list.sort_unstable();

        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &list {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }

        let mut dist = vec![u32::MAX; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for src in 0..n {
            let row = &mut dist[src * n..(src + 1) * n];
            row[src] = 0;
            queue.clear();
            queue.push_back(src);
            while let Some(u) = queue.pop_front() {
                let next = row[u] + 1;
                for &w in &neighbors[u] {
                    if row[w] == u32::MAX {
                        row[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            if row.contains(&u32::MAX) {
                return Err(Error::Disconnected);
            }
        }

        Ok(Topology {
            n,
            edges: list,
            neighbors,
            adjacent,
            dist,
        })
    }
}

/// Connected qubit topology with a label permutation.
#[derive(Debug, Clone)]
pub struct ConnectivityGraph {
    topo: Arc<Topology>,
    // vertex -> label
    labels: Vec<usize>,
    // label -> vertex
    positions: Vec<usize>,
}

impl PartialEq for ConnectivityGraph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && (Arc::ptr_eq(&self.topo, &other.topo)
                || (self.topo.n == other.topo.n && self.topo.edges == other.topo.edges))
    }
}

impl Eq for ConnectivityGraph {}

impl ConnectivityGraph {
    /// Builds a graph with the identity labelling. Rejects self-loops,
    /// duplicate edges and disconnected topologies.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let topo = Topology::build(n, edges)?;
        Ok(ConnectivityGraph {
            labels: (0..n).collect(),
            positions: (0..n).collect(),
            topo: Arc::new(topo),
        })
    }

    /// Same topology with a different labelling (`labels[v]` is the label on vertex `v`).
    pub fn with_labelling(&self, labels: Vec<usize>) -> Result<Self> {
        let positions = invert_permutation(&labels, self.n())?;
        Ok(ConnectivityGraph {
            topo: Arc::clone(&self.topo),
            labels,
            positions,
        })
    }

    pub fn n(&self) -> usize {
        self.topo.n
    }

    /// Sorted edge list, each edge as `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.topo.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.topo.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.topo.neighbors[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.topo.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let n = self.n();
        u < n && v < n && self.topo.adjacent[u * n + v]
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.topo.edges.len() == n * (n - 1) / 2
    }

    pub fn label_of(&self, vertex: usize) -> usize {
        self.labels[vertex]
    }

    pub fn vertex_of(&self, label: usize) -> usize {
        self.positions[label]
    }

    /// `labelling()[v]` is the label held by vertex `v`.
    pub fn labelling(&self) -> &[usize] {
        &self.labels
    }

    /// `positions()[l]` is the vertex holding label `l`.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Shortest-path distance between two vertices.
    pub fn vertex_distance(&self, u: usize, v: usize) -> u32 {
        self.topo.dist[u * self.n() + v]
    }

    /// Shortest-path distance between the vertices currently holding labels `i` and `j`.
    pub fn label_distance(&self, i: usize, j: usize) -> u32 {
        self.vertex_distance(self.positions[i], self.positions[j])
    }

    /// Label-indexed distance matrix, `d[i][j]` for labels `i`, `j`.
    pub fn all_pairs_distances(&self) -> Vec<Vec<u32>> {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| self.label_distance(i, j)).collect())
            .collect()
    }

    /// True if both graphs share the same vertex count and edge set.
    pub fn same_topology(&self, other: &ConnectivityGraph) -> bool {
        Arc::ptr_eq(&self.topo, &other.topo)
            || (self.n() == other.n() && self.edges() == other.edges())
    }

    /// Returns a copy with the labels on every swapped pair exchanged.
    pub fn apply_swap_layer(&self, layer: &SwapLayer) -> Result<Self> {
        layer.validate(self)?;
        let mut next = self.clone();
        for &(u, v) in layer.swaps() {
            next.swap_vertices(u, v);
        }
        Ok(next)
    }

    /// Applies every layer of a block in order.
    pub fn apply_swap_block(&self, block: &SwapBlock) -> Result<Self> {
        let mut g = self.clone();
        for layer in block.layers() {
            g = g.apply_swap_layer(layer)?;
        }
        Ok(g)
    }

    // Caller guarantees (u, v) is an edge.
    pub(crate) fn swap_vertices(&mut self, u: usize, v: usize) {
        let (a, b) = (self.labels[u], self.labels[v]);
        self.labels.swap(u, v);
        self.positions[a] = v;
        self.positions[b] = u;
    }
}

fn invert_permutation(labels: &[usize], n: usize) -> Result<Vec<usize>> {
    if labels.len() != n {
        return Err(Error::InvalidGraph(format!(
            "labelling has {} entries, expected {n}",
            labels.len()
        )));
    }
    let mut positions = vec![usize::MAX; n];
    for (v, &l) in labels.iter().enumerate() {
        if l >= n || positions[l] != usize::MAX {
            return Err(Error::InvalidGraph("labelling is not a permutation".into()));
        }
        positions[l] = v;
    }
    Ok(positions)
}

/// A depth-1 layer of simultaneous swaps: a matching over graph edges.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SwapLayer {
    swaps: Vec<Edge>,
}

impl SwapLayer {
    /// Pairs are normalized to `(min, max)` and sorted. Matching and edge
    /// validity are only checked against a graph, see [`SwapLayer::validate`].
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut swaps: Vec<Edge> = pairs.into_iter().map(|(u, v)| ordered(u, v)).collect();
        swaps.sort_unstable();
        SwapLayer { swaps }
    }

    pub fn empty() -> Self {
        SwapLayer::default()
    }

    pub fn swaps(&self) -> &[Edge] {
        &self.swaps
    }

    pub fn len(&self) -> usize {
        self.swaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.swaps.binary_search(&ordered(e.0, e.1)).is_ok()
    }

    pub fn touches(&self, v: usize) -> bool {
        self.swaps.iter().any(|&(a, b)| a == v || b == v)
    }

    pub(crate) fn insert(&mut self, e: Edge) {
        let e = ordered(e.0, e.1);
        if let Err(pos) = self.swaps.binary_search(&e) {
            self.swaps.insert(pos, e);
        }
    }

    pub(crate) fn remove_at(&mut self, idx: usize) -> Edge {
        self.swaps.remove(idx)
    }

    /// Every pair must be an edge of `g` and no vertex may appear twice.
    pub fn validate(&self, g: &ConnectivityGraph) -> Result<()> {
        let mut used = vec![false; g.n()];
        for &(u, v) in &self.swaps {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidLayer(format!("({u}, {v}) is not an edge")));
            }
            for w in [u, v] {
                if used[w] {
                    return Err(Error::InvalidLayer(format!("vertex {w} swapped twice")));
                }
                used[w] = true;
            }
        }
        Ok(())
    }
}

/// Up to `k` swap layers applied back to back between two entangling slots.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SwapBlock {
    layers: Vec<SwapLayer>,
}

impl SwapBlock {
    pub fn new(layers: Vec<SwapLayer>) -> Self {
        SwapBlock { layers }
    }

    /// `depth` empty layers.
    pub fn identity(depth: usize) -> Self {
        SwapBlock {
            layers: vec![SwapLayer::empty(); depth],
        }
    }

    pub fn layers(&self) -> &[SwapLayer] {
        &self.layers
    }

    pub(crate) fn layers_mut(&mut self) -> &mut [SwapLayer] {
        &mut self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn swap_count(&self) -> usize {
        self.layers.iter().map(SwapLayer::len).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.layers.iter().all(SwapLayer::is_empty)
    }

    /// Drops empty layers. An empty layer is the identity wherever it sits,
    /// so this never changes the block's permutation.
    pub fn pruned(&self) -> Self {
        SwapBlock {
            layers: self
                .layers
                .iter()
                .filter(|l| !l.is_empty())
                .cloned()
                .collect(),
        }
    }

    /// The vertex permutation induced by the block: `perm[v]` is the vertex
    /// whose label ends up on `v`.
    pub fn permutation(&self, n: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..n).collect();
        for layer in &self.layers {
            for &(u, v) in layer.swaps() {
                perm.swap(u, v);
            }
        }
        perm
    }
}
