use serde::{Deserialize, Serialize};

use super::ConnectivityGraph;

/// Label-indexed record of which label pairs have not yet been adjacent.
///
/// Entry `(i, j)` is `true` while labels `i` and `j` still need to meet.
/// The matrix is symmetric with a zero diagonal and entries only ever go
/// from `true` to `false`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HistoryMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl HistoryMatrix {
    /// Complement of the current label adjacency: ones on every label pair
    /// that does not sit on an edge, zeros on the diagonal.
    pub fn init(g: &ConnectivityGraph) -> Self {
        let n = g.n();
        let mut h = HistoryMatrix::all_ones(n);
        h.clear_adjacent(g);
        h
    }

    /// Every off-diagonal pair unvisited.
    pub fn all_ones(n: usize) -> Self {
        let mut bits = vec![true; n * n];
        for i in 0..n {
            bits[i * n + i] = false;
        }
        HistoryMatrix { n, bits }
    }

    pub fn zeros(n: usize) -> Self {
        HistoryMatrix {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    /// Marks the pair as visited.
    pub fn clear(&mut self, i: usize, j: usize) {
        self.bits[i * self.n + j] = false;
        self.bits[j * self.n + i] = false;
    }

    /// Returns a copy with every label pair adjacent in `g` marked visited.
    ///
    /// # Panics
    /// If `g` and the matrix disagree on the number of labels.
    pub fn update(&self, g: &ConnectivityGraph) -> Self {
        let mut h = self.clone();
        h.clear_adjacent(g);
        h
    }

    pub(crate) fn clear_adjacent(&mut self, g: &ConnectivityGraph) {
        assert_eq!(self.n, g.n(), "history/graph size mismatch");
        for &(u, v) in g.edges() {
            self.clear(g.label_of(u), g.label_of(v));
        }
    }

    pub fn is_zero(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    /// Number of unvisited unordered pairs.
    pub fn unvisited_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count() / 2
    }

    /// Unvisited pairs `(i, j)` with `i < j`, in row-major order.
    pub fn unvisited_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(move |&(i, j)| self.get(i, j))
    }

    /// Bitset of the upper triangle, row-major. Only for `n <= 11`.
    pub(crate) fn packed(&self) -> u64 {
        debug_assert!(self.n * (self.n.saturating_sub(1)) / 2 <= 64);
        let mut word = 0u64;
        let mut bit = 0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j) {
                    word |= 1 << bit;
                }
                bit += 1;
            }
        }
        word
    }
}
