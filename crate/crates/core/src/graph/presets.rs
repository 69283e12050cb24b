//! Built-in connectivity layouts.
//!
//! Fixed layouts ship as graph files under `presets/`; lines, rings and
//! rectangular grids of any size are generated on demand. Names accepted by
//! [`by_name`]: `linear-N`, `ring-N`, `grid-RxC`, `heavy-hex-7`, `square-7`,
//! `mo-12`.

use super::io::parse_graph;
use super::ConnectivityGraph;
use crate::error::{Error, Result};

const FILES: &[(&str, &str)] = &[
    ("linear-6", include_str!("../../presets/linear-6.graph")),
    ("linear-7", include_str!("../../presets/linear-7.graph")),
    ("ring-8", include_str!("../../presets/ring-8.graph")),
    ("grid-2x3", include_str!("../../presets/grid-2x3.graph")),
    ("grid-3x3", include_str!("../../presets/grid-3x3.graph")),
    (
        "heavy-hex-7",
        include_str!("../../presets/heavy-hex-7.graph"),
    ),
    ("square-7", include_str!("../../presets/square-7.graph")),
    ("mo-12", include_str!("../../presets/mo-12.graph")),
];

/// Spin-orbital pairing for `mo-12`: orbital `a` on qubits `(2a, 2a+1)`.
pub const MO12_PAIRS: [(usize, usize); 6] = [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11)];

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(name, _)| *name)
}

/// Raw text of a shipped preset file.
pub fn file_text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn by_name(name: &str) -> Result<ConnectivityGraph> {
    if let Some(text) = file_text(name) {
        return parse_graph(text);
    }
    let bad = || Error::Config(format!("unknown preset {name:?}"));
    if let Some(n) = name.strip_prefix("linear-") {
        return linear(n.parse().map_err(|_| bad())?);
    }
    if let Some(n) = name.strip_prefix("ring-") {
        return ring(n.parse().map_err(|_| bad())?);
    }
    if let Some(dims) = name.strip_prefix("grid-") {
        let (r, c) = dims.split_once('x').ok_or_else(bad)?;
        return grid(r.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?);
    }
    Err(bad())
}

pub fn linear(n: usize) -> Result<ConnectivityGraph> {
    ConnectivityGraph::new(n, (1..n).map(|i| (i - 1, i)))
}

pub fn ring(n: usize) -> Result<ConnectivityGraph> {
    if n < 3 {
        return Err(Error::InvalidGraph(
            "a ring needs at least 3 vertices".into(),
        ));
    }
    ConnectivityGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Row-major `rows x cols` square lattice.
pub fn grid(rows: usize, cols: usize) -> Result<ConnectivityGraph> {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    ConnectivityGraph::new(rows * cols, edges)
}

pub fn complete(n: usize) -> Result<ConnectivityGraph> {
    ConnectivityGraph::new(n, (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))))
}
