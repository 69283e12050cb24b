//! Plain-text graph files.
//!
//! ```text
//! # 4-qubit line
//! n 4
//! e 1 2
//! e 2 3
//! e 3 4
//! l 1 2      # optional: vertex 1 holds label 2
//! l 2 1
//! ```
//!
//! Vertices and labels are 1-based in the file. Without `l` lines the
//! labelling is the identity; with them, every vertex not mentioned keeps
//! its own index and the result must still be a permutation.

use std::fmt::Write as _;
use std::path::Path;

use super::ConnectivityGraph;
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<ConnectivityGraph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut overrides = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<usize> {
            s.parse::<usize>().map_err(|_| {
                Error::parse(
                    line_no,
                    format!("expected a non-negative integer, got {s:?}"),
                )
            })
        };
        match fields.as_slice() {
            ["n", count] => {
                if n.is_some() {
                    return Err(Error::parse(line_no, "duplicate 'n' line"));
                }
                n = Some(num(count)?);
            }
            ["e", u, v] => {
                let total = n.ok_or_else(|| Error::parse(line_no, "'e' before 'n'"))?;
                edges.push((
                    one_based(num(u)?, total, line_no)?,
                    one_based(num(v)?, total, line_no)?,
                ));
            }
            ["l", v, l] => {
                let total = n.ok_or_else(|| Error::parse(line_no, "'l' before 'n'"))?;
                overrides.push((
                    one_based(num(v)?, total, line_no)?,
                    one_based(num(l)?, total, line_no)?,
                ));
            }
            _ => return Err(Error::parse(line_no, format!("unrecognized line {line:?}"))),
        }
    }

    let n = n.ok_or_else(|| Error::parse(0, "missing 'n <count>' header"))?;
    let g = ConnectivityGraph::new(n, edges)?;
    if overrides.is_empty() {
        return Ok(g);
    }
    let mut labels: Vec<usize> = (0..n).collect();
    for (v, l) in overrides {
        labels[v] = l;
    }
    g.with_labelling(labels)
}

fn one_based(x: usize, n: usize, line: usize) -> Result<usize> {
    if x == 0 || x > n {
        return Err(Error::parse(line, format!("index {x} outside 1..={n}")));
    }
    Ok(x - 1)
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<ConnectivityGraph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

/// Serializes a graph; `l` lines are written only for a non-identity labelling.
pub fn write_graph(g: &ConnectivityGraph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", g.n()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    if g.labelling().iter().enumerate().any(|(v, &l)| v != l) {
        for (v, &l) in g.labelling().iter().enumerate() {
            writeln!(out, "l {} {}", v + 1, l + 1).unwrap();
        }
    }
    out
}

/// Parses vertex pairs such as `"1:2,3:4"` (1-based) into 0-based pairs.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (a, b) = item
                .split_once(':')
                .ok_or_else(|| Error::parse(1, format!("pair {item:?} is not of the form u:v")))?;
            let parse = |s: &str| -> Result<usize> {
                match s.trim().parse::<usize>() {
                    Ok(x) if x >= 1 => Ok(x - 1),
                    _ => Err(Error::parse(
                        1,
                        format!("bad vertex {s:?} in pair {item:?}"),
                    )),
                }
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}
