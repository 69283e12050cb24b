use crate::graph::{ConnectivityGraph, Edge};

const SEARCH_BUDGET: usize = 200_000;

/// Partitions the edges of `g` into matchings.
///
/// Tries a first-fit colouring, then an exhaustive search for a colouring
/// with max-degree colours, and finally falls back to Misra-Gries, which
/// never needs more than max-degree + 1. Matchings come back in colour
/// order with their edges sorted.
pub fn edge_color(g: &ConnectivityGraph) -> Vec<Vec<Edge>> {
    let edges = g.edges();
    if edges.is_empty() {
        return Vec::new();
    }
    let delta = g.max_degree();
    let colors = first_fit(g)
        .filter(|c| palette_size(c) <= delta)
        .or_else(|| exact(g, delta))
        .unwrap_or_else(|| misra_gries(g));

    let k = palette_size(&colors);
    let mut classes = vec![Vec::new(); k];
    for (e, &c) in edges.iter().zip(&colors) {
        classes[c].push(*e);
    }
    classes.retain(|m| !m.is_empty());
    classes
}

fn palette_size(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |&m| m + 1)
}

fn first_fit(g: &ConnectivityGraph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut used: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut colors = Vec::with_capacity(g.edges().len());
    for &(u, v) in g.edges() {
        let c = (0..)
            .find(|&c| {
                !used[u].get(c).copied().unwrap_or(false)
                    && !used[v].get(c).copied().unwrap_or(false)
            })
            .unwrap();
        for w in [u, v] {
            if used[w].len() <= c {
                used[w].resize(c + 1, false);
            }
            used[w][c] = true;
        }
        colors.push(c);
    }
    Some(colors)
}

/// Backtracking search for a proper colouring with `k` colours, giving up
/// after a fixed number of nodes.
fn exact(g: &ConnectivityGraph, k: usize) -> Option<Vec<usize>> {
    struct Search<'a> {
        edges: &'a [Edge],
        k: usize,
        used: Vec<u64>,
        colors: Vec<usize>,
        budget: usize,
    }
    impl Search<'_> {
        fn go(&mut self, i: usize) -> Option<bool> {
            if i == self.edges.len() {
                return Some(true);
            }
            if self.budget == 0 {
                return None;
            }
            self.budget -= 1;
            let (u, v) = self.edges[i];
            let busy = self.used[u] | self.used[v];
            for c in 0..self.k {
                let bit = 1u64 << c;
                if busy & bit != 0 {
                    continue;
                }
                self.used[u] |= bit;
                self.used[v] |= bit;
                self.colors[i] = c;
                match self.go(i + 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                self.used[u] &= !bit;
                self.used[v] &= !bit;
            }
            Some(false)
        }
    }
    if k > 64 {
        return None;
    }
    let mut s = Search {
        edges: g.edges(),
        k,
        used: vec![0; g.n()],
        colors: vec![0; g.edges().len()],
        budget: SEARCH_BUDGET,
    };
    match s.go(0) {
        Some(true) => Some(s.colors),
        _ => None,
    }
}

/// Misra-Gries edge colouring with at most max-degree + 1 colours.
fn misra_gries(g: &ConnectivityGraph) -> Vec<usize> {
    let n = g.n();
    let palette = g.max_degree() + 1;
    // color[u * n + v], symmetric
    let mut color: Vec<Option<usize>> = vec![None; n * n];

    let get = |color: &[Option<usize>], u: usize, v: usize| color[u * n + v];
    let set = |color: &mut [Option<usize>], u: usize, v: usize, c: Option<usize>| {
        color[u * n + v] = c;
        color[v * n + u] = c;
    };
    let is_free = |color: &[Option<usize>], x: usize, c: usize| {
        g.neighbors(x).iter().all(|&w| color[x * n + w] != Some(c))
    };
    let free_color = |color: &[Option<usize>], x: usize| {
        (0..palette)
            .find(|&c| is_free(color, x, c))
            .expect("palette has a free colour")
    };

    for &(u, v) in g.edges() {
        // maximal fan of u starting at v
        let mut fan = vec![v];
        loop {
            let last = *fan.last().unwrap();
            let next = g.neighbors(u).iter().copied().find(|&w| {
                !fan.contains(&w) && get(&color, u, w).is_some_and(|c| is_free(&color, last, c))
            });
            match next {
                Some(w) => fan.push(w),
                None => break,
            }
        }
        let c = free_color(&color, u);
        let d = free_color(&color, *fan.last().unwrap());

        // invert the cd-path starting at u
        if c != d {
            let mut path = Vec::new();
            let mut at = u;
            let mut want = d;
            while let Some(&w) = g
                .neighbors(at)
                .iter()
                .find(|&&w| get(&color, at, w) == Some(want) && !path.contains(&(w, at)))
            {
                path.push((at, w));
                at = w;
                want = if want == d { c } else { d };
            }
            for &(a, b) in &path {
                let cur = get(&color, a, b).unwrap();
                set(&mut color, a, b, Some(if cur == d { c } else { d }));
            }
        }

        // first fan vertex where d is free, keeping the prefix a fan
        let mut end = 0;
        for (i, &w) in fan.iter().enumerate() {
            if i > 0 {
                let prev = fan[i - 1];
                let ok = get(&color, u, w).is_some_and(|cw| is_free(&color, prev, cw));
                if !ok {
                    break;
                }
            }
            if is_free(&color, w, d) {
                end = i;
                break;
            }
        }
        for i in 0..end {
            let shifted = get(&color, u, fan[i + 1]);
            set(&mut color, u, fan[i], shifted);
        }
        set(&mut color, u, fan[end], Some(d));
    }

    g.edges()
        .iter()
        .map(|&(u, v)| get(&color, u, v).expect("every edge coloured"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::presets::{by_name, complete, linear};
    use crate::graph::{coarsen, presets::MO12_PAIRS};
    use proptest::prelude::*;

    fn assert_partition(g: &ConnectivityGraph, classes: &[Vec<Edge>]) {
        let mut all: Vec<Edge> = classes.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, g.edges());
        for m in classes {
            let mut seen = vec![false; g.n()];
            for &(u, v) in m {
                assert!(!seen[u] && !seen[v], "not a matching: {m:?}");
                seen[u] = true;
                seen[v] = true;
            }
        }
    }

    fn star(leaves: usize) -> ConnectivityGraph {
        ConnectivityGraph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    #[test]
    fn small_examples() {
        let g = linear(7).unwrap();
        let c = edge_color(&g);
        assert_eq!(c.len(), 2);
        assert_partition(&g, &c);

        let g = star(3);
        assert_eq!(edge_color(&g).len(), 3);

        for name in ["heavy-hex-7", "square-7", "grid-3x3", "ring-8"] {
            let g = by_name(name).unwrap();
            let c = edge_color(&g);
            assert_partition(&g, &c);
            assert_eq!(c.len(), g.max_degree(), "{name}");
        }
    }

    #[test]
    fn orbital_graph_needs_three() {
        let g = coarsen(&by_name("mo-12").unwrap(), &MO12_PAIRS).unwrap();
        let c = edge_color(&g);
        assert_partition(&g, &c);
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn odd_complete_graphs_are_class_two() {
        let g = complete(5).unwrap();
        let c = edge_color(&g);
        assert_partition(&g, &c);
        assert_eq!(c.len(), 5);
    }

    #[test]
    fn misra_gries_directly() {
        for g in [
            complete(5).unwrap(),
            complete(6).unwrap(),
            by_name("grid-3x3").unwrap(),
            star(5),
        ] {
            let colors = misra_gries(&g);
            assert!(palette_size(&colors) <= g.max_degree() + 1);
            let mut classes = vec![Vec::new(); palette_size(&colors)];
            for (e, &c) in g.edges().iter().zip(&colors) {
                classes[c].push(*e);
            }
            assert_partition(&g, &classes);
        }
    }

    fn random_connected(
        n: usize,
        extra: &[(usize, usize)],
        parents: &[usize],
    ) -> ConnectivityGraph {
        let mut edges: Vec<Edge> = (1..n).map(|v| (parents[v - 1] % v, v)).collect();
        for &(a, b) in extra {
            let (a, b) = (a % n, b % n);
            let e = crate::graph::ordered(a, b);
            if a != b && !edges.iter().any(|&x| crate::graph::ordered(x.0, x.1) == e) {
                edges.push(e);
            }
        }
        ConnectivityGraph::new(n, edges).unwrap()
    }

    proptest! {
        #[test]
        fn random_graphs_are_partitioned(
            n in 2usize..12,
            parents in prop::collection::vec(0usize..100, 11),
            extra in prop::collection::vec((0usize..100, 0usize..100), 0..20),
        ) {
            let g = random_connected(n, &extra, &parents);
            let c = edge_color(&g);
            assert_partition(&g, &c);
            prop_assert!(c.len() <= g.max_degree() + 1);

            let colors = misra_gries(&g);
            prop_assert!(palette_size(&colors) <= g.max_degree() + 1);
            let mut classes = vec![Vec::new(); palette_size(&colors)];
            for (e, &k) in g.edges().iter().zip(&colors) {
                classes[k].push(*e);
            }
            assert_partition(&g, &classes);
        }
    }
}
