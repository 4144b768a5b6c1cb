//! Backtracking isomorphism test for small connected graphs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const ISOMORPHISM_VERTEX_LIMIT: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Isomorphism {
    /// `map[v]` is the image in the second graph of vertex `v` of the first.
    Isomorphic { map: Vec<usize> },
    /// The search space was exhausted after visiting `nodes` partial maps.
    NotIsomorphic { nodes: u64 },
}

struct Search<'a> {
    g2: &'a Graph,
    d1: Vec<Vec<usize>>,
    d2: Vec<Vec<usize>>,
    profile1: Vec<Vec<usize>>,
    profile2: Vec<Vec<usize>>,
    order: Vec<usize>,
    parent: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
}

/// Searches for an adjacency-preserving bijection `g1 -> g2`.
///
/// Vertices of `g1` are mapped in breadth-first order; each candidate image is
/// a neighbor of its parent's image with the same distance profile and the
/// same distances to every vertex already mapped.
pub fn are_isomorphic_small(g1: &Graph, g2: &Graph) -> Result<Isomorphism> {
    let n = g1.order();
    if n > ISOMORPHISM_VERTEX_LIMIT || g2.order() > ISOMORPHISM_VERTEX_LIMIT {
        return Err(Error::TooLarge(format!(
            "isomorphism search is limited to {ISOMORPHISM_VERTEX_LIMIT} vertices"
        )));
    }
    let no = Ok(Isomorphism::NotIsomorphic { nodes: 0 });
    if n != g2.order() || g1.edge_count() != g2.edge_count() {
        return no;
    }
    if n == 0 {
        return Ok(Isomorphism::Isomorphic { map: Vec::new() });
    }
    if !g1.is_connected() || !g2.is_connected() {
        if g1.is_connected() != g2.is_connected() {
            return no;
        }
        return Err(Error::Precondition("isomorphism search needs connected graphs".into()));
    }
    let d1 = g1.distance_matrix();
    let d2 = g2.distance_matrix();
    let profile = |d: &[Vec<usize>]| -> Vec<Vec<usize>> {
        d.iter()
            .map(|row| {
                let mut counts = vec![0usize; n];
                for &x in row {
                    counts[x] += 1;
                }
                counts
            })
            .collect()
    };
    let (profile1, profile2) = (profile(&d1), profile(&d2));
    let mut sorted1 = profile1.clone();
    let mut sorted2 = profile2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return no;
    }
    let mut order = vec![0usize];
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        for &w in g1.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                order.push(w);
            }
        }
        head += 1;
    }
    let mut s = Search {
        g2,
        d1,
        d2,
        profile1,
        profile2,
        order,
        parent,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        nodes: 0,
    };
    for root_image in 0..n {
        if s.profile1[0] != s.profile2[root_image] {
            continue;
        }
        s.assign(0, root_image);
        if s.extend(1) {
            let map = s.map.clone();
            debug_assert!(is_isomorphism(g1, g2, &map));
            return Ok(Isomorphism::Isomorphic { map });
        }
        s.unassign(0, root_image);
    }
    Ok(Isomorphism::NotIsomorphic { nodes: s.nodes })
}

impl Search<'_> {
    fn assign(&mut self, v: usize, w: usize) {
        self.map[v] = w;
        self.used[w] = true;
        self.nodes += 1;
    }

    fn unassign(&mut self, v: usize, w: usize) {
        self.map[v] = usize::MAX;
        self.used[w] = false;
    }

    fn consistent(&self, depth: usize, w: usize) -> bool {
        let v = self.order[depth];
        self.profile1[v] == self.profile2[w]
            && self.order[..depth]
                .iter()
                .all(|&u| self.d1[v][u] == self.d2[w][self.map[u]])
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let anchor = self.map[self.parent[v]];
        let candidates: Vec<usize> = self.g2.neighbors(anchor).to_vec();
        for w in candidates {
            if self.used[w] || !self.consistent(depth, w) {
                continue;
            }
            self.assign(v, w);
            if self.extend(depth + 1) {
                return true;
            }
            self.unassign(v, w);
        }
        false
    }
}

/// Checks that `map` is a bijection carrying edges onto edges.
pub fn is_isomorphism(g1: &Graph, g2: &Graph, map: &[usize]) -> bool {
    if map.len() != g1.order() || g1.order() != g2.order() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let mut hit = vec![false; g2.order()];
    for &w in map {
        if w >= g2.order() || hit[w] {
            return false;
        }
        hit[w] = true;
    }
    g1.edges().all(|(u, v)| g2.has_edge(map[u], map[v]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize, step: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + step) % n))).unwrap()
    }

    #[test]
    fn self_isomorphism() {
        let g = cycle(6, 1);
        match are_isomorphic_small(&g, &g).unwrap() {
            Isomorphism::Isomorphic { map } => assert!(is_isomorphism(&g, &g, &map)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn relabelled_cycle() {
        let (a, b) = (cycle(7, 1), cycle(7, 3));
        assert!(matches!(are_isomorphic_small(&a, &b).unwrap(), Isomorphism::Isomorphic { .. }));
    }

    #[test]
    fn cube_versus_moebius_ladder() {
        // 3-cube vs. the Möbius ladder: both cubic on 8 vertices.
        let cube = Graph::from_edges(
            8,
            (0..8usize).flat_map(|v| (0..3).map(move |i| (v, v ^ (1 << i)))),
        )
        .unwrap();
        let ladder = Graph::from_edges(8, (0..8).flat_map(|i| [(i, (i + 1) % 8), (i, (i + 4) % 8)])).unwrap();
        assert!(matches!(
            are_isomorphic_small(&cube, &ladder).unwrap(),
            Isomorphism::NotIsomorphic { .. }
        ));
    }

    #[test]
    fn guard() {
        let big = cycle(200, 1);
        assert!(are_isomorphic_small(&big, &big).is_err());
    }
}
