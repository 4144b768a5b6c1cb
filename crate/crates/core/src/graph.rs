//! Simple undirected graphs on vertices `0..n` and their distance structure.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::array::IntersectionArray;
use crate::error::{Error, Result};

const UNREACHED: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Bipartition {
    /// The part containing the base vertex comes first.
    Parts { first: Vec<usize>, second: Vec<usize> },
    /// A closed walk of odd length, given as a cycle of vertices.
    OddCycle { cycle: Vec<usize> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Girth {
    Exact(usize),
    /// No cycle of length at most 12 exists.
    AtLeast(usize),
}

/// Why a graph failed to be distance-regular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityCounterexample {
    pub base: usize,
    pub vertex: usize,
    pub distance: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DistanceRegularity {
    Regular { array: IntersectionArray },
    NotRegular { counterexample: RegularityCounterexample },
}

impl DistanceRegularity {
    pub fn array(&self) -> Option<&IntersectionArray> {
        match self {
            DistanceRegularity::Regular { array } => Some(array),
            DistanceRegularity::NotRegular { .. } => None,
        }
    }
}

const GIRTH_CAP: usize = 12;

impl Graph {
    /// Builds a graph from neighbor lists, checking symmetry and the absence of loops.
    pub fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Result<Self> {
        let n = adj.len();
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.binary_search(&v).is_ok() {
                return Err(Error::InvalidParameter(format!("loop at vertex {v}")));
            }
            if let Some(&w) = list.iter().find(|&&w| w >= n) {
                return Err(Error::InvalidParameter(format!("neighbor {w} out of range")));
            }
        }
        let g = Graph { adj };
        for v in 0..n {
            for &w in &g.adj[v] {
                if !g.has_edge(w, v) {
                    return Err(Error::InvalidParameter(format!("edge {v}-{w} is not symmetric")));
                }
            }
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!("edge {u}-{v} out of range")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Graph::from_adjacency(adj)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Common valency, if the graph is regular.
    pub fn valency(&self) -> Option<usize> {
        let k = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == k).then_some(k)
    }

    /// Breadth-first distances; unreachable vertices get `None`.
    pub fn distances_from(&self, v: usize) -> Vec<Option<usize>> {
        self.raw_distances(v)
            .into_iter()
            .map(|d| (d != UNREACHED).then_some(d))
            .collect()
    }

    fn raw_distances(&self, v: usize) -> Vec<usize> {
        let mut dist = vec![UNREACHED; self.order()];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == UNREACHED {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// All pairwise distances (`usize::MAX` when unreachable).
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.order()).into_par_iter().map(|v| self.raw_distances(v)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.raw_distances(0).iter().all(|&d| d != UNREACHED)
    }

    /// Distance shells around `v`.
    pub fn distance_partition(&self, v: usize) -> Result<Vec<Vec<usize>>> {
        let dist = self.raw_distances(v);
        if let Some(u) = dist.iter().position(|&d| d == UNREACHED) {
            return Err(Error::Disconnected { from: v, unreachable: u });
        }
        let d = dist.iter().copied().max().unwrap_or(0);
        let mut shells = vec![Vec::new(); d + 1];
        for (u, &du) in dist.iter().enumerate() {
            shells[du].push(u);
        }
        Ok(shells)
    }

    pub fn diameter(&self) -> Result<usize> {
        let mut d = 0;
        for v in 0..self.order() {
            d = d.max(self.distance_partition(v)?.len() - 1);
        }
        Ok(d)
    }

    /// Two-colouring of the component of `base`, or an odd cycle.
    pub fn bipartition(&self, base: usize) -> Bipartition {
        let n = self.order();
        let mut colour = vec![UNREACHED; n];
        let mut parent = vec![UNREACHED; n];
        let mut starts: Vec<usize> = vec![base];
        starts.extend((0..n).filter(|&v| v != base));
        for s in starts {
            if colour[s] != UNREACHED {
                continue;
            }
            colour[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if colour[y] == UNREACHED {
                        colour[y] = 1 - colour[x];
                        parent[y] = x;
                        queue.push_back(y);
                    } else if colour[y] == colour[x] {
                        return Bipartition::OddCycle { cycle: odd_cycle(&parent, x, y) };
                    }
                }
            }
        }
        let first = (0..n).filter(|&v| colour[v] == 0).collect();
        let second = (0..n).filter(|&v| colour[v] == 1).collect();
        Bipartition::Parts { first, second }
    }

    pub fn is_bipartite(&self) -> bool {
        self.order() == 0 || matches!(self.bipartition(0), Bipartition::Parts { .. })
    }

    /// Length of a shortest cycle, searched up to length 12.
    pub fn girth(&self) -> Girth {
        let best = (0..self.order())
            .into_par_iter()
            .filter_map(|r| self.shortest_cycle_through(r))
            .min();
        match best {
            Some(g) if g <= GIRTH_CAP => Girth::Exact(g),
            _ => Girth::AtLeast(GIRTH_CAP + 1),
        }
    }

    fn shortest_cycle_through(&self, root: usize) -> Option<usize> {
        let n = self.order();
        let mut dist = vec![UNREACHED; n];
        let mut parent = vec![UNREACHED; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        let mut best: Option<usize> = None;
        while let Some(x) = queue.pop_front() {
            if 2 * dist[x] + 1 > GIRTH_CAP {
                break;
            }
            for &y in &self.adj[x] {
                if dist[y] == UNREACHED {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let len = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
        best
    }

    /// Measures `b_i` and `c_i` around each base vertex and checks they agree.
    pub fn distance_regularity_from(&self, bases: &[usize]) -> Result<DistanceRegularity> {
        let results: Vec<Result<std::result::Result<IntersectionArray, RegularityCounterexample>>> =
            bases.par_iter().map(|&v| self.array_around(v)).collect();
        let mut reference: Option<(usize, IntersectionArray)> = None;
        for (&v, r) in bases.iter().zip(results) {
            match r? {
                Err(counterexample) => {
                    return Ok(DistanceRegularity::NotRegular { counterexample });
                }
                Ok(array) => match &reference {
                    None => reference = Some((v, array)),
                    Some((v0, a0)) if *a0 != array => {
                        return Ok(DistanceRegularity::NotRegular {
                            counterexample: RegularityCounterexample {
                                base: v,
                                vertex: v,
                                distance: 0,
                                detail: format!("array {array} around {v} differs from {a0} around {v0}"),
                            },
                        });
                    }
                    Some(_) => {}
                },
            }
        }
        let (_, array) = reference.ok_or_else(|| Error::InvalidParameter("no base vertices".into()))?;
        if let Err(e) = array.validate() {
            return Ok(DistanceRegularity::NotRegular {
                counterexample: RegularityCounterexample {
                    base: bases[0],
                    vertex: bases[0],
                    distance: 0,
                    detail: format!("measured array {array} is infeasible: {e}"),
                },
            });
        }
        Ok(DistanceRegularity::Regular { array })
    }

    /// All-pairs distance-regularity check.
    pub fn distance_regularity(&self) -> Result<DistanceRegularity> {
        let all: Vec<usize> = (0..self.order()).collect();
        self.distance_regularity_from(&all)
    }

    fn array_around(&self, v: usize) -> Result<std::result::Result<IntersectionArray, RegularityCounterexample>> {
        let dist = self.raw_distances(v);
        if let Some(u) = dist.iter().position(|&d| d == UNREACHED) {
            return Err(Error::Disconnected { from: v, unreachable: u });
        }
        let d = dist.iter().copied().max().unwrap_or(0);
        let mut b: Vec<Option<u64>> = vec![None; d];
        let mut c: Vec<Option<u64>> = vec![None; d];
        let k = self.degree(v) as u64;
        for u in 0..self.order() {
            let i = dist[u];
            let (mut down, mut up) = (0u64, 0u64);
            let mut same = 0u64;
            for &w in &self.adj[u] {
                match dist[w] {
                    x if x + 1 == i => down += 1,
                    x if x == i + 1 => up += 1,
                    _ => same += 1,
                }
            }
            if down + up + same != k {
                return Ok(Err(RegularityCounterexample {
                    base: v,
                    vertex: u,
                    distance: i,
                    detail: format!("degree {} differs from {k}", down + up + same),
                }));
            }
            for (slot, value, name, idx) in [
                (i.checked_sub(1).map(|j| &mut c[j]), down, "c", i),
                (if i < d { Some(&mut b[i]) } else { None }, up, "b", i),
            ] {
                if let Some(slot) = slot {
                    match *slot {
                        None => *slot = Some(value),
                        Some(prev) if prev != value => {
                            return Ok(Err(RegularityCounterexample {
                                base: v,
                                vertex: u,
                                distance: idx,
                                detail: format!("{name}_{idx} takes values {prev} and {value}"),
                            }));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(Ok(IntersectionArray::measured(
            b.into_iter().map(Option::unwrap).collect(),
            c.into_iter().map(Option::unwrap).collect(),
        )))
    }

    /// Graph on the same vertices joining pairs at distance exactly `i`.
    pub fn distance_graph(&self, i: usize) -> Graph {
        let adj = (0..self.order())
            .into_par_iter()
            .map(|v| {
                self.raw_distances(v)
                    .iter()
                    .enumerate()
                    .filter(|&(_, &d)| d == i && i > 0)
                    .map(|(u, _)| u)
                    .collect()
            })
            .collect();
        Graph { adj }
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![UNREACHED; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> =
                    self.adj[v].iter().filter(|&&w| local[w] != UNREACHED).map(|&w| local[w]).collect();
                l.sort_unstable();
                l
            })
            .collect();
        Graph { adj }
    }

    /// Distance-2 graphs on the two colour classes, with their vertex lists.
    pub fn halved_graphs(&self) -> Result<[(Graph, Vec<usize>); 2]> {
        if self.order() == 0 {
            return Err(Error::Precondition("empty graph".into()));
        }
        match self.bipartition(0) {
            Bipartition::OddCycle { .. } => Err(Error::Precondition("graph is not bipartite".into())),
            Bipartition::Parts { first, second } => {
                let d2 = self.distance_graph(2);
                Ok([(d2.induced(&first), first), (d2.induced(&second), second)])
            }
        }
    }

    /// `(n, k, λ, μ)` if the graph is strongly regular (connected, not complete).
    pub fn strongly_regular_parameters(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.order();
        let k = self.valency()?;
        if n < 2 || k == 0 || k + 1 == n {
            return None;
        }
        let (mut lambda, mut mu) = (None, None);
        for u in 0..n {
            for v in u + 1..n {
                let common = count_common(&self.adj[u], &self.adj[v]);
                let slot = if self.has_edge(u, v) { &mut lambda } else { &mut mu };
                match *slot {
                    None => *slot = Some(common),
                    Some(x) if x != common => return None,
                    _ => {}
                }
            }
        }
        Some((n, k, lambda?, mu?))
    }

    /// Classes of the relation "equal or at distance `d`", if it is an equivalence.
    pub fn antipodal_classes(&self, d: usize) -> Option<Vec<Vec<usize>>> {
        let dm = self.distance_matrix();
        let n = self.order();
        let class_of = |x: usize| -> Vec<usize> { (0..n).filter(|&y| y == x || dm[x][y] == d).collect() };
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let cls = class_of(x);
            for &y in &cls {
                if class_of(y) != cls {
                    return None;
                }
                seen[y] = true;
            }
            classes.push(cls);
        }
        Some(classes)
    }

    /// Lexicographically smallest pair of distinct vertices with equal neighborhoods.
    pub fn twin_vertices(&self) -> Option<(usize, usize)> {
        let mut first_with: BTreeMap<&[usize], usize> = BTreeMap::new();
        let mut best: Option<(usize, usize)> = None;
        for v in 0..self.order() {
            match first_with.get(self.adj[v].as_slice()) {
                Some(&u) => {
                    if best.is_none_or(|b| (u, v) < b) {
                        best = Some((u, v));
                    }
                }
                None => {
                    first_with.insert(&self.adj[v], v);
                }
            }
        }
        best
    }

    /// Neighbor counts between the cells of a partition of the vertex set.
    pub fn quotient_matrix(&self, cells: &[Vec<usize>]) -> Result<QuotientMatrix> {
        let n = self.order();
        let mut cell_of = vec![UNREACHED; n];
        for (i, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::InvalidParameter(format!("cell {i} is empty")));
            }
            for &v in cell {
                if v >= n || cell_of[v] != UNREACHED {
                    return Err(Error::InvalidParameter(format!("vertex {v} is out of range or repeated")));
                }
                cell_of[v] = i;
            }
        }
        if let Some(v) = cell_of.iter().position(|&c| c == UNREACHED) {
            return Err(Error::InvalidParameter(format!("vertex {v} is in no cell")));
        }
        let m = cells.len();
        let mut matrix = vec![vec![Ratio::from_integer(0i64); m]; m];
        let mut equitable = true;
        for (i, cell) in cells.iter().enumerate() {
            let mut totals = vec![0i64; m];
            let mut first: Option<Vec<i64>> = None;
            for &v in cell {
                let mut counts = vec![0i64; m];
                for &w in &self.adj[v] {
                    counts[cell_of[w]] += 1;
                }
                for j in 0..m {
                    totals[j] += counts[j];
                }
                match &first {
                    None => first = Some(counts),
                    Some(f) if *f != counts => equitable = false,
                    _ => {}
                }
            }
            for j in 0..m {
                matrix[i][j] = Ratio::new(totals[j], cell.len() as i64);
            }
        }
        Ok(QuotientMatrix { matrix, equitable })
    }

    /// Graphviz rendering; `labels` replaces vertex numbers when given.
    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let name = |v: usize| labels.map_or_else(|| v.to_string(), |l| l[v].clone());
        let mut out = String::from("graph G {\n");
        for v in 0..self.order() {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", name(v).replace('"', "\\\""));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    /// Incidence graph: points `0..points`, then one vertex per block.
    pub fn incidence(points: usize, blocks: &[Vec<usize>]) -> Result<Graph> {
        let edges = blocks
            .iter()
            .enumerate()
            .flat_map(|(b, block)| block.iter().map(move |&p| (p, points + b)));
        Graph::from_edges(points + blocks.len(), edges)
    }
}

fn count_common(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Cycle through the tree paths to `x` and `y` plus the edge `x y`.
fn odd_cycle(parent: &[usize], x: usize, y: usize) -> Vec<usize> {
    let path = |mut v: usize| {
        let mut p = vec![v];
        while parent[v] != UNREACHED {
            v = parent[v];
            p.push(v);
        }
        p
    };
    let (px, py) = (path(x), path(y));
    let common = px.iter().rev().zip(py.iter().rev()).take_while(|(a, b)| a == b).count();
    let mut cycle: Vec<usize> = px[..=px.len() - common].to_vec();
    cycle.extend(py[..py.len() - common].iter().rev());
    cycle
}

/// Cell-to-cell neighbor counts, averaged over each source cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub matrix: Vec<Vec<Ratio<i64>>>,
    pub equitable: bool,
}

impl QuotientMatrix {
    /// Integer entries, if the partition is equitable.
    pub fn integer_matrix(&self) -> Option<Vec<Vec<i64>>> {
        if !self.equitable {
            return None;
        }
        self.matrix
            .iter()
            .map(|row| row.iter().map(|r| r.is_integer().then(|| r.to_integer())).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete_bipartite(n: usize) -> Graph {
        Graph::from_edges(2 * n, (0..n).flat_map(|i| (0..n).map(move |j| (i, n + j)))).unwrap()
    }

    #[test]
    fn cycle_is_distance_regular() {
        let g = cycle(8);
        let a = g.distance_regularity().unwrap();
        assert_eq!(a.array().unwrap().to_string(), "{2,1,1,1;1,1,1,2}");
        assert_eq!(g.girth(), Girth::Exact(8));
        assert_eq!(g.antipodal_classes(4).unwrap().len(), 4);
    }

    #[test]
    fn odd_cycle_witness() {
        match cycle(7).bipartition(0) {
            Bipartition::OddCycle { cycle } => {
                assert_eq!(cycle.len() % 2, 1);
                let g = self::cycle(7);
                for i in 0..cycle.len() {
                    assert!(g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
                }
            }
            other => panic!("expected an odd cycle, got {other:?}"),
        }
    }

    #[test]
    fn long_cycles_exceed_girth_cap() {
        assert_eq!(cycle(14).girth(), Girth::AtLeast(13));
        assert_eq!(cycle(12).girth(), Girth::Exact(12));
    }

    #[test]
    fn complete_bipartite_twins() {
        assert_eq!(complete_bipartite(3).twin_vertices(), Some((0, 1)));
        assert_eq!(cycle(6).twin_vertices(), None);
    }

    #[test]
    fn path_is_not_distance_regular() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(g.distance_regularity().unwrap(), DistanceRegularity::NotRegular { .. }));
    }

    #[test]
    fn disconnected_shells() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(matches!(g.distance_partition(0), Err(Error::Disconnected { unreachable: 2, .. })));
    }

    #[test]
    fn trivial_quotient() {
        let g = cycle(5);
        let q = g.quotient_matrix(&[(0..5).collect()]).unwrap();
        assert!(q.equitable);
        assert_eq!(q.integer_matrix().unwrap(), vec![vec![2]]);
    }

    #[test]
    fn distance_one_graph_is_identity() {
        let g = cycle(6);
        assert_eq!(g.distance_graph(1), g);
        assert_eq!(g.distance_graph(9).edge_count(), 0);
    }

    #[test]
    fn petersen_is_strongly_regular() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap();
        assert_eq!(g.strongly_regular_parameters(), Some((10, 3, 0, 1)));
    }

    #[test]
    fn halved_four_cube_is_k2222() {
        let cube = Graph::from_edges(16, (0..16).flat_map(|v| (0..4).map(move |i| (v, v ^ (1 << i)))).filter(|&(u, v)| u < v)).unwrap();
        for (half, vertices) in cube.halved_graphs().unwrap() {
            assert_eq!(vertices.len(), 8);
            assert_eq!(half.strongly_regular_parameters(), Some((8, 6, 4, 6)));
        }
    }

    #[test]
    fn rejects_asymmetric_adjacency() {
        assert!(Graph::from_adjacency(vec![vec![1], vec![]]).is_err());
        assert!(Graph::from_adjacency(vec![vec![0]]).is_err());
    }
}
