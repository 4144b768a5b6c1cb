//! Incidence structures: symmetric designs, partial geometric designs and
//! symmetric transversal designs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::GroupTable;
use crate::report::Verdict;

/// Points `0..point_count` and a list of blocks (kept in order, with multiplicity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    point_count: usize,
    blocks: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub n: usize,
    pub k: usize,
    pub mu: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PgdParams {
    pub n: usize,
    pub k: usize,
    pub alpha: usize,
    pub beta: usize,
}

/// `STD_μ[rμ; r]`: `rμ` point classes of size `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalParams {
    pub mu: usize,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignFile {
    pub points: usize,
    pub blocks: Vec<Vec<usize>>,
}

/// Blocks `{D h : h ∈ H}`, labeled by `h` in element order.
pub fn development(h: &GroupTable, d: &[usize]) -> Result<IncidenceStructure> {
    if let Some(&x) = d.iter().find(|&&x| x >= h.order()) {
        return Err(Error::UnknownElement(x.to_string()));
    }
    let mut base = d.to_vec();
    base.sort_unstable();
    base.dedup();
    let blocks = h.elements().map(|x| h.right_translate(&base, x)).collect();
    Ok(IncidenceStructure { point_count: h.order(), blocks })
}

impl IncidenceStructure {
    pub fn new(point_count: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut clean = Vec::with_capacity(blocks.len());
        for (i, mut b) in blocks.into_iter().enumerate() {
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!("block {i} repeats a point")));
            }
            if b.last().is_some_and(|&p| p >= point_count) {
                return Err(Error::InvalidParameter(format!("block {i} has a point out of range")));
            }
            clean.push(b);
        }
        Ok(IncidenceStructure { point_count, blocks: clean })
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    fn incidence_rows(&self) -> Vec<Vec<bool>> {
        let mut rows = vec![vec![false; self.point_count]; self.blocks.len()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &p in b {
                rows[i][p] = true;
            }
        }
        rows
    }

    /// `λ(p, q)`: number of blocks through both points.
    pub fn pair_counts(&self) -> Vec<Vec<usize>> {
        let n = self.point_count;
        let mut lam = vec![vec![0usize; n]; n];
        for b in &self.blocks {
            for &p in b {
                for &q in b {
                    lam[p][q] += 1;
                }
            }
        }
        lam
    }

    fn constant_block_size(&self) -> Option<usize> {
        let k = self.blocks.first().map(Vec::len)?;
        self.blocks.iter().all(|b| b.len() == k).then_some(k)
    }

    /// Square (as many blocks as points) with constant block size and replication.
    fn square_uniform(&self) -> std::result::Result<usize, String> {
        if self.blocks.len() != self.point_count {
            return Err(format!("{} blocks but {} points", self.blocks.len(), self.point_count));
        }
        let k = self.constant_block_size().ok_or("block sizes vary")?;
        let lam = self.pair_counts();
        if let Some(p) = (0..self.point_count).find(|&p| lam[p][p] != k) {
            return Err(format!("point {p} lies in {} blocks, not {k}", lam[p][p]));
        }
        Ok(k)
    }

    pub fn is_symmetric_2_design(&self) -> Verdict<DesignParams> {
        let k = match self.square_uniform() {
            Ok(k) => k,
            Err(e) => return Verdict::fail(e),
        };
        if k < 2 {
            return Verdict::fail(format!("block size {k} < 2"));
        }
        let n = self.point_count;
        let lam = self.pair_counts();
        let mu = lam[0][1];
        for p in 0..n {
            for q in p + 1..n {
                if lam[p][q] != mu {
                    return Verdict::fail(format!(
                        "points {p},{q} lie in {} blocks; points 0,1 lie in {mu}",
                        lam[p][q]
                    ));
                }
            }
        }
        debug_assert_eq!(k * (k - 1), (n - 1) * mu);
        DesignParams { n, k, mu }.into()
    }

    /// Counts, for each point-block pair `(p, B)`, the pairs `(p', B')` with
    /// `p' ≠ p`, `B' ≠ B`, `p' ∈ B`, `p ∈ B'` and `p' ∈ B'`; this must be a
    /// constant `β` on flags and `α` on anti-flags.
    pub fn is_partial_geometric(&self) -> Verdict<PgdParams> {
        let k = match self.square_uniform() {
            Ok(k) => k,
            Err(e) => return Verdict::fail(e),
        };
        let lam = self.pair_counts();
        let rows = self.incidence_rows();
        let (mut alpha, mut beta) = (None, None);
        for (bi, b) in self.blocks.iter().enumerate() {
            for p in 0..self.point_count {
                let flag = rows[bi][p];
                let count: usize = if flag {
                    b.iter().filter(|&&q| q != p).map(|&q| lam[p][q] - 1).sum()
                } else {
                    b.iter().map(|&q| lam[p][q]).sum()
                };
                let (slot, name) = if flag { (&mut beta, "beta") } else { (&mut alpha, "alpha") };
                match *slot {
                    None => *slot = Some(count),
                    Some(x) if x != count => {
                        return Verdict::fail(format!(
                            "{name} varies: {x} and {count} (point {p}, block {bi})"
                        ));
                    }
                    _ => {}
                }
            }
        }
        PgdParams {
            n: self.point_count,
            k,
            alpha: alpha.unwrap_or(0),
            beta: beta.unwrap_or(0),
        }
        .into()
    }

    /// Every two points lie in `0` or `μ` common blocks and every two blocks
    /// share `0` or `μ` points.
    pub fn is_partial_mu_geometric(&self, mu: usize) -> Verdict<()> {
        if mu == 0 {
            return Verdict::fail("μ must be positive");
        }
        for (side, s) in [("points", self.clone()), ("blocks", self.dual())] {
            let lam = s.pair_counts();
            for p in 0..s.point_count {
                for q in p + 1..s.point_count {
                    if lam[p][q] != 0 && lam[p][q] != mu {
                        return Verdict::fail(format!("{side} {p},{q} meet {} times", lam[p][q]));
                    }
                }
            }
        }
        ().into()
    }

    /// Infers `r` from the classes of mutually disjoint points and checks the
    /// transversal-design conditions on both sides.
    pub fn is_symmetric_transversal(&self) -> Verdict<TransversalParams> {
        let k = match self.square_uniform() {
            Ok(k) => k,
            Err(e) => return Verdict::fail(e),
        };
        let mut found: Option<(usize, usize)> = None;
        for (side, s) in [("point", self.clone()), ("block", self.dual())] {
            let lam = s.pair_counts();
            let n = s.point_count;
            let class = |p: usize| -> Vec<usize> { (0..n).filter(|&q| q == p || lam[p][q] == 0).collect() };
            let r = class(0).len();
            if r < 2 {
                return Verdict::fail(format!("no {side} pair meets in 0 blocks"));
            }
            let mut mu = None;
            for p in 0..n {
                let cp = class(p);
                if cp.len() != r || cp.iter().any(|&q| class(q) != cp) {
                    return Verdict::fail(format!("disjointness is not an equivalence with classes of size {r} at {side} {p}"));
                }
                for q in p + 1..n {
                    if lam[p][q] != 0 {
                        match mu {
                            None => mu = Some(lam[p][q]),
                            Some(m) if m != lam[p][q] => {
                                return Verdict::fail(format!("{side}s {p},{q} meet {} times, others {m}", lam[p][q]));
                            }
                            _ => {}
                        }
                    }
                }
            }
            let Some(mu) = mu else {
                return Verdict::fail("all pairs are disjoint");
            };
            if found.is_some_and(|f| f != (mu, r)) {
                return Verdict::fail("point and block sides disagree");
            }
            found = Some((mu, r));
        }
        let (mu, r) = found.unwrap();
        if k != r * mu || self.point_count != k * r {
            return Verdict::fail(format!("k={k}, r={r}, μ={mu} violate k=rμ, n=kr"));
        }
        TransversalParams { mu, r }.into()
    }

    /// Transpose of the incidence relation: block `i` becomes point `i`.
    pub fn dual(&self) -> IncidenceStructure {
        let mut blocks = vec![Vec::new(); self.point_count];
        for (i, b) in self.blocks.iter().enumerate() {
            for &p in b {
                blocks[p].push(i);
            }
        }
        IncidenceStructure { point_count: self.blocks.len(), blocks }
    }

    pub fn complement(&self) -> IncidenceStructure {
        let blocks = self
            .blocks
            .iter()
            .map(|b| (0..self.point_count).filter(|p| b.binary_search(p).is_err()).collect())
            .collect();
        IncidenceStructure { point_count: self.point_count, blocks }
    }

    /// Bipartite incidence graph; points first, then blocks.
    pub fn incidence_graph(&self) -> Graph {
        Graph::incidence(self.point_count, &self.blocks).expect("blocks are validated")
    }

    /// Equality up to reordering blocks.
    pub fn same_blocks(&self, other: &IncidenceStructure) -> bool {
        self.to_file() == other.to_file()
    }

    pub fn to_file(&self) -> DesignFile {
        let mut blocks = self.blocks.clone();
        blocks.sort();
        DesignFile { points: self.point_count, blocks }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("design serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: DesignFile = serde_json::from_str(text)?;
        IncidenceStructure::new(f.points, f.blocks)
    }
}
