//! Cayley graphs `Cay(G, S)`: `a ~ b` iff `a b^-1 ∈ S`.

use std::sync::Arc;

use serde::Serialize;

use crate::array::IntersectionArray;
use crate::error::{Error, Result};
use crate::graph::{Bipartition, DistanceRegularity, Girth, Graph};
use crate::group::{GroupTable, Subgroup};
use crate::spectrum::{self, Factor};

#[derive(Clone, Debug)]
pub struct CayleyGraph {
    group: Arc<GroupTable>,
    connection_set: Vec<usize>,
    graph: Graph,
}

/// Validates `S` and builds the graph; the neighbors of `b` are `{s b : s ∈ S}`.
pub fn build_cayley(group: Arc<GroupTable>, set: &[usize]) -> Result<CayleyGraph> {
    let mut s: Vec<usize> = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&x) = s.iter().find(|&&x| x >= group.order()) {
        return Err(Error::UnknownElement(x.to_string()));
    }
    if s.binary_search(&group.identity()).is_ok() {
        return Err(Error::IdentityInConnectionSet);
    }
    if let Some(&x) = s.iter().find(|&&x| s.binary_search(&group.inv(x)).is_err()) {
        return Err(Error::NotInverseClosed { element: x, inverse: group.inv(x) });
    }
    let adj = (0..group.order())
        .map(|b| s.iter().map(|&x| group.mul(x, b)).collect())
        .collect();
    let graph = Graph::from_adjacency(adj)?;
    Ok(CayleyGraph { group, connection_set: s, graph })
}

/// Summary used by reports and the command line.
#[derive(Clone, Debug, Serialize)]
pub struct CayleyReport {
    pub order: usize,
    pub valency: usize,
    pub connected: bool,
    pub bipartite: bool,
    pub girth: Girth,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection_array: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regularity_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antipodal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twins: Option<(String, String)>,
    pub annihilation_results: Vec<AnnihilationResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnihilationResult {
    pub polynomial: String,
    pub holds: bool,
}

impl CayleyGraph {
    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<GroupTable> {
        Arc::clone(&self.group)
    }

    pub fn connection_set(&self) -> &[usize] {
        &self.connection_set
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn valency(&self) -> usize {
        self.connection_set.len()
    }

    pub fn is_connected(&self) -> bool {
        self.group.generated_subgroup(&self.connection_set).order() == self.group.order()
    }

    /// Distance shells `S_0, S_1, ...` around the identity.
    pub fn shells(&self) -> Result<Vec<Vec<usize>>> {
        self.graph.distance_partition(self.group.identity())
    }

    /// Distance-regularity, measured around the identity only (the graph is
    /// vertex-transitive).
    pub fn distance_regularity(&self) -> Result<DistanceRegularity> {
        self.graph.distance_regularity_from(&[self.group.identity()])
    }

    pub fn intersection_array(&self) -> Result<Option<IntersectionArray>> {
        Ok(self.distance_regularity()?.array().cloned())
    }

    /// The identity's colour class, certified as a normal subgroup of index 2.
    pub fn part_subgroup(&self) -> Result<Subgroup> {
        if !self.is_connected() {
            let shells = self.graph.distances_from(self.group.identity());
            let u = shells.iter().position(Option::is_none).unwrap_or(0);
            return Err(Error::Disconnected { from: self.group.identity(), unreachable: u });
        }
        match self.graph.bipartition(self.group.identity()) {
            Bipartition::OddCycle { .. } => Err(Error::Precondition("graph is not bipartite".into())),
            Bipartition::Parts { first, .. } => {
                let h = Subgroup::new(&self.group, &first)
                    .map_err(|e| Error::Inconsistency(format!("identity's part is not a subgroup: {e}")))?;
                if h.order() * 2 != self.group.order() || !self.group.is_normal(&h)? {
                    return Err(Error::Inconsistency("identity's part is not normal of index 2".into()));
                }
                Ok(h)
            }
        }
    }

    /// Antipodal classes for diameter `d`, and whether `S_d ∪ {e}` is a
    /// subgroup; both tests must agree.
    pub fn antipodal(&self, d: usize) -> Result<Option<Vec<Vec<usize>>>> {
        let classes = self.graph.antipodal_classes(d);
        let shells = self.shells()?;
        let subgroup_test = shells.len() == d + 1 && {
            let mut n: Vec<usize> = shells[d].clone();
            n.push(self.group.identity());
            Subgroup::new(&self.group, &n).is_ok()
        };
        if classes.is_some() != subgroup_test {
            return Err(Error::Inconsistency(
                "antipodality and the subgroup test on S_d ∪ {e} disagree".into(),
            ));
        }
        Ok(classes)
    }

    pub fn twin_vertices(&self) -> Option<(usize, usize)> {
        self.graph.twin_vertices()
    }

    /// Right translation `x -> x g` must preserve adjacency.
    pub fn right_translation_preserves_edges(&self, g: usize) -> bool {
        self.graph
            .edges()
            .all(|(u, v)| self.graph.has_edge(self.group.mul(u, g), self.group.mul(v, g)))
    }

    pub fn report(&self) -> Result<CayleyReport> {
        let connected = self.is_connected();
        let bipartite = self.graph.is_bipartite();
        let girth = self.graph.girth();
        let twins = self
            .twin_vertices()
            .map(|(u, v)| (self.group.label(u).to_string(), self.group.label(v).to_string()));
        let mut report = CayleyReport {
            order: self.group.order(),
            valency: self.valency(),
            connected,
            bipartite,
            girth,
            intersection_array: None,
            regularity_failure: None,
            antipodal: None,
            twins,
            annihilation_results: Vec::new(),
        };
        if !connected {
            return Ok(report);
        }
        match self.distance_regularity()? {
            DistanceRegularity::Regular { array } => {
                let d = array.diameter();
                report.antipodal = Some(self.antipodal(d)?.is_some());
                let p = spectrum::array_polynomial(&array);
                report.annihilation_results.push(AnnihilationResult {
                    polynomial: format!("charpoly of intersection matrix of {array}"),
                    holds: spectrum::annihilated_by(&self.graph, &p),
                });
                if bipartite && d == 3 {
                    let k = array.valency() as i64;
                    let mu = array.mu().unwrap_or(0) as i64;
                    let factors = [Factor::Quadratic(k * k), Factor::Quadratic(k - mu)];
                    report.annihilation_results.push(AnnihilationResult {
                        polynomial: format!("{}{}", factors[0], factors[1]),
                        holds: spectrum::annihilates(&self.graph, &factors),
                    });
                }
                report.intersection_array = Some(array.to_string());
            }
            DistanceRegularity::NotRegular { counterexample } => {
                report.regularity_failure = Some(format!(
                    "vertex {} at distance {}: {}",
                    self.group.label(counterexample.vertex),
                    counterexample.distance,
                    counterexample.detail
                ));
            }
        }
        Ok(report)
    }
}
