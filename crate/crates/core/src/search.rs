//! Exhaustive backtracking search for difference sets, relative difference
//! sets, partial geometric difference sets and connection sets.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::array::IntersectionArray;
use crate::cayley::build_cayley;
use crate::diffsets::{is_difference_set, is_partial_geometric_ds, is_relative_difference_set};
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};

pub const SEARCH_ORDER_LIMIT: usize = 200;
/// Largest search space for which a nonexistence certificate is attempted.
pub const CERTIFICATE_SPACE_LIMIT: u128 = 1 << 30;

#[derive(Clone, Debug)]
pub enum SearchFamily {
    DifferenceSet { k: usize, mu: usize },
    RelativeDifferenceSet { forbidden: Subgroup, k: usize, mu: usize },
    PartialGeometric { k: usize, alpha: usize, beta: usize },
    ConnectionSet(ConnectionTarget),
}

#[derive(Clone, Debug)]
pub enum ConnectionTarget {
    Array(IntersectionArray),
    /// Any bipartite distance-regular graph of diameter 3 with `μ < k-1`.
    NontrivialBipartiteDiameter3,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Limits {
    pub max_solutions: Option<usize>,
    pub max_nodes: Option<u64>,
    pub time_budget: Option<Duration>,
}

#[derive(Clone, Debug)]
pub struct SearchTask {
    pub group: Arc<GroupTable>,
    pub family: SearchFamily,
    pub limits: Limits,
    pub jobs: usize,
    /// Depth at which the tree is cut into independent subtrees.
    pub split_depth: usize,
    /// Emit only translate-minimal sets.
    pub canonical: bool,
}

impl SearchTask {
    pub fn new(group: Arc<GroupTable>, family: SearchFamily) -> Self {
        SearchTask { group, family, limits: Limits::default(), jobs: 1, split_depth: 2, canonical: true }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    /// Reference mode: every solution, not just translate representatives.
    pub fn without_canonical_pruning(mut self) -> Self {
        self.canonical = false;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub solutions: Vec<Vec<usize>>,
    pub nodes: u64,
    /// The whole space was explored: no budget or solution limit was hit.
    pub exhausted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Certificate {
    NoSolution { nodes: u64, space_bound: u128 },
    SolutionExists { solution: Vec<usize> },
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Checks the counting conditions before any search.
fn check_arithmetic(task: &SearchTask) -> Result<()> {
    let n = task.group.order();
    if n > SEARCH_ORDER_LIMIT {
        return Err(Error::TooLarge(format!("search is limited to groups of order {SEARCH_ORDER_LIMIT}")));
    }
    let bad = |msg: String| Err(Error::InvalidParameter(msg));
    match &task.family {
        SearchFamily::DifferenceSet { k, mu } => {
            if *k == 0 || *k > n || k * (k - 1) != (n - 1) * mu {
                return bad(format!("k(k-1) = (n-1)μ fails for n={n}, k={k}, μ={mu}"));
            }
        }
        SearchFamily::RelativeDifferenceSet { forbidden, k, mu } => {
            if forbidden.elements().iter().any(|&x| x >= n) || forbidden.order() * forbidden.index() != n {
                return Err(Error::NotSubgroup("forbidden subgroup does not belong to this group".into()));
            }
            let r = forbidden.order();
            if *k == 0 || k * (k - 1) != (n - r) * mu {
                return bad(format!("k(k-1) = (n-r)μ fails for n={n}, r={r}, k={k}, μ={mu}"));
            }
        }
        SearchFamily::PartialGeometric { k, alpha, beta } => {
            if *k == 0 || *k >= n || k * k * k != k * (2 * k - 1 + beta) + (n - k) * alpha {
                return bad(format!("k^3 = k(2k-1+β) + (n-k)α fails for n={n}, k={k}, α={alpha}, β={beta}"));
            }
        }
        SearchFamily::ConnectionSet(ConnectionTarget::Array(a)) => {
            a.validate()?;
            if a.vertex_count()? != n as u64 {
                return bad(format!("{a} has {} vertices, the group has order {n}", a.vertex_count()?));
            }
        }
        SearchFamily::ConnectionSet(ConnectionTarget::NontrivialBipartiteDiameter3) => {}
    }
    Ok(())
}

/// Upper bound on the number of leaves explored.
pub fn space_bound(task: &SearchTask) -> Result<u128> {
    check_arithmetic(task)?;
    let n = task.group.order();
    Ok(match &task.family {
        SearchFamily::DifferenceSet { k, .. }
        | SearchFamily::RelativeDifferenceSet { k, .. }
        | SearchFamily::PartialGeometric { k, .. } => {
            if task.canonical {
                binomial(n - 1, k - 1)
            } else {
                binomial(n, *k)
            }
        }
        SearchFamily::ConnectionSet(_) => {
            let classes = inverse_classes(&task.group).len();
            if classes >= 127 {
                u128::MAX
            } else {
                1u128 << classes
            }
        }
    })
}

struct Shared {
    nodes: AtomicU64,
    stop: AtomicBool,
    start: Instant,
    limits: Limits,
}

impl Shared {
    /// Counts a node; false once a budget is spent.
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.limits.max_nodes.is_some_and(|m| n > m);
        let over_time = n.is_multiple_of(4096) && self.limits.time_budget.is_some_and(|t| self.start.elapsed() > t);
        if over_nodes || over_time {
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stop.load(Ordering::Relaxed)
    }
}

/// Runs the search; solutions come out sorted, independently of `jobs`.
pub fn search(task: &SearchTask) -> Result<SearchOutcome> {
    check_arithmetic(task)?;
    let shared = Shared {
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        start: Instant::now(),
        limits: task.limits,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(task.jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let per_subtree = task.limits.max_solutions;
    let (mut solutions, truncated) = match &task.family {
        SearchFamily::ConnectionSet(target) => {
            let classes = inverse_classes(&task.group);
            let prefixes = class_prefixes(classes.len(), task.split_depth);
            let results: Vec<(Vec<Vec<usize>>, bool)> = pool.install(|| {
                prefixes
                    .par_iter()
                    .map(|prefix| {
                        let mut walk = ClassWalk::new(task, target, &classes, &shared, per_subtree);
                        walk.run(prefix);
                        (walk.found, walk.full)
                    })
                    .collect()
            });
            merge(results)
        }
        _ => {
            let prefixes = subset_prefixes(task);
            let results: Vec<(Vec<Vec<usize>>, bool)> = pool.install(|| {
                prefixes
                    .par_iter()
                    .map(|prefix| {
                        let mut walk = SubsetWalk::new(task, &shared, per_subtree);
                        walk.run(prefix);
                        (walk.found, walk.full)
                    })
                    .collect()
            });
            merge(results)
        }
    };
    solutions.sort();
    let mut limited = truncated;
    if let Some(m) = task.limits.max_solutions {
        if solutions.len() > m {
            solutions.truncate(m);
            limited = true;
        }
    }
    for s in &solutions {
        verify(task, s)?;
    }
    Ok(SearchOutcome {
        solutions,
        nodes: shared.nodes.load(Ordering::Relaxed),
        exhausted: !limited && !shared.stop.load(Ordering::Relaxed),
    })
}

fn merge(results: Vec<(Vec<Vec<usize>>, bool)>) -> (Vec<Vec<usize>>, bool) {
    let truncated = results.iter().any(|(_, full)| *full);
    (results.into_iter().flat_map(|(s, _)| s).collect(), truncated)
}

/// Refuses spaces above [`CERTIFICATE_SPACE_LIMIT`]; otherwise searches exhaustively.
pub fn nonexistence_certificate(task: &SearchTask) -> Result<Certificate> {
    let bound = space_bound(task)?;
    if bound > CERTIFICATE_SPACE_LIMIT {
        return Err(Error::TooLarge(format!("search space bound {bound} exceeds 2^30")));
    }
    let mut exhaustive = task.clone();
    exhaustive.limits = Limits { max_solutions: Some(1), ..Limits::default() };
    let outcome = search(&exhaustive)?;
    if let Some(s) = outcome.solutions.into_iter().next() {
        return Ok(Certificate::SolutionExists { solution: s });
    }
    if !outcome.exhausted {
        return Err(Error::Inconsistency("exhaustive search stopped early".into()));
    }
    Ok(Certificate::NoSolution { nodes: outcome.nodes, space_bound: bound })
}

fn verify(task: &SearchTask, s: &[usize]) -> Result<()> {
    let g = &task.group;
    let ok = match &task.family {
        SearchFamily::DifferenceSet { k, mu } => is_difference_set(g, s)?
            .value()
            .is_some_and(|p| (p.k, p.mu) == (*k, *mu)),
        SearchFamily::RelativeDifferenceSet { forbidden, k, mu } => is_relative_difference_set(g, s, forbidden)?
            .value()
            .is_some_and(|p| (p.k, p.mu) == (*k, *mu)),
        SearchFamily::PartialGeometric { k, alpha, beta } => is_partial_geometric_ds(g, s)?
            .value()
            .is_some_and(|p| (p.k, p.alpha, p.beta) == (*k, *alpha, *beta)),
        SearchFamily::ConnectionSet(target) => connection_set_matches(g, s, target)?,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Inconsistency(format!("search emitted {s:?}, which fails its verifier")))
    }
}

/// Prefixes of length up to `split_depth`, each the root of an independent subtree.
fn subset_prefixes(task: &SearchTask) -> Vec<Vec<usize>> {
    let n = task.group.order();
    let k = family_size(&task.family);
    let mut level: Vec<Vec<usize>> = if task.canonical && task.group.identity() == 0 { vec![vec![task.group.identity()]] } else { vec![vec![]] };
    let depth = task.split_depth.min(k);
    while level[0].len() < depth {
        let mut next = Vec::new();
        for p in &level {
            let start = p.last().map_or(0, |&x| x + 1);
            for x in start..n {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    level
}

fn family_size(family: &SearchFamily) -> usize {
    match family {
        SearchFamily::DifferenceSet { k, .. }
        | SearchFamily::RelativeDifferenceSet { k, .. }
        | SearchFamily::PartialGeometric { k, .. } => *k,
        SearchFamily::ConnectionSet(_) => 0,
    }
}

struct SubsetWalk<'a> {
    task: &'a SearchTask,
    shared: &'a Shared,
    k: usize,
    /// Largest allowed difference count, per element.
    cap: Vec<u32>,
    counts: Vec<u32>,
    current: Vec<usize>,
    found: Vec<Vec<usize>>,
    max_found: Option<usize>,
    full: bool,
}

impl<'a> SubsetWalk<'a> {
    fn new(task: &'a SearchTask, shared: &'a Shared, max_found: Option<usize>) -> Self {
        let g = &task.group;
        let n = g.order();
        let k = family_size(&task.family);
        let mut cap = vec![u32::MAX; n];
        match &task.family {
            SearchFamily::DifferenceSet { mu, .. } => cap.fill(*mu as u32),
            SearchFamily::RelativeDifferenceSet { forbidden, mu, .. } => {
                for x in g.elements() {
                    cap[x] = if forbidden.contains(x) { 0 } else { *mu as u32 };
                }
            }
            _ => {}
        }
        cap[g.identity()] = u32::MAX;
        SubsetWalk {
            task,
            shared,
            k,
            cap,
            counts: vec![0; n],
            current: Vec::with_capacity(k),
            found: Vec::new(),
            max_found,
            full: false,
        }
    }

    /// Adds `x`, returning false (and leaving no trace) if a count overflows.
    fn push(&mut self, x: usize) -> bool {
        let g = &self.task.group;
        let mut ok = true;
        for &y in &self.current {
            for z in [g.mul(x, g.inv(y)), g.mul(y, g.inv(x))] {
                self.counts[z] += 1;
                ok &= self.counts[z] <= self.cap[z];
            }
        }
        self.current.push(x);
        if !ok {
            self.pop();
        }
        ok
    }

    fn pop(&mut self) {
        let g = &self.task.group;
        let x = self.current.pop().expect("nonempty");
        for &y in &self.current {
            for z in [g.mul(x, g.inv(y)), g.mul(y, g.inv(x))] {
                self.counts[z] -= 1;
            }
        }
    }

    fn run(&mut self, prefix: &[usize]) {
        for &x in prefix {
            if !self.push(x) {
                return;
            }
        }
        self.extend();
    }

    fn extend(&mut self) {
        if self.full || !self.shared.tick() {
            return;
        }
        let n = self.task.group.order();
        if self.current.len() == self.k {
            if self.leaf_ok() {
                self.found.push(self.current.clone());
                if self.max_found.is_some_and(|m| self.found.len() >= m) {
                    self.full = true;
                }
            }
            return;
        }
        let start = self.current.last().map_or(0, |&x| x + 1);
        let needed = self.k - self.current.len();
        for x in start..n {
            if n - x < needed {
                break;
            }
            if self.push(x) {
                self.extend();
                self.pop();
                if self.full {
                    return;
                }
            }
        }
    }

    fn leaf_ok(&self) -> bool {
        let g = &self.task.group;
        if self.task.canonical && !is_translate_minimal(g, &self.current, !self.left_translates_allowed()) {
            return false;
        }
        match &self.task.family {
            SearchFamily::PartialGeometric { k, alpha, beta } => is_partial_geometric_ds(g, &self.current)
                .ok()
                .and_then(|v| v.into_value())
                .is_some_and(|p| (p.k, p.alpha, p.beta) == (*k, *alpha, *beta)),
            // Counts are capped, so equality follows from the arithmetic check.
            _ => true,
        }
    }

    /// Left translates preserve the family unless a non-normal forbidden
    /// subgroup would be conjugated away.
    fn left_translates_allowed(&self) -> bool {
        match &self.task.family {
            SearchFamily::RelativeDifferenceSet { forbidden, .. } => {
                self.task.group.is_normal(forbidden).unwrap_or(false)
            }
            _ => true,
        }
    }
}

/// Whether `set` is lexicographically smallest among its right translates
/// (and left translates, unless `right_only` or the group is abelian).
pub fn is_translate_minimal(g: &GroupTable, set: &[usize], right_only: bool) -> bool {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    let both = !right_only && !g.is_abelian();
    sorted.iter().all(|&d| {
        let h = g.inv(d);
        g.right_translate(&sorted, h) >= sorted && (!both || g.left_translate(h, &sorted) >= sorted)
    })
}

/// Inverse-closed classes `{x, x^-1}` of non-identity elements, by smallest member.
pub fn inverse_classes(g: &GroupTable) -> Vec<Vec<usize>> {
    g.elements()
        .filter(|&x| x != g.identity() && x <= g.inv(x))
        .map(|x| if x == g.inv(x) { vec![x] } else { vec![x, g.inv(x)] })
        .collect()
}

fn class_prefixes(classes: usize, depth: usize) -> Vec<Vec<bool>> {
    let depth = depth.min(classes);
    (0..1usize << depth)
        .map(|mask| (0..depth).map(|i| mask >> (depth - 1 - i) & 1 == 1).collect())
        .collect()
}

struct ClassWalk<'a> {
    task: &'a SearchTask,
    target: &'a ConnectionTarget,
    classes: &'a [Vec<usize>],
    shared: &'a Shared,
    valency: Option<usize>,
    chosen: Vec<bool>,
    size: usize,
    found: Vec<Vec<usize>>,
    max_found: Option<usize>,
    full: bool,
}

impl<'a> ClassWalk<'a> {
    fn new(
        task: &'a SearchTask,
        target: &'a ConnectionTarget,
        classes: &'a [Vec<usize>],
        shared: &'a Shared,
        max_found: Option<usize>,
    ) -> Self {
        let valency = match target {
            ConnectionTarget::Array(a) => Some(a.valency() as usize),
            ConnectionTarget::NontrivialBipartiteDiameter3 => None,
        };
        ClassWalk {
            task,
            target,
            classes,
            shared,
            valency,
            chosen: Vec::with_capacity(classes.len()),
            size: 0,
            found: Vec::new(),
            max_found,
            full: false,
        }
    }

    fn run(&mut self, prefix: &[bool]) {
        for &take in prefix {
            self.decide(take);
        }
        if self.valency.is_none_or(|k| self.size <= k) {
            self.extend();
        }
    }

    fn decide(&mut self, take: bool) {
        if take {
            self.size += self.classes[self.chosen.len()].len();
        }
        self.chosen.push(take);
    }

    fn undo(&mut self) {
        let i = self.chosen.len() - 1;
        if self.chosen.pop() == Some(true) {
            self.size -= self.classes[i].len();
        }
    }

    fn extend(&mut self) {
        if self.full || !self.shared.tick() {
            return;
        }
        if self.chosen.len() == self.classes.len() {
            let set: Vec<usize> = self
                .chosen
                .iter()
                .zip(self.classes)
                .filter(|(&c, _)| c)
                .flat_map(|(_, cls)| cls.iter().copied())
                .collect();
            if self.valency.is_none_or(|k| k == set.len())
                && connection_set_matches(&self.task.group, &set, self.target).unwrap_or(false)
            {
                let mut set = set;
                set.sort_unstable();
                self.found.push(set);
                if self.max_found.is_some_and(|m| self.found.len() >= m) {
                    self.full = true;
                }
            }
            return;
        }
        for take in [true, false] {
            self.decide(take);
            if self.valency.is_none_or(|k| self.size <= k) {
                self.extend();
            }
            self.undo();
            if self.full {
                return;
            }
        }
    }
}

/// Whether `Cay(G, S)` is connected and realizes the target.
pub fn connection_set_matches(g: &Arc<GroupTable>, s: &[usize], target: &ConnectionTarget) -> Result<bool> {
    if s.is_empty() {
        return Ok(false);
    }
    let cay = build_cayley(Arc::clone(g), s)?;
    if !cay.is_connected() {
        return Ok(false);
    }
    let Some(array) = cay.intersection_array()? else {
        return Ok(false);
    };
    Ok(match target {
        ConnectionTarget::Array(a) => array == *a,
        ConnectionTarget::NontrivialBipartiteDiameter3 => {
            array.diameter() == 3
                && array.is_bipartite()
                && array.mu().is_some_and(|mu| mu + 1 < array.valency())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_group, GroupSpec};

    fn group(s: &str) -> Arc<GroupTable> {
        Arc::new(make_group(&s.parse::<GroupSpec>().unwrap()).unwrap())
    }

    #[test]
    fn fano_sets_in_z7() {
        let task = SearchTask::new(group("Z7"), SearchFamily::DifferenceSet { k: 3, mu: 1 });
        let out = search(&task).unwrap();
        // {0,1,3} and {0,1,5}: the two translate classes.
        assert_eq!(out.solutions, vec![vec![0, 1, 3], vec![0, 1, 5]]);
        assert!(out.exhausted);
    }

    #[test]
    fn reference_mode_finds_all_translates() {
        let task = SearchTask::new(group("Z7"), SearchFamily::DifferenceSet { k: 3, mu: 1 }).without_canonical_pruning();
        assert_eq!(search(&task).unwrap().solutions.len(), 14);
    }

    #[test]
    fn infeasible_arithmetic_is_rejected() {
        let task = SearchTask::new(group("Z3"), SearchFamily::DifferenceSet { k: 2, mu: 2 });
        assert!(matches!(search(&task), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn budget_gives_partial_result() {
        let task = SearchTask::new(group("Z13"), SearchFamily::DifferenceSet { k: 4, mu: 1 })
            .with_limits(Limits { max_nodes: Some(3), ..Limits::default() });
        assert!(!search(&task).unwrap().exhausted);
    }

    #[test]
    fn hexagon_is_trivial() {
        let task = SearchTask::new(group("Z6"), SearchFamily::ConnectionSet(ConnectionTarget::NontrivialBipartiteDiameter3));
        let out = search(&task).unwrap();
        assert!(out.solutions.is_empty() && out.exhausted);
    }

    #[test]
    fn heawood_connection_sets() {
        let array: IntersectionArray = "{3,2,2;1,1,3}".parse().unwrap();
        let task = SearchTask::new(group("dih(Z7)"), SearchFamily::ConnectionSet(ConnectionTarget::Array(array)));
        let out = search(&task).unwrap();
        // D c for the 14 difference sets {1,2,4} h and {3,5,6} h.
        assert_eq!(out.solutions.len(), 14);
    }

    #[test]
    fn certificate_refuses_huge_spaces() {
        let task = SearchTask::new(
            group("Z2xZ2xZ2xZ2xZ2xZ2xZ2"),
            SearchFamily::ConnectionSet(ConnectionTarget::NontrivialBipartiteDiameter3),
        );
        assert!(matches!(nonexistence_certificate(&task), Err(Error::TooLarge(_))));
    }
}
