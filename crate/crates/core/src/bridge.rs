//! Passing between bipartite Cayley graphs and difference sets in the
//! identity's part, and moving connection sets onto semidirect products.

use std::sync::Arc;

use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::array::IntersectionArray;
use crate::cayley::{build_cayley, CayleyGraph};
use crate::designs::{development, IncidenceStructure, PgdParams};
use crate::diffsets::{
    is_difference_set, is_partial_geometric_ds, is_partial_mu_geometric_ds, is_relative_difference_set,
    is_symmetric_rds, DsParams, RdsParams,
};
use crate::error::{Error, Result};
use crate::group::{Automorphism, GroupTable, SemidirectWitness, Subgroup};
use crate::iso::is_isomorphism;
use crate::report::Verdict;
use crate::spectrum::{self, ExactValue, Factor};

/// Number of coset representatives `a` tried by [`bridge_extract`].
pub const REPRESENTATIVES_CHECKED: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    DifferenceSet {
        params: DsParams,
    },
    PartialGeometric {
        params: PgdParams,
        mu: usize,
        c3: usize,
    },
    RelativeDifferenceSet {
        params: RdsParams,
        pgds: PgdParams,
        c3: usize,
        forbidden: Vec<String>,
    },
}

/// `D = S a^-1` inside the identity's part `H`, with its classification.
#[derive(Clone, Debug, Serialize)]
pub struct BridgeWitness {
    /// `H` as a standalone group; `d` is in its indices.
    #[serde(skip)]
    pub part: Arc<GroupTable>,
    /// `embedding[i]` is the element of `G` for element `i` of `H`.
    pub embedding: Vec<usize>,
    pub a: usize,
    pub a_label: String,
    pub d: Vec<usize>,
    pub d_labels: Vec<String>,
    pub s: Vec<usize>,
    pub array: String,
    pub family: Family,
    /// Every representative the classification was repeated for.
    pub representatives: Vec<usize>,
}

/// A Cayley graph together with the explicit isomorphism from an incidence graph.
#[derive(Clone, Debug)]
pub struct BridgeGraph {
    pub cayley: CayleyGraph,
    /// `map[v]` is the group element for vertex `v` of the incidence graph of
    /// the development (points first, then blocks labeled by `h`).
    pub map: Vec<usize>,
}

fn local_index(embedding: &[usize], parent_order: usize) -> Vec<usize> {
    let mut local = vec![usize::MAX; parent_order];
    for (i, &x) in embedding.iter().enumerate() {
        local[x] = i;
    }
    local
}

/// Recovers the difference-set family behind a bipartite Cayley DRG of
/// diameter 3 or 4.
pub fn bridge_extract(gamma: &CayleyGraph) -> Result<BridgeWitness> {
    let array = gamma
        .intersection_array()?
        .ok_or_else(|| Error::Precondition("graph is not distance-regular".into()))?;
    let d = array.diameter();
    if !(3..=4).contains(&d) {
        return Err(Error::Precondition(format!("diameter {d} is neither 3 nor 4")));
    }
    if !array.is_bipartite() {
        return Err(Error::Precondition("graph is not bipartite".into()));
    }
    let g = gamma.group();
    let h = gamma.part_subgroup()?;
    let (part, embedding) = g.subgroup_table(&h)?;
    let part = Arc::new(part);
    let forbidden = if d == 4 {
        match gamma.antipodal(4)? {
            Some(_) => {
                let mut n = gamma.shells()?[4].clone();
                n.push(g.identity());
                Some(n)
            }
            None => None,
        }
    } else {
        None
    };
    if !group_ring_identities(gamma, &array)? {
        return Err(Error::Inconsistency("group-ring identities for S fail".into()));
    }
    let representatives: Vec<usize> = h.complement().into_iter().take(REPRESENTATIVES_CHECKED).collect();
    let ctx = Context { gamma, array: &array, part: &part, embedding: &embedding, forbidden: forbidden.as_deref() };
    let mut witness: Option<(usize, Vec<usize>, Family)> = None;
    for &a in &representatives {
        let (dset, family) = ctx.classify(a)?;
        match &witness {
            None => witness = Some((a, dset, family)),
            Some((_, _, first)) if *first != family => {
                return Err(Error::Inconsistency(format!(
                    "representative {} gives {family:?}, the first gave {first:?}",
                    g.label(a)
                )));
            }
            _ => {}
        }
    }
    let (a, dset, family) = witness.ok_or_else(|| Error::Precondition("H is the whole group".into()))?;
    Ok(BridgeWitness {
        d_labels: part.set_labels(&dset),
        a_label: g.label(a).to_string(),
        part,
        embedding,
        a,
        d: dset,
        s: gamma.connection_set().to_vec(),
        array: array.to_string(),
        family,
        representatives,
    })
}

struct Context<'a> {
    gamma: &'a CayleyGraph,
    array: &'a IntersectionArray,
    part: &'a GroupTable,
    embedding: &'a [usize],
    forbidden: Option<&'a [usize]>,
}

impl Context<'_> {
    fn classify(&self, a: usize) -> Result<(Vec<usize>, Family)> {
        let g = self.gamma.group();
        let s = self.gamma.connection_set();
        let d_g = g.right_translate(s, g.inv(a));
        let local = local_index(self.embedding, g.order());
        let mut d: Vec<usize> = Vec::with_capacity(d_g.len());
        for &x in &d_g {
            if local[x] == usize::MAX {
                return Err(Error::Inconsistency(format!("S a^-1 leaves H at {}", g.label(x))));
            }
            d.push(local[x]);
        }
        d.sort_unstable();
        let conj: Vec<usize> = {
            let mut v: Vec<usize> = d_g.iter().map(|&x| g.mul(g.mul(a, x), a)).collect();
            v.sort_unstable();
            v
        };
        if g.inverse_set(&d_g) != conj {
            return Err(Error::Inconsistency(format!("D^-1 != aDa for a = {}", g.label(a))));
        }
        let n = self.part.order();
        let k = self.array.valency() as usize;
        let mu = self.array.mu().unwrap_or(0) as usize;
        let c3 = self.array.c()[2] as usize;
        if k * (k - 1) * (k - mu) != (n - k) * mu * c3 {
            return Err(Error::Inconsistency(format!(
                "c3 = {c3} disagrees with k(k-1)(k-μ)/((n-k)μ) for n={n}, k={k}, μ={mu}"
            )));
        }
        let expect = |ok: bool, what: &str| -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::Inconsistency(format!("D = S a^-1 for a = {}: {what}", g.label(a))))
            }
        };
        if self.array.diameter() == 3 {
            let v = is_difference_set(self.part, &d)?;
            let params = v.value().copied();
            expect(params.is_some_and(|p| (p.n, p.k, p.mu) == (n, k, mu)), "not the expected difference set")?;
            return Ok((d, Family::DifferenceSet { params: params.unwrap() }));
        }
        let pg = is_partial_geometric_ds(self.part, &d)?.into_value();
        let want = PgdParams { n, k, alpha: mu * c3, beta: (k - 1) * (mu.max(1) - 1) };
        expect(pg == Some(want), "not the expected partial geometric difference set")?;
        expect(is_partial_mu_geometric_ds(self.part, &d, mu)?.holds(), "not partial μ-geometric")?;
        let Some(forbidden) = self.forbidden else {
            return Ok((d, Family::PartialGeometric { params: want, mu, c3 }));
        };
        let n_local: Vec<usize> = forbidden.iter().map(|&x| local[x]).collect();
        expect(n_local.iter().all(|&x| x != usize::MAX), "S_4 is not inside H")?;
        let nsub = Subgroup::new(self.part, &n_local)
            .map_err(|e| Error::Inconsistency(format!("S_4 ∪ {{e}} is not a subgroup: {e}")))?;
        let r = nsub.order();
        let rds = is_relative_difference_set(self.part, &d, &nsub)?.into_value();
        let want_rds = RdsParams { m: r * mu, r, k: r * mu, mu };
        expect(rds == Some(want_rds), "not the expected relative difference set")?;
        expect(is_symmetric_rds(self.part, &d, &nsub)?.holds(), "D^-1 is not a relative difference set")?;
        let mut labels = self.part.set_labels(nsub.elements());
        labels.sort();
        Ok((d, Family::RelativeDifferenceSet { params: want_rds, pgds: want, c3, forbidden: labels }))
    }
}

/// `S^2 = k e + μ S_2` and `S_2 S = (k-1) S + c_3 S_3` as multisets over `G`.
pub fn group_ring_identities(gamma: &CayleyGraph, array: &IntersectionArray) -> Result<bool> {
    let g = gamma.group();
    let s = gamma.connection_set();
    let shells = gamma.shells()?;
    if shells.len() < 3 {
        return Ok(false);
    }
    let k = array.valency() as usize;
    let mu = array.mu().unwrap_or(0) as usize;
    let c3 = array.c().get(2).copied().unwrap_or(0) as usize;
    let product = |x: &[usize], y: &[usize]| {
        let mut counts = vec![0usize; g.order()];
        for &u in x {
            for &v in y {
                counts[g.mul(u, v)] += 1;
            }
        }
        counts
    };
    let mut lhs1 = vec![0usize; g.order()];
    lhs1[g.identity()] = k;
    for &z in &shells[2] {
        lhs1[z] += mu;
    }
    let mut lhs2 = vec![0usize; g.order()];
    for &z in s {
        lhs2[z] += k - 1;
    }
    if let Some(s3) = shells.get(3) {
        for &z in s3 {
            lhs2[z] += c3;
        }
    }
    Ok(product(s, s) == lhs1 && product(&shells[2], s) == lhs2)
}

/// `Cay(Dih(H), D c)` for abelian `H`, with the point/block map checked edge by edge.
pub fn bridge_construct_dih(h: &GroupTable, d: &[usize]) -> Result<BridgeGraph> {
    if !h.is_abelian() {
        return Err(Error::Precondition("the dihedral bridge needs an abelian group".into()));
    }
    let n = h.order();
    let dev = development(h, d)?;
    let g = Arc::new(h.semidirect_z2(&Automorphism::Inversion)?);
    // Element c^x h has index x n + h, so d c = c d^-1.
    let s: Vec<usize> = dev.blocks()[h.identity()].iter().map(|&x| g.mul(x, n)).collect();
    let cayley = build_cayley(g, &s)?;
    // Block D h goes to h^-1 c = c h.
    let map: Vec<usize> = (0..n).chain((0..n).map(|x| n + x)).collect();
    verify_map(&dev, &cayley, map)
}

/// `Cay(G, D a)` for `H` of index 2 in `G` and `a ∉ H` with `D^-1 = a D a`.
/// `d` is given in the elements of `G`.
pub fn bridge_construct_embed(g: Arc<GroupTable>, h: &Subgroup, d: &[usize], a: usize) -> Result<BridgeGraph> {
    if h.index() != 2 || h.elements().iter().any(|&x| x >= g.order()) {
        return Err(Error::Precondition("H must have index 2 in G".into()));
    }
    if a >= g.order() || h.contains(a) {
        return Err(Error::Precondition("a must lie outside H".into()));
    }
    if let Some(&x) = d.iter().find(|&&x| !h.contains(x)) {
        return Err(Error::Precondition(format!("{} is not in H", g.label(x))));
    }
    let mut dset = d.to_vec();
    dset.sort_unstable();
    dset.dedup();
    let conj = g.left_translate(a, &g.right_translate(&dset, a));
    let inv = g.inverse_set(&dset);
    if let Some(&x) = inv.iter().find(|x| conj.binary_search(x).is_err()) {
        return Err(Error::Precondition(format!(
            "D^-1 != aDa: {} is in D^-1 but not in aDa",
            g.label(x)
        )));
    }
    let (part, embedding) = g.subgroup_table(h)?;
    let local = local_index(&embedding, g.order());
    let d_local: Vec<usize> = dset.iter().map(|&x| local[x]).collect();
    let dev = development(&part, &d_local)?;
    let s = g.right_translate(&dset, a);
    let a_inv = g.inv(a);
    let cayley = build_cayley(Arc::clone(&g), &s)?;
    // Point h goes to h and block D h to a^-1 h.
    let map: Vec<usize> = embedding
        .iter()
        .copied()
        .chain(embedding.iter().map(|&x| g.mul(a_inv, x)))
        .collect();
    verify_map(&dev, &cayley, map)
}

fn verify_map(dev: &IncidenceStructure, cayley: &CayleyGraph, map: Vec<usize>) -> Result<BridgeGraph> {
    let incidence = dev.incidence_graph();
    if !is_isomorphism(&incidence, cayley.graph(), &map) {
        return Err(Error::Inconsistency(
            "the explicit map from the incidence graph is not an isomorphism".into(),
        ));
    }
    Ok(BridgeGraph { cayley: cayley.clone(), map })
}

/// Result of moving `Cay(G, S)` onto `G' = H ⋊ <c>`.
#[derive(Clone, Debug)]
pub struct Transport {
    pub cayley: CayleyGraph,
    /// `map[g]` is the image in `G'` of `g ∈ G`.
    pub map: Vec<usize>,
    /// `H` inside `G`, in the order of its indices in `G'`.
    pub embedding: Vec<usize>,
}

fn transport_setup(gamma: &CayleyGraph, automorphism: Option<&Automorphism>) -> Result<(Arc<GroupTable>, Vec<usize>)> {
    let h = gamma.part_subgroup()?;
    let (part, embedding) = gamma.group().subgroup_table(&h)?;
    let aut = automorphism.cloned().unwrap_or(Automorphism::Inversion);
    Ok((Arc::new(part.semidirect_z2(&aut)?), embedding))
}

/// `T_g c` in `G'` for `T_g = S g^-1 ⊆ H`.
fn transported_set(gamma: &CayleyGraph, target: &GroupTable, embedding: &[usize], g: usize) -> Result<Vec<usize>> {
    let group = gamma.group();
    let local = local_index(embedding, group.order());
    let c = embedding.len();
    let mut out = Vec::with_capacity(gamma.valency());
    for &x in &group.right_translate(gamma.connection_set(), group.inv(g)) {
        if local[x] == usize::MAX {
            return Err(Error::Precondition(format!("{} is inside H", group.label(g))));
        }
        out.push(target.mul(local[x], c));
    }
    out.sort_unstable();
    Ok(out)
}

/// `Cay(H ⋊ <c>, S a^-1 c)`, isomorphic to `Γ` via `h -> h`, `a^-1 h -> c h`.
///
/// `automorphism` acts on `H` in the indices of its standalone table; it
/// defaults to inversion, which needs `H` abelian.
pub fn transport_no_involutions(gamma: &CayleyGraph, a: usize, automorphism: Option<&Automorphism>) -> Result<Transport> {
    let group = gamma.group();
    if a >= group.order() {
        return Err(Error::UnknownElement(a.to_string()));
    }
    let (target, embedding) = transport_setup(gamma, automorphism)?;
    let s_new = transported_set(gamma, &target, &embedding, a)?;
    let cayley = build_cayley(Arc::clone(&target), &s_new)?;
    let local = local_index(&embedding, group.order());
    let n = embedding.len();
    let map: Vec<usize> = group
        .elements()
        .map(|x| {
            if local[x] != usize::MAX {
                local[x]
            } else {
                n + local[group.mul(a, x)]
            }
        })
        .collect();
    if !is_isomorphism(gamma.graph(), cayley.graph(), &map) {
        return Err(Error::Inconsistency("transport map is not an isomorphism".into()));
    }
    Ok(Transport { cayley, map, embedding })
}

/// Every `g ∈ G \ H` whose transported set `S g^-1 c` equals `target` in the
/// group built by [`transport_no_involutions`] with the same automorphism.
pub fn transport_representatives(
    gamma: &CayleyGraph,
    automorphism: Option<&Automorphism>,
    target_set: &[usize],
) -> Result<Vec<usize>> {
    let (target, embedding) = transport_setup(gamma, automorphism)?;
    let mut want = target_set.to_vec();
    want.sort_unstable();
    want.dedup();
    let h = gamma.part_subgroup()?;
    let mut found = Vec::new();
    for g in h.complement() {
        if transported_set(gamma, &target, &embedding, g)? == want {
            found.push(g);
        }
    }
    Ok(found)
}

/// The group `G' = H ⋊ <c>` used by the transport functions.
pub fn transport_group(gamma: &CayleyGraph, automorphism: Option<&Automorphism>) -> Result<Arc<GroupTable>> {
    Ok(transport_setup(gamma, automorphism)?.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GuaranteeReason {
    OddN,
    OddK,
    NonsingularNNotDiv4,
    InvolutionFound,
    Exceptional,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemidirectGuarantee {
    pub reason: GuaranteeReason,
    pub n: usize,
    pub k: usize,
    pub witness: Option<SemidirectWitness>,
    /// For `n ≡ 2 (mod 4)` without an involution outside `H`: the quotient
    /// matrix over the cosets of the odd-order elements, `(k/2)` times a 4-cycle.
    pub c4_quotient: Option<Vec<Vec<i64>>>,
}

/// Which sufficient condition makes `G` a semidirect product `H ⋊ Z_2`.
pub fn semidirect_guarantee(gamma: &CayleyGraph) -> Result<SemidirectGuarantee> {
    let h = gamma.part_subgroup()?;
    let g = gamma.group();
    let (n, k) = (h.order(), gamma.valency());
    let witness = g.semidirect_decomposition(&h)?;
    let reason = if n % 2 == 1 {
        Some(GuaranteeReason::OddN)
    } else if k % 2 == 1 {
        Some(GuaranteeReason::OddK)
    } else if n % 4 == 2 && spectrum::is_nonsingular(gamma.graph()) {
        Some(GuaranteeReason::NonsingularNNotDiv4)
    } else {
        None
    };
    if reason.is_some() && witness.is_none() {
        return Err(Error::Inconsistency(format!(
            "{reason:?} holds but no involution lies outside H"
        )));
    }
    let c4_quotient = if n % 4 == 2 && witness.is_none() { Some(c4_quotient(gamma, &h)?) } else { None };
    let reason = reason.unwrap_or(if witness.is_some() {
        GuaranteeReason::InvolutionFound
    } else {
        GuaranteeReason::Exceptional
    });
    Ok(SemidirectGuarantee { reason, n, k, witness, c4_quotient })
}

fn c4_quotient(gamma: &CayleyGraph, h: &Subgroup) -> Result<Vec<Vec<i64>>> {
    let g = gamma.group();
    let odd: Vec<usize> = g.elements().filter(|&x| g.element_order(x) % 2 == 1).collect();
    let nsub = Subgroup::new(g, &odd)
        .map_err(|e| Error::Inconsistency(format!("odd-order elements do not form a subgroup: {e}")))?;
    if nsub.index() != 4 {
        return Err(Error::Inconsistency(format!("odd-order subgroup has index {}", nsub.index())));
    }
    let a = h.complement()[0];
    let cells: Vec<Vec<usize>> = (0..4)
        .map(|i| {
            let ai = g.pow(a, i);
            g.right_translate(nsub.elements(), ai)
        })
        .collect();
    let q = gamma.graph().quotient_matrix(&cells)?;
    let m = q
        .integer_matrix()
        .ok_or_else(|| Error::Inconsistency("coset partition is not equitable".into()))?;
    let half = (gamma.valency() / 2) as i64;
    let expected: Vec<Vec<i64>> = (0..4)
        .map(|i| (0..4).map(|j| if (i + 4 - j) % 4 == 1 || (j + 4 - i) % 4 == 1 { half } else { 0 }).collect())
        .collect();
    if m != expected {
        return Err(Error::Inconsistency(format!("coset quotient {m:?} is not (k/2) C4")));
    }
    Ok(m)
}

/// The split of `S` by a cyclic index-2 subgroup `C` and the coset quotient matrix.
#[derive(Clone, Debug, Serialize)]
pub struct CyclicSplit {
    pub k1: usize,
    pub k2: usize,
    pub quotient: Vec<Vec<i64>>,
    pub equitable: bool,
    /// `det(A - (k1 - k2) I) = 0`, computed exactly.
    pub difference_is_eigenvalue: bool,
}

pub fn cyclic_split(gamma: &CayleyGraph, c: &Subgroup) -> Result<CyclicSplit> {
    let g = gamma.group();
    if c.index() != 2 || c.elements().iter().any(|&x| x >= g.order()) {
        return Err(Error::Precondition("C must have index 2".into()));
    }
    let k1 = gamma.connection_set().iter().filter(|&&s| c.contains(s)).count();
    let k2 = gamma.valency() - k1;
    let q = gamma.graph().quotient_matrix(&[c.elements().to_vec(), c.complement()])?;
    let quotient: Vec<Vec<i64>> = q
        .matrix
        .iter()
        .map(|row| row.iter().map(|r| if r.is_integer() { r.to_integer() } else { -1 }).collect())
        .collect();
    let equitable = q.equitable && q.matrix.iter().flatten().all(Ratio::is_integer);
    let theta = k1 as i64 - k2 as i64;
    let difference_is_eigenvalue = spectrum::shifted_determinant(gamma.graph(), theta).is_zero();
    Ok(CyclicSplit { k1, k2, quotient, equitable, difference_is_eigenvalue })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DihedralAnalysis {
    NotApplicable { reason: String },
    Analyzed(Box<DihedralReport>),
}

#[derive(Clone, Debug, Serialize)]
pub struct DihedralReport {
    pub k: usize,
    pub mu: usize,
    pub n: usize,
    pub split: CyclicSplit,
    /// `(k1 - k2)^2 = k - μ`.
    pub difference_squared: bool,
    /// `4 k1 k2 = n μ`.
    pub product_identity: bool,
    /// Circulant eigenvalues of `Cay(C, S ∩ C)`, each matched to `±k1, ±√(k-μ), 0`.
    pub eigenvalues: Vec<Option<ExactValue>>,
    pub parseval: bool,
    pub alpha: Option<usize>,
    pub beta: Option<usize>,
    /// `A (A^2 - k1^2 I)(A^2 - (k-μ) I) = 0` on `Cay(C, S ∩ C)`.
    pub annihilated: bool,
    pub pgd: Verdict<PgdParams>,
}

impl DihedralReport {
    pub fn passed(&self) -> bool {
        self.split.equitable
            && self.split.difference_is_eigenvalue
            && self.difference_squared
            && self.product_identity
            && self.eigenvalues.iter().all(Option::is_some)
            && self.parseval
            && self.annihilated
            && match (self.alpha, self.beta, self.pgd.value()) {
                (Some(alpha), Some(beta), Some(p)) => p.k == self.split.k1 && (p.alpha, p.beta) == (alpha, beta),
                _ => false,
            }
    }
}

/// Splits a bipartite diameter-3 DRG on a group with a cyclic subgroup `C` of
/// index 2 and checks that `Cay(C, S ∩ C)` is a partial geometric design's
/// incidence graph.
pub fn dihedral_subanalysis(gamma: &CayleyGraph, c: &Subgroup) -> Result<DihedralAnalysis> {
    let g = gamma.group();
    if c.index() != 2 || !c.is_cyclic(g) {
        return Err(Error::Precondition("C must be cyclic of index 2".into()));
    }
    let h = gamma.part_subgroup()?;
    if h == *c {
        return Ok(DihedralAnalysis::NotApplicable { reason: "H = C is cyclic".into() });
    }
    let array = gamma
        .intersection_array()?
        .ok_or_else(|| Error::Precondition("graph is not distance-regular".into()))?;
    if array.diameter() != 3 || !array.is_bipartite() {
        return Err(Error::Precondition(format!("{array} is not bipartite of diameter 3")));
    }
    let k = array.valency() as usize;
    let mu = array.mu().unwrap_or(0) as usize;
    if mu + 1 == k {
        return Err(Error::Precondition("μ = k-1: complete bipartite minus a matching".into()));
    }
    let split = cyclic_split(gamma, c)?;
    let (k1, k2) = (split.k1, split.k2);
    if k1 * k2 == 0 {
        return Err(Error::Inconsistency(format!("k1 = {k1}, k2 = {k2} although C != H")));
    }
    let n = c.order();
    let diff = k1.abs_diff(k2);
    let difference_squared = diff * diff == k - mu;
    let product_identity = 4 * k1 * k2 == n * mu;

    let (ctab, embedding) = g.subgroup_table(c)?;
    let local = local_index(&embedding, g.order());
    let generator = ctab
        .elements()
        .find(|&x| ctab.element_order(x) == n)
        .ok_or_else(|| Error::Inconsistency("C has no generator".into()))?;
    let mut log = vec![0usize; n];
    let mut x = ctab.identity();
    for i in 0..n {
        log[x] = i;
        x = ctab.mul(x, generator);
    }
    let t_local: Vec<usize> = gamma
        .connection_set()
        .iter()
        .filter(|&&s| c.contains(s))
        .map(|&s| local[s])
        .collect();
    let residues: Vec<usize> = t_local.iter().map(|&t| log[t]).collect();
    let values = spectrum::circulant_eigenvalues(n, &residues);
    let k1i = k1 as i64;
    let mut targets = vec![
        ExactValue::Int { value: k1i },
        ExactValue::Int { value: -k1i },
        ExactValue::Int { value: 0 },
    ];
    targets.extend(ExactValue::pm_sqrt((k - mu) as u64));
    let eigenvalues = spectrum::classify(&values, &targets);
    let parseval = spectrum::parseval_holds(n, residues.len(), &eigenvalues);

    let alpha_num = mu as i64 * (2 * k1i - k2 as i64);
    let alpha = (alpha_num >= 0 && alpha_num % 2 == 0).then_some((alpha_num / 2) as usize);
    let beta = alpha.and_then(|al| {
        let b = (k - mu) as i64 - 2 * k1i + 1 + al as i64;
        (b >= 0).then_some(b as usize)
    });

    let sub = build_cayley(Arc::new(ctab.clone()), &t_local)?;
    let factors = [Factor::Linear(0), Factor::Quadratic(k1i * k1i), Factor::Quadratic((k - mu) as i64)];
    let annihilated = spectrum::annihilates(sub.graph(), &factors);

    // Points are C ∩ H, blocks the neighborhoods of C \ H.
    let points: Vec<usize> = (0..n).filter(|&x| h.contains(embedding[x])).collect();
    let point_index = local_index(&points, n);
    let blocks: Vec<Vec<usize>> = (0..n)
        .filter(|&x| !h.contains(embedding[x]))
        .map(|y| sub.graph().neighbors(y).iter().map(|&p| point_index[p]).collect())
        .collect();
    let pgd = IncidenceStructure::new(points.len(), blocks)?.is_partial_geometric();

    Ok(DihedralAnalysis::Analyzed(Box::new(DihedralReport {
        k,
        mu,
        n,
        split,
        difference_squared,
        product_identity,
        eigenvalues,
        parseval,
        alpha,
        beta,
        annihilated,
        pgd,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffsets::right_translate_witness;
    use crate::group::{make_group, GroupSpec};

    fn group(s: &str) -> Arc<GroupTable> {
        Arc::new(make_group(&s.parse::<GroupSpec>().unwrap()).unwrap())
    }

    #[test]
    fn heawood_round_trip() {
        let z7 = make_group(&GroupSpec::Cyclic(7)).unwrap();
        let b = bridge_construct_dih(&z7, &[1, 2, 4]).unwrap();
        assert_eq!(b.cayley.intersection_array().unwrap().unwrap().to_string(), "{3,2,2;1,1,3}");
        let w = bridge_extract(&b.cayley).unwrap();
        assert!(matches!(w.family, Family::DifferenceSet { params } if (params.n, params.k, params.mu) == (7, 3, 1)));
        assert!(right_translate_witness(&w.part, &[1, 2, 4], &w.d).is_some());
        assert_eq!(w.representatives.len(), REPRESENTATIVES_CHECKED);
    }

    #[test]
    fn embed_matches_dih() {
        let g = group("dih(Z7)");
        let h = Subgroup::new(&g, &(0..7).collect::<Vec<_>>()).unwrap();
        let b = bridge_construct_embed(Arc::clone(&g), &h, &[1, 2, 4], 7).unwrap();
        assert_eq!(b.cayley.graph().edge_count(), 21);
        // a = c h is also allowed; D^-1 = aDa holds in any generalized dihedral group.
        assert!(bridge_construct_embed(g, &h, &[1, 2, 4], 9).is_ok());
    }

    #[test]
    fn embed_rejects_bad_conjugation() {
        let g = group("Z14");
        let h = Subgroup::new(&g, &(0..14).step_by(2).collect::<Vec<_>>()).unwrap();
        // In Z14, aDa = D + 2a, and {2,4,8} is not of the form -D.
        assert!(matches!(
            bridge_construct_embed(g, &h, &[2, 4, 8], 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn identity_transport() {
        let z7 = make_group(&GroupSpec::Cyclic(7)).unwrap();
        let b = bridge_construct_dih(&z7, &[1, 2, 4]).unwrap();
        let t = transport_no_involutions(&b.cayley, 7, None).unwrap();
        assert_eq!(t.map, (0..14).collect::<Vec<_>>());
        assert_eq!(t.cayley.connection_set(), b.cayley.connection_set());
    }

    #[test]
    fn knn_transport_to_dihedral() {
        let z = group("Z6");
        let k33 = build_cayley(z, &[1, 3, 5]).unwrap();
        let t = transport_no_involutions(&k33, 1, None).unwrap();
        assert!(!t.cayley.group().is_abelian());
        assert_eq!(t.cayley.intersection_array().unwrap().unwrap().to_string(), "{3,2;1,3}");
    }

    #[test]
    fn guarantee_on_heawood() {
        let z7 = make_group(&GroupSpec::Cyclic(7)).unwrap();
        let b = bridge_construct_dih(&z7, &[1, 2, 4]).unwrap();
        let v = semidirect_guarantee(&b.cayley).unwrap();
        assert_eq!(v.reason, GuaranteeReason::OddN);
        assert!(v.witness.is_some());
    }

    #[test]
    fn c4_certificate_on_twelve_cycle() {
        let g = build_cayley(group("Z12"), &[1, 11]).unwrap();
        let v = semidirect_guarantee(&g).unwrap();
        assert_eq!(v.reason, GuaranteeReason::Exceptional);
        let q = v.c4_quotient.unwrap();
        assert_eq!(q[0], vec![0, 1, 0, 1]);
    }

    #[test]
    fn dihedral_not_applicable() {
        let d8 = group("dihedral(4)");
        let s = d8.parse_set("s, s*r").unwrap();
        let g = build_cayley(Arc::clone(&d8), &s).unwrap();
        let c = d8.generated_subgroup(&[d8.parse_element("r").unwrap()]);
        assert!(matches!(dihedral_subanalysis(&g, &c).unwrap(), DihedralAnalysis::NotApplicable { .. }));
    }
}
