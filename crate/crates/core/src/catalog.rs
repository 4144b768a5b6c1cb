//! Self-verifying reconstructions of known difference sets and distance-regular
//! Cayley graphs.

use std::sync::Arc;

use serde::Serialize;

use crate::bridge::{
    bridge_construct_dih, bridge_extract, semidirect_guarantee, transport_group, transport_no_involutions,
    transport_representatives, Family, GuaranteeReason,
};
use crate::cayley::{build_cayley, CayleyGraph};
use crate::designs::development;
use crate::diffsets::{
    dihedral_ds_parity_ok, find_forbidden_subgroup, is_difference_set, is_partial_geometric_ds,
    is_partial_mu_geometric_ds, is_relative_difference_set, is_symmetric_rds,
};
use crate::error::{Error, Result};
use crate::field::{gf_make, prime_power};
use crate::graph::Girth;
use crate::group::{group_from_presentation, make_group, GroupSpec, GroupTable, Subgroup};
use crate::iso::{are_isomorphic_small, Isomorphism};
use crate::report::VerificationReport;
use crate::spectrum::{self, Factor};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    /// Name and default of the optional integer parameter.
    pub parameter: Option<(&'static str, usize)>,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "singer",
        summary: "Singer (q^2+q+1, q+1, 1) difference set and its projective-plane incidence graph",
        parameter: Some(("q", 2)),
    },
    CatalogEntry {
        name: "vls",
        summary: "van Lint-Schrijver partial 1-geometric difference set in GF(81)",
        parameter: None,
    },
    CatalogEntry {
        name: "suetake",
        summary: "symmetric (12,3,12,4) relative difference set in Z2 x Z3 x Z6 and the Suetake graph",
        parameter: None,
    },
    CatalogEntry {
        name: "ag-minus-parallel",
        summary: "(q,q,q,1) relative difference set {(x,x^2)} in GF(q)^2, q odd",
        parameter: Some(("q", 3)),
    },
    CatalogEntry {
        name: "designs16",
        summary: "the three distance-regular graphs {6,5,4;1,2,6} as Cayley graphs on groups of order 32",
        parameter: None,
    },
    CatalogEntry {
        name: "cube",
        summary: "the 4-cube on Z4 x Z4 and its transport to Dih(Z4 x Z2)",
        parameter: None,
    },
    CatalogEntry {
        name: "paley9-double",
        summary: "bipartite double of P(9) on Z6 x Z3 and on (Z3 x Z3) x| Z2",
        parameter: None,
    },
    CatalogEntry {
        name: "knn-matching",
        summary: "K_{n,n} minus a perfect matching on the dihedral group of order 2n",
        parameter: Some(("n", 6)),
    },
];

/// Runs an entry by name; `param` overrides the entry's default parameter.
pub fn run(name: &str, param: Option<usize>) -> Result<VerificationReport> {
    let entry = ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown catalog entry `{name}`")))?;
    let p = match (entry.parameter, param) {
        (Some(_), Some(p)) => p,
        (Some((_, default)), None) => default,
        (None, Some(_)) => return Err(Error::InvalidParameter(format!("`{name}` takes no parameter"))),
        (None, None) => 0,
    };
    match name {
        "singer" => singer_report(p),
        "vls" => vls_report(),
        "suetake" => suetake_report(),
        "ag-minus-parallel" => ag_report(p),
        "designs16" => designs16_report(),
        "cube" => cube_report(),
        "paley9-double" => paley9_report(),
        "knn-matching" => knn_matching_report(p),
        _ => unreachable!("entry list and dispatch agree"),
    }
}

/// `(Z_{q^2+q+1}, D)` with `D` the exponents `i` for which `β^i` has trace 0
/// down to GF(q), `β` generating GF(q^3)^*.
pub fn singer(q: usize) -> Result<(GroupTable, Vec<usize>)> {
    let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
    if q > 16 {
        return Err(Error::TooLarge("singer is limited to q <= 16".into()));
    }
    let f = gf_make(p, 3 * e)?;
    let n = q * q + q + 1;
    let mut d: Vec<usize> = Vec::new();
    for i in 0..f.size() - 1 {
        if f.relative_trace(e, f.exp(i))? == 0 {
            d.push(i % n);
        }
    }
    d.sort_unstable();
    d.dedup();
    Ok((make_group(&GroupSpec::Cyclic(n))?, d))
}

/// GF(81) as a group, and `{0} ∪ {x : x^5 = 1}`.
pub fn vls() -> Result<(GroupTable, Vec<usize>)> {
    let f = gf_make(3, 4)?;
    let gamma = f.element_of_order(5)?;
    let mut d: Vec<usize> = std::iter::once(0).chain((0..5).map(|i| f.pow(gamma, i))).collect();
    d.sort_unstable();
    Ok((f.additive_group()?, d))
}

pub const SUETAKE_DIGITS: [&str; 12] =
    ["000", "002", "004", "005", "011", "023", "100", "101", "114", "122", "123", "125"];

/// `Z2 x Z3 x Z6`, with triple `xyz` at index `18x + 6y + z`.
pub fn suetake() -> Result<(GroupTable, Vec<usize>)> {
    let g = make_group(&"Z2xZ3xZ6".parse::<GroupSpec>()?)?;
    let d = SUETAKE_DIGITS
        .iter()
        .map(|t| {
            let v: Vec<usize> = t.chars().map(|c| c.to_digit(10).unwrap_or(0) as usize).collect();
            18 * v[0] + 6 * v[1] + v[2]
        })
        .collect();
    Ok((g, d))
}

/// `GF(q)^2` with `D = {(x, x^2)}` and `N = {0} x GF(q)`; `(x, y)` has index `x q + y`.
pub fn ag_minus_parallel(q: usize) -> Result<(GroupTable, Vec<usize>, Subgroup)> {
    let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
    if p == 2 {
        return Err(Error::InvalidParameter("{(x,x^2)} collapses in characteristic 2".into()));
    }
    if q > 13 {
        return Err(Error::TooLarge("ag_minus_parallel is limited to q <= 13".into()));
    }
    let f = gf_make(p, e)?;
    let g = f.product_group(2)?;
    let d: Vec<usize> = (0..q).map(|x| x * q + f.mul(x, x)).collect();
    let n = Subgroup::new(&g, &(0..q).collect::<Vec<_>>())?;
    Ok((g, d, n))
}

/// One of the three groups of order 32 carrying a DRG `{6,5,4;1,2,6}`.
#[derive(Clone, Debug)]
pub struct Designs16Entry {
    pub name: &'static str,
    pub cayley: CayleyGraph,
    /// Index-2 subgroup `K` on which `S ∩ K` gives the 4-cube.
    pub cube_subgroup: Subgroup,
}

pub const G3_RELATORS: [&str; 9] =
    ["a^4", "c^2", "d^2", "(d*a)^2", "(d*a^2)^2", "a^2=b^2", "a*c=c*a", "b*c=c*b", "d*a*b*c=(d*b)^-1"];

pub fn designs16() -> Result<Vec<Designs16Entry>> {
    let g1 = Arc::new(make_group(&GroupSpec::ElementaryAbelian(2, 5))?);
    let g2 = Arc::new(group_from_presentation(
        &["a", "b", "c"],
        &["a^8", "b^2", "c^2", "a*b=b*a", "c*a*c=a^-1", "c*b*c=b^-1"],
    )?);
    let g3 = Arc::new(group_from_presentation(&["a", "b", "c", "d"], &G3_RELATORS)?);
    let specs: [(&str, Arc<GroupTable>, &str, &[&str]); 3] = [
        ("G1", g1, "a*f, b*f, c*f, d*f, f, a*b*c*d*f", &["a*f", "b*f", "c*f", "d*f"]),
        ("G2", g2, "c, c*a, c*a^2, c*a^4, c*a*b, c*a^6*b", &["a^2", "b", "c"]),
        ("G3", g3, "d, d*a^2, (d*b)^4*d*a, (d*b)^6*d*a, d*b, d*a*b*c", &["d*b", "d*a"]),
    ];
    specs
        .into_iter()
        .map(|(name, g, s, k)| {
            let set = g.parse_set(s)?;
            let gens = k.iter().map(|w| g.parse_element(w)).collect::<Result<Vec<_>>>()?;
            let cube_subgroup = g.generated_subgroup(&gens);
            Ok(Designs16Entry { name, cayley: build_cayley(g, &set)?, cube_subgroup })
        })
        .collect()
}

/// The 4-cube `Cay(Z4 x Z4, {a, a^-1, b, b^-1})`.
pub fn cube() -> Result<CayleyGraph> {
    let g = Arc::new(make_group(&"Z4xZ4".parse::<GroupSpec>()?)?);
    let s = g.parse_set("a, a^-1, b, b^-1")?;
    build_cayley(g, &s)
}

/// `Cay(Z6 x Z3, {a, a^5, a^3 b, a^3 b^2})` and `Cay(Dih(H), {c, a^2 c, b c, a^2 b c})`.
pub fn paley9_double() -> Result<(CayleyGraph, CayleyGraph)> {
    let g = Arc::new(make_group(&"Z6xZ3".parse::<GroupSpec>()?)?);
    let s = g.parse_set("a, a^5, a^3*b, a^3*b^2")?;
    let gamma = build_cayley(Arc::clone(&g), &s)?;
    let h = gamma.part_subgroup()?;
    let (_, embedding) = g.subgroup_table(&h)?;
    let target = transport_group(&gamma, None)?;
    let c = embedding.len();
    let mut s_new = Vec::new();
    for w in ["e", "a^2", "b", "a^2*b"] {
        let x = g.parse_element(w)?;
        let local = embedding
            .iter()
            .position(|&y| y == x)
            .ok_or_else(|| Error::Inconsistency(format!("{w} is not in H")))?;
        s_new.push(target.mul(local, c));
    }
    let other = build_cayley(target, &s_new)?;
    Ok((gamma, other))
}

/// `Cay(Dih(Z_n), (Z_n \ {0}) c)`: the incidence graph of the trivial design.
pub fn knn_matching(n: usize) -> Result<CayleyGraph> {
    if n < 3 {
        return Err(Error::InvalidParameter("need n >= 3".into()));
    }
    let h = make_group(&GroupSpec::Cyclic(n))?;
    let d: Vec<usize> = (1..n).collect();
    Ok(bridge_construct_dih(&h, &d)?.cayley)
}

/// How a catalog set is turned into a Cayley graph.
#[derive(Clone, Debug)]
pub enum BridgeInput {
    /// Abelian `H` and `D ⊆ H`, bridged to `Dih(H)`.
    Dih { name: String, h: Arc<GroupTable>, d: Vec<usize> },
    /// A bipartite Cayley graph whose `D = S a^-1` is re-embedded with the same `a`.
    Embed { name: String, cayley: CayleyGraph },
}

/// Every catalog set usable with the bridges.
pub fn bridge_inputs() -> Result<Vec<BridgeInput>> {
    let mut out = Vec::new();
    for q in [2, 3, 4] {
        let (h, d) = singer(q)?;
        out.push(BridgeInput::Dih { name: format!("singer({q})"), h: Arc::new(h), d });
    }
    let (h, d) = vls()?;
    out.push(BridgeInput::Dih { name: "vls".into(), h: Arc::new(h), d });
    let (h, d) = suetake()?;
    out.push(BridgeInput::Dih { name: "suetake".into(), h: Arc::new(h), d });
    for q in [3, 5] {
        let (h, d, _) = ag_minus_parallel(q)?;
        out.push(BridgeInput::Dih { name: format!("ag-minus-parallel({q})"), h: Arc::new(h), d });
    }
    for n in [4, 6] {
        let h = make_group(&GroupSpec::Cyclic(n))?;
        out.push(BridgeInput::Dih { name: format!("knn-matching({n})"), h: Arc::new(h), d: (1..n).collect() });
    }
    for e in designs16()? {
        out.push(BridgeInput::Embed { name: e.name.into(), cayley: e.cayley });
    }
    out.push(BridgeInput::Embed { name: "cube".into(), cayley: cube()? });
    Ok(out)
}

fn expect_array(report: &mut VerificationReport, what: &str, cay: &CayleyGraph, expected: &str) -> Result<bool> {
    let got = cay.intersection_array()?.map_or_else(|| "not distance-regular".to_string(), |a| a.to_string());
    report.put(&format!("{what}_array"), &got);
    Ok(report.expect_eq(&format!("{what} intersection array"), expected, got.as_str()))
}

fn family_check(report: &mut VerificationReport, cay: &CayleyGraph, expected: &Family) -> Result<()> {
    match bridge_extract(cay) {
        Ok(w) => {
            let ok = w.family == *expected;
            report.check(
                "bridge extraction",
                ok,
                format!("D = S a^-1 for {} representatives: {:?}", w.representatives.len(), w.family),
            );
            report.put("extracted", &w);
        }
        Err(e) => {
            report.check("bridge extraction", false, e.to_string());
        }
    }
    Ok(())
}

pub fn singer_report(q: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(format!("singer({q})"));
    let (h, d) = singer(q)?;
    let n = q * q + q + 1;
    r.put("set", &d);
    let ds = is_difference_set(&h, &d)?;
    r.check(
        "difference set",
        ds.value().is_some_and(|p| (p.n, p.k, p.mu) == (n, q + 1, 1)),
        format!("{ds:?}"),
    );
    let b = bridge_construct_dih(&h, &d)?;
    let g = b.cayley.graph();
    expect_array(&mut r, "bridge graph", &b.cayley, &format!("{{{},{q},{q};1,1,{}}}", q + 1, q + 1))?;
    r.check("girth", g.girth() == Girth::Exact(6), format!("{:?}", g.girth()));
    let k = (q + 1) as i64;
    let factors = [Factor::Quadratic(k * k), Factor::Quadratic(q as i64)];
    r.check(
        "annihilation",
        spectrum::annihilates(g, &factors),
        format!("{}{} = 0", factors[0], factors[1]),
    );
    let params = ds.into_value().ok_or_else(|| Error::Inconsistency("not a difference set".into()))?;
    family_check(&mut r, &b.cayley, &Family::DifferenceSet { params })?;
    Ok(r)
}

pub fn vls_report() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("vls");
    let (h, d) = vls()?;
    r.put("set", h.set_labels(&d));
    r.check("0 and 1 in D", d.contains(&0) && d.contains(&1), "membership");
    r.check("partial 1-geometric", is_partial_mu_geometric_ds(&h, &d, 1)?.holds(), "difference counts in {0,1}");
    let pg = is_partial_geometric_ds(&h, &d)?.into_value();
    r.check(
        "partial geometric difference set",
        pg.is_some_and(|p| (p.n, p.k, p.alpha, p.beta) == (81, 6, 2, 0)),
        format!("{pg:?}"),
    );
    let (n, k, mu) = (81usize, 6usize, 1usize);
    let c3 = k * (k - 1) * (k - mu) / ((n - k) * mu);
    r.expect_eq("c3 from k(k-1)(k-μ)/((n-k)μ)", 2, c3);
    let dev = development(&h, &d)?.is_partial_geometric();
    r.check(
        "development is partial geometric",
        dev.value().is_some_and(|p| (p.alpha, p.beta) == (2, 0)),
        format!("{dev:?}"),
    );
    let b = bridge_construct_dih(&h, &d)?;
    r.expect_eq("bridge graph order", 162, b.cayley.graph().order());
    expect_array(&mut r, "bridge graph", &b.cayley, "{6,5,5,4;1,1,2,6}")?;
    let params = crate::designs::PgdParams { n, k, alpha: 2, beta: 0 };
    family_check(&mut r, &b.cayley, &Family::PartialGeometric { params, mu, c3 })?;
    Ok(r)
}

pub fn suetake_report() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("suetake");
    let (h, d) = suetake()?;
    r.expect_eq("|D|", 12, d.len());
    r.put("set", h.set_labels(&d));
    let n = match find_forbidden_subgroup(&h, &d)?.into_value() {
        Some(n) => n,
        None => {
            r.check("forbidden subgroup", false, "non-differences do not form a subgroup");
            return Ok(r);
        }
    };
    r.expect_eq("forbidden subgroup order", 3, n.order());
    r.put("forbidden_subgroup", h.set_labels(n.elements()));
    let rds = is_relative_difference_set(&h, &d, &n)?.into_value();
    r.check(
        "relative difference set",
        rds.is_some_and(|p| (p.m, p.r, p.k, p.mu) == (12, 3, 12, 4)),
        format!("{rds:?}"),
    );
    r.check("symmetric", is_symmetric_rds(&h, &d, &n)?.holds(), "D^-1 is a relative difference set");
    r.check("partial 4-geometric", is_partial_mu_geometric_ds(&h, &d, 4)?.holds(), "counts in {0,4}");
    let std = development(&h, &d)?.is_symmetric_transversal();
    r.check(
        "development is STD_4[12;3]",
        std.value().is_some_and(|t| (t.mu, t.r) == (4, 3)),
        format!("{std:?}"),
    );
    let b = bridge_construct_dih(&h, &d)?;
    r.expect_eq("bridge graph order", 72, b.cayley.graph().order());
    expect_array(&mut r, "bridge graph", &b.cayley, "{12,11,8,1;1,4,11,12}")?;
    let antipodal = b.cayley.antipodal(4)?;
    r.check(
        "antipodal with classes of size 3",
        antipodal.as_ref().is_some_and(|c| c.iter().all(|x| x.len() == 3)),
        format!("{} classes", antipodal.as_ref().map_or(0, Vec::len)),
    );
    if let Some(rds) = rds {
        let mut forbidden = h.set_labels(n.elements());
        forbidden.sort();
        let pgds = crate::designs::PgdParams { n: 36, k: 12, alpha: 4 * 11, beta: 11 * 3 };
        family_check(&mut r, &b.cayley, &Family::RelativeDifferenceSet { params: rds, pgds, c3: 11, forbidden })?;
    }
    Ok(r)
}

pub fn ag_report(q: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(format!("ag-minus-parallel({q})"));
    let (h, d, n) = ag_minus_parallel(q)?;
    r.put("set", h.set_labels(&d));
    let rds = is_relative_difference_set(&h, &d, &n)?.into_value();
    r.check(
        "relative difference set",
        rds.is_some_and(|p| (p.m, p.r, p.k, p.mu) == (q, q, q, 1)),
        format!("{rds:?}"),
    );
    let b = bridge_construct_dih(&h, &d)?;
    expect_array(&mut r, "bridge graph", &b.cayley, &format!("{{{q},{},{},1;1,1,{},{q}}}", q - 1, q - 1, q - 1))?;
    r.check("antipodal", b.cayley.antipodal(4)?.is_some(), "S_4 ∪ {e} is a subgroup");
    if let Some(rds) = rds {
        let mut forbidden = h.set_labels(n.elements());
        forbidden.sort();
        let pgds = crate::designs::PgdParams { n: q * q, k: q, alpha: q - 1, beta: 0 };
        family_check(&mut r, &b.cayley, &Family::RelativeDifferenceSet { params: rds, pgds, c3: q - 1, forbidden })?;
    }
    Ok(r)
}

/// Nonabelian, every cyclic subgroup normal: for order 16 this is `Q8 x Z2`.
fn is_hamiltonian(g: &GroupTable) -> Result<bool> {
    if g.is_abelian() {
        return Ok(false);
    }
    for x in g.elements() {
        if !g.is_normal(&g.generated_subgroup(&[x]))? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn designs16_report() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("designs16");
    let entries = designs16()?;
    for e in &entries {
        let g = e.cayley.group();
        let name = e.name;
        r.expect_eq(&format!("{name} order"), 32, g.order());
        expect_array(&mut r, name, &e.cayley, "{6,5,4;1,2,6}")?;
        let k = &e.cube_subgroup;
        let (ktab, embedding) = g.subgroup_table(k)?;
        let local: Vec<usize> = e
            .cayley
            .connection_set()
            .iter()
            .filter_map(|&s| embedding.iter().position(|&y| y == s))
            .collect();
        r.expect_eq(&format!("{name} |S ∩ K|"), 4, local.len());
        let cube = build_cayley(Arc::new(ktab.clone()), &local)?;
        expect_array(&mut r, &format!("{name} Cay(K, S∩K)"), &cube, "{4,3,2,1;1,2,3,4}")?;
        let v = semidirect_guarantee(&e.cayley)?;
        r.check(
            format!("{name} involution outside H"),
            v.reason == GuaranteeReason::InvolutionFound,
            format!("{:?}, witness {:?}", v.reason, v.witness.as_ref().map(|w| &w.label)),
        );
        match bridge_extract(&e.cayley) {
            Ok(w) => r.check(
                format!("{name} difference set"),
                matches!(w.family, Family::DifferenceSet { params } if (params.n, params.k, params.mu) == (16, 6, 2)),
                format!("{:?}", w.family),
            ),
            Err(err) => r.check(format!("{name} difference set"), false, err.to_string()),
        };
        let h = e.cayley.part_subgroup()?;
        let (htab, _) = g.subgroup_table(&h)?;
        match name {
            "G1" => r.check("G1 elementary abelian", g.is_abelian() && g.elements().all(|x| g.element_order(x) <= 2), ""),
            "G2" => r.check(
                "G2 is Dih(H)",
                htab.is_abelian() && h.complement().iter().all(|&x| g.element_order(x) == 2),
                "H abelian and G \\ H all involutions",
            ),
            _ => {
                let kinv = ktab.elements().filter(|&x| ktab.element_order(x) == 2).count();
                let has8 = ktab.elements().any(|x| ktab.element_order(x) == 8);
                r.check("G3 K is SD16", !ktab.is_abelian() && has8 && kinv == 5, format!("{kinv} involutions"));
                r.check("G3 H is Q8 x Z2", is_hamiltonian(&htab)?, "nonabelian with all cyclic subgroups normal")
            }
        };
    }
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let iso = are_isomorphic_small(entries[i].cayley.graph(), entries[j].cayley.graph())?;
            r.check(
                format!("{} and {} non-isomorphic", entries[i].name, entries[j].name),
                matches!(iso, Isomorphism::NotIsomorphic { .. }),
                format!("{iso:?}"),
            );
        }
    }
    r.check("no dihedral (16,6,2) difference set", !dihedral_ds_parity_ok(6, 2), "k - μ = 4 is even");
    Ok(r)
}

pub fn cube_report() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("cube");
    let gamma = cube()?;
    let g = gamma.group();
    expect_array(&mut r, "Z4 x Z4", &gamma, "{4,3,2,1;1,2,3,4}")?;
    let h = gamma.part_subgroup()?;
    r.check("no involution outside H", g.involutions(Some(&h)).is_empty(), "");
    let v = semidirect_guarantee(&gamma)?;
    r.check("exceptional case", v.reason == GuaranteeReason::Exceptional, format!("{:?}", v.reason));
    let a = g.parse_element("a")?;
    let t = transport_no_involutions(&gamma, a, None)?;
    let tg = t.cayley.group();
    r.check("transport target is nonabelian", !tg.is_abelian(), format!("order {}", tg.order()));
    r.check(
        "transport target has involutions outside H",
        tg.elements().skip(h.order()).all(|x| tg.element_order(x) == 2),
        "Dih(Z4 x Z2)",
    );
    expect_array(&mut r, "transported", &t.cayley, "{4,3,2,1;1,2,3,4}")?;
    r.put("transported_set", tg.set_labels(t.cayley.connection_set()));
    let reps = transport_representatives(&gamma, None, t.cayley.connection_set())?;
    r.check("a is a transport representative", reps.contains(&a), format!("{reps:?}"));
    Ok(r)
}

pub fn paley9_report() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("paley9-double");
    let (gamma, other) = paley9_double()?;
    let h = gamma.part_subgroup()?;
    r.expect_eq("|H|", 9, h.order());
    r.expect_eq("|G \\ H|", 9, h.complement().len());
    r.put("transported_set", other.group().set_labels(other.connection_set()));
    let iso = are_isomorphic_small(gamma.graph(), other.graph())?;
    r.check("isomorphic", matches!(iso, Isomorphism::Isomorphic { .. }), "backtracking search");
    let reps = transport_representatives(&gamma, None, other.connection_set())?;
    r.check("no g with S' = S g^-1 c", reps.is_empty(), format!("scanned {} elements", h.complement().len()));
    Ok(r)
}

pub fn knn_matching_report(n: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(format!("knn-matching({n})"));
    let cay = knn_matching(n)?;
    let k = n - 1;
    expect_array(&mut r, "K_{n,n} minus matching", &cay, &format!("{{{k},{},1;1,{},{k}}}", k - 1, k - 1))?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singer_two_is_a_fano_translate() {
        let (_, d) = singer(2).unwrap();
        assert_eq!(d.len(), 3);
        let g = make_group(&GroupSpec::Cyclic(7)).unwrap();
        assert!(crate::diffsets::right_translate_witness(&g, &[1, 2, 4], &d).is_some()
            || crate::diffsets::right_translate_witness(&g, &[3, 5, 6], &d).is_some());
    }

    #[test]
    fn even_q_is_rejected() {
        assert!(ag_minus_parallel(4).is_err());
        assert!(singer(6).is_err());
    }

    #[test]
    fn unknown_entry() {
        assert!(run("hoffman", None).is_err());
        assert!(run("vls", Some(3)).is_err());
    }
}
