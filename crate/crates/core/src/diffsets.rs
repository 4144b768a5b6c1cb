//! Difference sets and their relatives, all verified by exact counting.

use serde::Serialize;

use crate::designs::PgdParams;
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};
use crate::report::Verdict;

/// Representation counts of every element as `d1 d2^-1`, `d1^-1 d2` and `d1 d2^-1 d3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceProfile {
    pub set: Vec<usize>,
    pub diff: Vec<usize>,
    pub reverse: Vec<usize>,
    pub triple: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DsParams {
    pub n: usize,
    pub k: usize,
    pub mu: usize,
    pub trivial: bool,
}

/// Parameters `(m, r, k, μ)`: `m` cosets of a forbidden subgroup of order `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RdsParams {
    pub m: usize,
    pub r: usize,
    pub k: usize,
    pub mu: usize,
}

fn normalized(h: &GroupTable, d: &[usize]) -> Result<Vec<usize>> {
    let mut s = d.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&x) = s.iter().find(|&&x| x >= h.order()) {
        return Err(Error::UnknownElement(x.to_string()));
    }
    Ok(s)
}

pub fn difference_profile(h: &GroupTable, d: &[usize]) -> Result<DifferenceProfile> {
    let set = normalized(h, d)?;
    let n = h.order();
    let mut diff = vec![0usize; n];
    let mut reverse = vec![0usize; n];
    for &x in &set {
        for &y in &set {
            diff[h.mul(x, h.inv(y))] += 1;
            reverse[h.mul(h.inv(x), y)] += 1;
        }
    }
    let mut triple = vec![0usize; n];
    for (x, &c) in diff.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for &z in &set {
            triple[h.mul(x, z)] += c;
        }
    }
    Ok(DifferenceProfile { set, diff, reverse, triple })
}

impl DifferenceProfile {
    pub fn k(&self) -> usize {
        self.set.len()
    }

    fn contains(&self, x: usize) -> bool {
        self.set.binary_search(&x).is_ok()
    }
}

/// `(n, k, μ)` if every non-identity element is a difference exactly `μ` times.
pub fn is_difference_set(h: &GroupTable, d: &[usize]) -> Result<Verdict<DsParams>> {
    let p = difference_profile(h, d)?;
    let (n, k) = (h.order(), p.k());
    if k == 0 || k == n {
        return Ok(Verdict::fail(format!("trivial: |D| = {k} in a group of order {n}")));
    }
    let e = h.identity();
    let mut mu = None;
    for x in h.elements().filter(|&x| x != e) {
        match mu {
            None => mu = Some(p.diff[x]),
            Some(m) if m != p.diff[x] => {
                return Ok(Verdict::fail(format!(
                    "{} is a difference {} times, another element {m} times",
                    h.label(x),
                    p.diff[x]
                )));
            }
            _ => {}
        }
    }
    let mu = mu.unwrap_or(0);
    Ok(DsParams { n, k, mu, trivial: k <= 1 || k + 1 >= n }.into())
}

/// `(n, k, α, β)` if `d1 d2^-1 d3` hits elements of `D` exactly `2k-1+β`
/// times and all other elements `α` times.
pub fn is_partial_geometric_ds(h: &GroupTable, d: &[usize]) -> Result<Verdict<PgdParams>> {
    let p = difference_profile(h, d)?;
    let (n, k) = (h.order(), p.k());
    if k == 0 || k == n {
        return Ok(Verdict::fail(format!("trivial: |D| = {k} in a group of order {n}")));
    }
    let (mut inside, mut outside) = (None, None);
    for x in h.elements() {
        let slot = if p.contains(x) { &mut inside } else { &mut outside };
        match *slot {
            None => *slot = Some(p.triple[x]),
            Some(c) if c != p.triple[x] => {
                return Ok(Verdict::fail(format!(
                    "{} is a triple product {} times, but another element on the same side {c} times",
                    h.label(x),
                    p.triple[x]
                )));
            }
            _ => {}
        }
    }
    let inside = inside.unwrap_or(0);
    if inside < 2 * k - 1 {
        return Ok(Verdict::fail(format!("elements of D are triple products only {inside} times")));
    }
    Ok(PgdParams { n, k, alpha: outside.unwrap_or(0), beta: inside - (2 * k - 1) }.into())
}

/// Both `d1 d2^-1` and `d1^-1 d2` counts of non-identity elements lie in `{0, μ}`.
pub fn is_partial_mu_geometric_ds(h: &GroupTable, d: &[usize], mu: usize) -> Result<Verdict<()>> {
    if mu == 0 {
        return Err(Error::InvalidParameter("μ must be positive".into()));
    }
    let p = difference_profile(h, d)?;
    for x in h.elements().filter(|&x| x != h.identity()) {
        for (name, c) in [("d1*d2^-1", p.diff[x]), ("d1^-1*d2", p.reverse[x])] {
            if c != 0 && c != mu {
                return Ok(Verdict::fail(format!("{} arises as {name} {c} times", h.label(x))));
            }
        }
    }
    Ok(().into())
}

/// Relative difference set test against a given forbidden subgroup.
pub fn is_relative_difference_set(h: &GroupTable, d: &[usize], forbidden: &Subgroup) -> Result<Verdict<RdsParams>> {
    if forbidden.elements().iter().any(|&x| x >= h.order()) || forbidden.index() == 0 {
        return Err(Error::NotSubgroup("forbidden subgroup does not belong to this group".into()));
    }
    if forbidden.order() == h.order() {
        return Err(Error::Precondition("forbidden subgroup must be proper".into()));
    }
    let p = difference_profile(h, d)?;
    let mut mu = None;
    for x in h.elements().filter(|&x| x != h.identity()) {
        if forbidden.contains(x) {
            if p.diff[x] != 0 {
                return Ok(Verdict::fail(format!(
                    "{} lies in the forbidden subgroup but is a difference {} times",
                    h.label(x),
                    p.diff[x]
                )));
            }
        } else {
            match mu {
                None => mu = Some(p.diff[x]),
                Some(m) if m != p.diff[x] => {
                    return Ok(Verdict::fail(format!(
                        "{} is a difference {} times, another element {m} times",
                        h.label(x),
                        p.diff[x]
                    )));
                }
                _ => {}
            }
        }
    }
    Ok(RdsParams {
        m: forbidden.index(),
        r: forbidden.order(),
        k: p.k(),
        mu: mu.unwrap_or(0),
    }
    .into())
}

/// The non-differences together with the identity, if they form a subgroup.
pub fn find_forbidden_subgroup(h: &GroupTable, d: &[usize]) -> Result<Verdict<Subgroup>> {
    let p = difference_profile(h, d)?;
    let zeros: Vec<usize> = h.elements().filter(|&x| x == h.identity() || p.diff[x] == 0).collect();
    Ok(match Subgroup::new(h, &zeros) {
        Ok(n) => n.into(),
        Err(e) => Verdict::fail(format!("non-differences with the identity: {e}")),
    })
}

/// Whether `D^-1` is again a relative difference set; returns its forbidden subgroup.
///
/// When the forbidden subgroup of `D` is normal the answer must be yes, and a
/// negative answer is reported as an inconsistency.
pub fn is_symmetric_rds(h: &GroupTable, d: &[usize], forbidden: &Subgroup) -> Result<Verdict<Subgroup>> {
    let base = is_relative_difference_set(h, d, forbidden)?;
    if let Some(reason) = base.reason() {
        return Err(Error::Precondition(format!("not a relative difference set: {reason}")));
    }
    let inv = h.inverse_set(d);
    let verdict = match find_forbidden_subgroup(h, &inv)? {
        Verdict::Holds { value: n2 } => match is_relative_difference_set(h, &inv, &n2)? {
            Verdict::Holds { value } if Some(&value) == base.value() => n2.into(),
            Verdict::Holds { value } => Verdict::fail(format!("D^-1 has different parameters {value:?}")),
            Verdict::Fails { reason } => Verdict::fail(reason),
        },
        Verdict::Fails { reason } => Verdict::fail(reason),
    };
    if !verdict.holds() && h.is_normal(forbidden)? {
        return Err(Error::Inconsistency(
            "D^-1 is not a relative difference set although the forbidden subgroup is normal".into(),
        ));
    }
    Ok(verdict)
}

/// `k - μ` odd, the necessary condition for difference sets in dihedral groups.
pub fn dihedral_ds_parity_ok(k: usize, mu: usize) -> bool {
    k >= mu && (k - mu) % 2 == 1
}

/// The `h` with `b = a h`, if `b` is a right translate of `a`.
pub fn right_translate_witness(g: &GroupTable, a: &[usize], b: &[usize]) -> Option<usize> {
    let mut target = b.to_vec();
    target.sort_unstable();
    let first = *a.first()?;
    // a h contains b[0] only if h = first^-1 * something in b.
    target
        .iter()
        .map(|&y| g.mul(g.inv(first), y))
        .find(|&h| g.right_translate(a, h) == target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_group, GroupSpec};

    fn z(n: usize) -> GroupTable {
        make_group(&GroupSpec::Cyclic(n)).unwrap()
    }

    #[test]
    fn empty_profile() {
        let p = difference_profile(&z(5), &[]).unwrap();
        assert!(p.diff.iter().chain(&p.reverse).chain(&p.triple).all(|&c| c == 0));
        assert!(!is_difference_set(&z(5), &[]).unwrap().holds());
    }

    #[test]
    fn fano_set() {
        let g = z(7);
        let p = difference_profile(&g, &[1, 2, 4]).unwrap();
        assert_eq!(p.diff, vec![3, 1, 1, 1, 1, 1, 1]);
        let v = is_difference_set(&g, &[1, 2, 4]).unwrap().into_value().unwrap();
        assert_eq!((v.n, v.k, v.mu, v.trivial), (7, 3, 1, false));
        let c = is_difference_set(&g, &[0, 3, 5, 6]).unwrap().into_value().unwrap();
        assert_eq!((c.k, c.mu), (4, 2));
        let pg = is_partial_geometric_ds(&g, &[1, 2, 4]).unwrap().into_value().unwrap();
        assert_eq!((pg.alpha, pg.beta), (3, 0));
    }

    #[test]
    fn almost_whole_group_is_trivial() {
        let v = is_difference_set(&z(6), &[0, 1, 2, 3, 4]).unwrap().into_value().unwrap();
        assert_eq!((v.n, v.k, v.mu, v.trivial), (6, 5, 4, true));
    }

    #[test]
    fn singleton_pgds() {
        let v = is_partial_geometric_ds(&z(9), &[0]).unwrap().into_value().unwrap();
        assert_eq!((v.n, v.k, v.alpha, v.beta), (9, 1, 0, 0));
    }

    #[test]
    fn consecutive_triple_fails_mu_geometric() {
        assert!(!is_partial_mu_geometric_ds(&z(8), &[0, 1, 2], 1).unwrap().holds());
    }

    #[test]
    fn cyclic_difference_set_forbids_only_identity() {
        let g = z(7);
        let n = find_forbidden_subgroup(&g, &[1, 2, 4]).unwrap().into_value().unwrap();
        assert_eq!(n.elements(), &[0]);
        let r = is_relative_difference_set(&g, &[1, 2, 4], &n).unwrap().into_value().unwrap();
        assert_eq!((r.m, r.r, r.k, r.mu), (7, 1, 3, 1));
        assert!(is_symmetric_rds(&g, &[1, 2, 4], &n).unwrap().holds());
    }

    #[test]
    fn parity_rule() {
        assert!(!dihedral_ds_parity_ok(6, 2));
        assert!(!dihedral_ds_parity_ok(3, 1));
        assert!(dihedral_ds_parity_ok(4, 1));
    }

    #[test]
    fn translate_witness() {
        let g = z(7);
        assert_eq!(right_translate_witness(&g, &[1, 2, 4], &[3, 4, 6]), Some(2));
        assert_eq!(right_translate_witness(&g, &[1, 2, 4], &[1, 2, 3]), None);
    }
}
