//! Coset enumeration (HLT strategy with coincidence processing) over the
//! trivial subgroup, producing the regular representation of a finitely
//! presented group.

use std::collections::VecDeque;

use super::words::parse_word;
use super::{Generator, GroupTable};
use crate::error::{Error, Result};

const COSET_LIMIT: usize = 1 << 20;

struct CosetTable {
    cols: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
}

#[inline]
fn inverse_col(x: usize) -> usize {
    x ^ 1
}

impl CosetTable {
    fn new(cols: usize) -> Self {
        CosetTable { cols, table: vec![vec![None; cols]], parent: vec![0] }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        let n = self.table.len();
        if n >= COSET_LIMIT {
            return Err(Error::TooLarge(format!("coset enumeration exceeded {COSET_LIMIT} cosets")));
        }
        self.table.push(vec![None; self.cols]);
        self.parent.push(n);
        self.table[c][x] = Some(n);
        self.table[n][inverse_col(x)] = Some(c);
        Ok(())
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<()> {
        if word.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, word.len() - 1);
        loop {
            while i <= j {
                match self.table[f][word[i]] {
                    Some(t) => {
                        f = t;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                match self.table[b][inverse_col(word[j])] {
                    Some(t) => {
                        b = t;
                        if j == 0 {
                            // Whole word traced backwards.
                            self.coincidence(f, b);
                            return Ok(());
                        }
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                self.table[f][word[i]] = Some(b);
                self.table[b][inverse_col(word[i])] = Some(f);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    fn merge(&mut self, k: usize, l: usize, queue: &mut VecDeque<usize>) {
        let (a, b) = (self.rep(k), self.rep(l));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(g) = queue.pop_front() {
            for x in 0..self.cols {
                let Some(d) = self.table[g][x] else { continue };
                self.table[d][inverse_col(x)] = None;
                let mu = self.rep(g);
                let nu = self.rep(d);
                if let Some(t) = self.table[mu][x] {
                    self.merge(nu, t, &mut queue);
                } else if let Some(t) = self.table[nu][inverse_col(x)] {
                    self.merge(mu, t, &mut queue);
                } else {
                    self.table[mu][x] = Some(nu);
                    self.table[nu][inverse_col(x)] = Some(mu);
                }
            }
        }
    }
}

/// Enumerates the group `<names | relators>`.
///
/// Relators are words over `names` (see [`super::words`]); `u=v` stands for
/// `u v^-1`. The result's identity is element 0 and the generators carry the
/// given names.
pub fn group_from_presentation(names: &[&str], relators: &[&str]) -> Result<GroupTable> {
    if names.is_empty() {
        return Err(Error::InvalidParameter("presentation needs a generator".into()));
    }
    let cols = 2 * names.len();
    let mut words: Vec<Vec<usize>> = Vec::new();
    for r in relators {
        let letters = match r.split_once('=') {
            Some((lhs, rhs)) => {
                let mut l = parse_word(lhs, names)?.letters();
                let rl = parse_word(rhs, names)?.letters();
                l.extend(rl.into_iter().rev().map(|(g, inv)| (g, !inv)));
                l
            }
            None => parse_word(r, names)?.letters(),
        };
        words.push(letters.into_iter().map(|(g, inv)| 2 * g + inv as usize).collect());
    }

    let mut ct = CosetTable::new(cols);
    let mut c = 0;
    while c < ct.table.len() {
        if ct.live(c) {
            for w in &words {
                if !ct.live(c) {
                    break;
                }
                ct.scan_and_fill(c, w)?;
            }
            if ct.live(c) {
                for x in 0..cols {
                    if ct.table[c][x].is_none() {
                        ct.define(c, x)?;
                    }
                }
            }
        }
        c += 1;
    }

    // Renumber live cosets breadth-first from coset 0, recording a word for each.
    let mut index = vec![usize::MAX; ct.table.len()];
    let mut order = vec![0usize];
    let mut path: Vec<Vec<usize>> = vec![Vec::new()];
    index[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let old = order[head];
        for x in 0..cols {
            let t = ct.table[old][x]
                .ok_or_else(|| Error::Inconsistency("incomplete coset table".into()))?;
            let t = ct.rep(t);
            if index[t] == usize::MAX {
                index[t] = order.len();
                order.push(t);
                let mut p = path[head].clone();
                p.push(x);
                path.push(p);
            }
        }
        head += 1;
    }
    let n = order.len();
    if n > super::DEFAULT_ORDER_LIMIT {
        return Err(Error::TooLarge(format!("presented group has order {n}")));
    }
    let act: Vec<Vec<usize>> = order
        .iter()
        .map(|&old| (0..cols).map(|x| index[ct.rep(ct.table[old][x].unwrap())]).collect())
        .collect();
    for w in &words {
        for start in 0..n {
            if w.iter().fold(start, |c, &x| act[c][x]) != start {
                return Err(Error::Inconsistency("relator fails in enumerated table".into()));
            }
        }
    }
    let gens = names
        .iter()
        .enumerate()
        .map(|(i, name)| Generator { name: (*name).into(), element: act[0][2 * i] })
        .collect();
    GroupTable::from_fn(n, gens, |a, b| path[b].iter().fold(a, |c, &x| act[c][x]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_presentation() {
        let g = group_from_presentation(&["r", "s"], &["r^5", "s^2", "(rs)^2"]).unwrap();
        assert_eq!(g.order(), 10);
        g.verify_axioms_exhaustive().unwrap();
        assert!(!g.is_abelian());
    }

    #[test]
    fn quaternion_via_equations() {
        let g = group_from_presentation(&["a", "b"], &["a^4", "a^2=b^2", "b^-1*a*b=a^-1"]).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.involutions(None).len(), 1);
    }

    #[test]
    fn trivial_and_cyclic() {
        assert_eq!(group_from_presentation(&["a"], &["a"]).unwrap().order(), 1);
        assert_eq!(group_from_presentation(&["a"], &["a^7"]).unwrap().order(), 7);
        // Coincidences collapse a^6 = a^4 = e to order 2.
        assert_eq!(group_from_presentation(&["a"], &["a^6", "a^4"]).unwrap().order(), 2);
    }
}
