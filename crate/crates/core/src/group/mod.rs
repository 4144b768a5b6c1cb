//! Finite groups stored as explicit multiplication tables.

mod presentation;
mod spec;
pub mod words;

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use presentation::group_from_presentation;
pub(crate) use spec::is_prime;
pub use spec::{make_group, make_group_with_limit, Automorphism, GroupSpec, DEFAULT_ORDER_LIMIT};

/// A named generator, used for labels and for parsing element words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub element: usize,
}

/// A finite group given by its full multiplication table.
///
/// Elements are the indices `0..order`. Tables built by [`make_group`] always
/// place the identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    identity: usize,
    inv: Vec<usize>,
    labels: Vec<String>,
    generators: Vec<Generator>,
}

/// On-disk group format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub identity: usize,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Generator>,
}

impl GroupTable {
    /// Builds a table from a product closure whose identity is element 0.
    pub(crate) fn from_fn(
        order: usize,
        generators: Vec<Generator>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("order must be positive".into()));
        }
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let c = f(a, b);
                if c >= order {
                    return Err(Error::InvalidGroup(format!("product {a}*{b} = {c} out of range")));
                }
                mul[a * order + b] = c as u32;
            }
        }
        let mut g = GroupTable {
            order,
            mul,
            identity: 0,
            inv: Vec::new(),
            labels: Vec::new(),
            generators,
        };
        g.finish()?;
        Ok(g)
    }

    /// Validates a raw table: closure, two-sided identity, inverses and
    /// associativity (Light's test over a generating set).
    pub fn from_table(
        mul: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
        generators: Vec<Generator>,
    ) -> Result<Self> {
        let order = mul.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in mul.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            for &c in row {
                if c >= order {
                    return Err(Error::InvalidGroup(format!("entry {c} in row {i} out of range")));
                }
                flat.push(c as u32);
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| flat[e * order + x] as usize == x && flat[x * order + e] as usize == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(Error::InvalidGroup("label count differs from order".into()));
            }
        }
        for gen in &generators {
            if gen.element >= order {
                return Err(Error::InvalidGroup(format!("generator {} out of range", gen.name)));
            }
        }
        let mut g = GroupTable {
            order,
            mul: flat,
            identity,
            inv: Vec::new(),
            labels: labels.clone().unwrap_or_default(),
            generators,
        };
        g.compute_inverses()?;
        g.check_associativity_light()?;
        if labels.is_none() {
            g.labels = g.word_labels();
        }
        Ok(g)
    }

    fn finish(&mut self) -> Result<()> {
        let n = self.order;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        self.compute_inverses()?;
        self.labels = self.word_labels();
        Ok(())
    }

    fn compute_inverses(&mut self) -> Result<()> {
        let n = self.order;
        let e = self.identity;
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| self.mul(x, y) == e)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no right inverse")))?;
            if self.mul(y, x) != e {
                return Err(Error::InvalidGroup(format!("inverse of {x} is one-sided")));
            }
            inv[x] = y;
        }
        self.inv = inv;
        Ok(())
    }

    fn check_associativity_light(&self) -> Result<()> {
        // Elements a with (xa)y = x(ay) for all x, y are closed under products,
        // so checking a generating set suffices.
        let mut basis = Vec::new();
        let mut reached = vec![false; self.order];
        reached[self.identity] = true;
        let mut count = 1;
        for g in 0..self.order {
            if reached[g] {
                continue;
            }
            basis.push(g);
            let mut queue: VecDeque<usize> = (0..self.order).filter(|&x| reached[x]).collect();
            while let Some(x) = queue.pop_front() {
                for &b in &basis {
                    let y = self.mul(x, b);
                    if !reached[y] {
                        reached[y] = true;
                        count += 1;
                        queue.push_back(y);
                    }
                }
            }
            if count == self.order {
                break;
            }
        }
        for &a in &basis {
            for x in 0..self.order {
                let xa = self.mul(x, a);
                for y in 0..self.order {
                    if self.mul(xa, y) != self.mul(x, self.mul(a, y)) {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({x},{a},{y})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Exhaustive check of all four table invariants. Cubic in the order.
    pub fn verify_axioms_exhaustive(&self) -> Result<()> {
        let n = self.order;
        let e = self.identity;
        for g in 0..n {
            if self.mul(e, g) != g || self.mul(g, e) != g {
                return Err(Error::InvalidGroup(format!("identity law fails at {g}")));
            }
            if self.mul(g, self.inv[g]) != e {
                return Err(Error::InvalidGroup(format!("inverse law fails at {g}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Shortest generator words, found breadth-first, as display labels.
    fn word_labels(&self) -> Vec<String> {
        let n = self.order;
        if self.generators.is_empty() {
            return (0..n)
                .map(|i| if i == self.identity { "e".into() } else { i.to_string() })
                .collect();
        }
        let names: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[self.identity] = Some(Vec::new());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (gi, gen) in self.generators.iter().enumerate() {
                let y = self.mul(x, gen.element);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(gi);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words
            .into_iter()
            .enumerate()
            .map(|(i, w)| match w {
                Some(w) => words::render_letters(&w, &names),
                None => i.to_string(),
            })
            .collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// Least `t >= 1` with `g^t = e`.
    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut t = 1;
        while x != self.identity {
            x = self.mul(x, g);
            t += 1;
        }
        t
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Replaces the generator list (and therefore the labels).
    pub fn with_generators(mut self, generators: Vec<Generator>) -> Result<Self> {
        for gen in &generators {
            if gen.element >= self.order {
                return Err(Error::InvalidGroup(format!("generator {} out of range", gen.name)));
            }
        }
        self.generators = generators;
        self.labels = self.word_labels();
        Ok(self)
    }

    /// Replaces the display labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::InvalidGroup("label count differs from order".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            order: self.order,
            identity: self.identity,
            mul: (0..self.order)
                .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
                .collect(),
            labels: Some(self.labels.clone()),
            generators: self.generators.clone(),
        }
    }

    pub fn from_file(file: GroupFile) -> Result<Self> {
        if file.mul.len() != file.order {
            return Err(Error::InvalidGroup("order field disagrees with table size".into()));
        }
        let g = GroupTable::from_table(file.mul, file.labels, file.generators)?;
        if g.identity != file.identity {
            return Err(Error::InvalidGroup(format!(
                "declared identity {} but table identity is {}",
                file.identity, g.identity
            )));
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("group file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        GroupTable::from_file(serde_json::from_str(text)?)
    }

    /// Resolves an element reference: an exact label, an index, or a
    /// generator word.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let t = text.trim();
        if let Some(i) = self.labels.iter().position(|l| l == t) {
            return Ok(i);
        }
        if let Ok(i) = t.parse::<usize>() {
            return if i < self.order {
                Ok(i)
            } else {
                Err(Error::UnknownElement(t.into()))
            };
        }
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        let word = words::parse_word(t, &names).map_err(|_| Error::UnknownElement(t.into()))?;
        Ok(self.eval_word(&word))
    }

    /// Parses a comma-separated element list; the result is sorted and deduplicated.
    pub fn parse_set(&self, text: &str) -> Result<Vec<usize>> {
        let mut set = BTreeSet::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            set.insert(self.parse_element(part)?);
        }
        Ok(set.into_iter().collect())
    }

    pub fn eval_word(&self, word: &words::Word) -> usize {
        self.eval_letters(&word.letters())
    }

    pub(crate) fn eval_letters(&self, letters: &[(usize, bool)]) -> usize {
        letters.iter().fold(self.identity, |acc, &(g, inverted)| {
            let x = self.generators[g].element;
            self.mul(acc, if inverted { self.inv(x) } else { x })
        })
    }

    pub fn set_labels(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|&x| self.labels[x].clone()).collect()
    }

    pub fn inverse_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&x| self.inv(x)).collect();
        out.sort_unstable();
        out
    }

    /// Right translate `D h`.
    pub fn right_translate(&self, set: &[usize], h: usize) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&d| self.mul(d, h)).collect();
        out.sort_unstable();
        out
    }

    /// Left translate `h D`.
    pub fn left_translate(&self, h: usize, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&d| self.mul(h, d)).collect();
        out.sort_unstable();
        out
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup {
            elements: (0..self.order).filter(|&x| seen[x]).collect(),
            parent_order: self.order,
        }
    }

    fn check_parent(&self, h: &Subgroup) -> Result<()> {
        if h.parent_order != self.order {
            return Err(Error::NotSubgroup(format!(
                "subgroup belongs to a group of order {}, not {}",
                h.parent_order, self.order
            )));
        }
        Ok(())
    }

    /// `g H g^-1 = H` for every `g`.
    pub fn is_normal(&self, h: &Subgroup) -> Result<bool> {
        self.check_parent(h)?;
        Ok((0..self.order).all(|g| {
            let gi = self.inv(g);
            h.elements.iter().all(|&x| h.contains(self.mul(self.mul(g, x), gi)))
        }))
    }

    /// All subgroups of index exactly 2, as kernels of maps onto the group of
    /// order 2. These all contain the subgroup generated by the squares.
    pub fn index2_subgroups(&self) -> Vec<Subgroup> {
        let n = self.order;
        if n % 2 == 1 {
            return Vec::new();
        }
        let squares: Vec<usize> = (0..n).map(|g| self.mul(g, g)).collect::<BTreeSet<_>>().into_iter().collect();
        let m = self.generated_subgroup(&squares);
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] == usize::MAX {
                let id = reps.len();
                reps.push(g);
                for &x in &m.elements {
                    coset_of[self.mul(x, g)] = id;
                }
            }
        }
        let q = reps.len();
        // Coordinates in the elementary abelian quotient.
        let mut mask = vec![None::<u64>; q];
        mask[coset_of[self.identity]] = Some(0);
        let mut rank = 0;
        for c in 0..q {
            if mask[c].is_some() {
                continue;
            }
            let bit = 1u64 << rank;
            rank += 1;
            let spanned: Vec<(usize, u64)> =
                (0..q).filter_map(|d| mask[d].map(|mk| (d, mk))).collect();
            for (d, mk) in spanned {
                let prod = coset_of[self.mul(reps[d], reps[c])];
                mask[prod] = Some(mk | bit);
            }
        }
        let mut out = Vec::new();
        for f in 1u64..(1u64 << rank) {
            let elements: Vec<usize> = (0..n)
                .filter(|&g| (mask[coset_of[g]].unwrap() & f).count_ones() % 2 == 0)
                .collect();
            out.push(Subgroup { elements, parent_order: n });
        }
        out.sort();
        out
    }

    /// Right cosets `H g`; the first cell is `H`.
    pub fn right_cosets(&self, h: &Subgroup) -> Result<Vec<Vec<usize>>> {
        self.check_parent(h)?;
        let mut seen = vec![false; self.order];
        let mut cells = vec![h.elements.clone()];
        for &x in &h.elements {
            seen[x] = true;
        }
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut cell: Vec<usize> = h.elements.iter().map(|&x| self.mul(x, g)).collect();
            cell.sort_unstable();
            for &x in &cell {
                seen[x] = true;
            }
            cells.push(cell);
        }
        Ok(cells)
    }

    /// All `g != e` with `g^2 = e`, optionally restricted to the complement of `outside`.
    pub fn involutions(&self, outside: Option<&Subgroup>) -> Vec<usize> {
        (0..self.order)
            .filter(|&g| g != self.identity && self.mul(g, g) == self.identity)
            .filter(|&g| outside.is_none_or(|h| !h.contains(g)))
            .collect()
    }

    /// For `H` of index 2, the smallest involution `a` outside `H`, which
    /// exhibits `G = H ⋊ <a>`.
    pub fn semidirect_decomposition(&self, h: &Subgroup) -> Result<Option<SemidirectWitness>> {
        self.check_parent(h)?;
        if h.order() * 2 != self.order {
            return Err(Error::Precondition(format!(
                "subgroup of order {} does not have index 2 in a group of order {}",
                h.order(),
                self.order
            )));
        }
        let Some(&a) = self.involutions(Some(h)).first() else {
            return Ok(None);
        };
        // G = H ∪ Ha and H ∩ <a> = {e}.
        let mut covered = vec![false; self.order];
        for &x in &h.elements {
            covered[x] = true;
            covered[self.mul(x, a)] = true;
        }
        if covered.iter().any(|c| !c) {
            return Err(Error::Inconsistency("H ∪ Ha does not cover G".into()));
        }
        Ok(Some(SemidirectWitness { involution: a, label: self.labels[a].clone() }))
    }

    /// The subgroup as a standalone table, with the embedding `local -> parent`.
    pub fn subgroup_table(&self, h: &Subgroup) -> Result<(GroupTable, Vec<usize>)> {
        self.check_parent(h)?;
        let embed = h.elements.clone();
        let mut local = vec![usize::MAX; self.order];
        for (i, &x) in embed.iter().enumerate() {
            local[x] = i;
        }
        // Put the identity first.
        let id_local = local[self.identity];
        let mut order: Vec<usize> = vec![id_local];
        order.extend((0..embed.len()).filter(|&i| i != id_local));
        let embed: Vec<usize> = order.iter().map(|&i| embed[i]).collect();
        for (i, &x) in embed.iter().enumerate() {
            local[x] = i;
        }
        let gens: Vec<Generator> = Vec::new();
        let table = GroupTable::from_fn(embed.len(), gens, |a, b| local[self.mul(embed[a], embed[b])])?;
        let labels = embed.iter().map(|&x| self.labels[x].clone()).collect();
        let table = table.with_labels(labels)?;
        Ok((table, embed))
    }

    /// Direct product with row-major element order.
    pub fn direct_product(&self, other: &GroupTable) -> Result<GroupTable> {
        let nb = other.order;
        let mut used: BTreeSet<String> = BTreeSet::new();
        let mut gens = Vec::new();
        for g in &self.generators {
            used.insert(g.name.clone());
            gens.push(Generator { name: g.name.clone(), element: g.element * nb + other.identity });
        }
        for g in &other.generators {
            let name = if used.contains(&g.name) { fresh_name(&used) } else { g.name.clone() };
            used.insert(name.clone());
            gens.push(Generator { name, element: self.identity * nb + g.element });
        }
        if self.identity != 0 || other.identity != 0 {
            return Err(Error::InvalidGroup("direct product factors must have identity 0".into()));
        }
        GroupTable::from_fn(self.order * nb, gens, |x, y| {
            let (a1, b1) = (x / nb, x % nb);
            let (a2, b2) = (y / nb, y % nb);
            self.mul(a1, a2) * nb + other.mul(b1, b2)
        })
    }

    /// Checks that `perm` is an automorphism whose square is the identity map.
    pub fn check_involutory_automorphism(&self, perm: &[usize]) -> Result<()> {
        let n = self.order;
        if perm.len() != n {
            return Err(Error::InvalidParameter("automorphism has the wrong length".into()));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidParameter("automorphism is not a permutation".into()));
            }
            seen[p] = true;
        }
        for x in 0..n {
            if perm[perm[x]] != x {
                return Err(Error::InvalidParameter(format!("automorphism has order > 2 at {x}")));
            }
            for y in 0..n {
                if perm[self.mul(x, y)] != self.mul(perm[x], perm[y]) {
                    return Err(Error::InvalidParameter(format!(
                        "map is not a homomorphism at ({x},{y})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `H ⋊ <c>` with `c^2 = e` and `h c = c φ(h)`. Element `c^x h` has index
    /// `x·|H| + h`, so `H` comes first and then the coset `cH`.
    pub fn semidirect_z2(&self, automorphism: &Automorphism) -> Result<GroupTable> {
        if self.identity != 0 {
            return Err(Error::InvalidGroup("base group must have identity 0".into()));
        }
        let n = self.order;
        let phi: Vec<usize> = match automorphism {
            Automorphism::Inversion => {
                if !self.is_abelian() {
                    return Err(Error::InvalidParameter(
                        "inversion is an automorphism only of abelian groups".into(),
                    ));
                }
                (0..n).map(|h| self.inv(h)).collect()
            }
            Automorphism::Permutation(p) => {
                self.check_involutory_automorphism(p)?;
                p.clone()
            }
        };
        let mut used: BTreeSet<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        let mut gens = self.generators.clone();
        let cname = if used.contains("c") { fresh_name(&used) } else { "c".into() };
        used.insert(cname.clone());
        gens.push(Generator { name: cname.clone(), element: n });
        let table = GroupTable::from_fn(2 * n, gens, |a, b| {
            let (x, h1) = (a / n, a % n);
            let (y, h2) = (b / n, b % n);
            let h1 = if y == 1 { phi[h1] } else { h1 };
            ((x + y) % 2) * n + self.mul(h1, h2)
        })?;
        // Keep the base labels, so H reads the same inside the product.
        let labels = self
            .labels
            .iter()
            .cloned()
            .chain(self.labels.iter().enumerate().map(|(h, l)| {
                if h == self.identity {
                    cname.clone()
                } else {
                    format!("{cname}*{l}")
                }
            }))
            .collect();
        table.with_labels(labels)
    }
}

/// The first `k` generator letters, skipping `e`.
pub(crate) fn words_alphabet(k: usize) -> Vec<String> {
    ('a'..='z')
        .filter(|&c| c != 'e')
        .map(|c| c.to_string())
        .chain((0..).map(|i| format!("g{i}")))
        .take(k)
        .collect()
}

fn fresh_name(used: &BTreeSet<String>) -> String {
    ('a'..='z')
        .filter(|&c| c != 'e')
        .map(|c| c.to_string())
        .find(|c| !used.contains(c))
        .unwrap_or_else(|| format!("g{}", used.len()))
}

/// A subgroup, stored as the sorted list of its elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    elements: Vec<usize>,
    #[serde(skip)]
    parent_order: usize,
}

impl Subgroup {
    /// Validates that `elements` is closed under products and inverses.
    pub fn new(g: &GroupTable, elements: &[usize]) -> Result<Self> {
        let mut el: Vec<usize> = elements.to_vec();
        el.sort_unstable();
        el.dedup();
        if let Some(&x) = el.iter().find(|&&x| x >= g.order()) {
            return Err(Error::NotSubgroup(format!("element {x} out of range")));
        }
        let s = Subgroup { elements: el, parent_order: g.order() };
        if !s.contains(g.identity()) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &a in &s.elements {
            if !s.contains(g.inv(a)) {
                return Err(Error::NotSubgroup(format!("inverse of {} missing", g.label(a))));
            }
            for &b in &s.elements {
                if !s.contains(g.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!(
                        "{} * {} escapes",
                        g.label(a),
                        g.label(b)
                    )));
                }
            }
        }
        Ok(s)
    }

    pub fn trivial(g: &GroupTable) -> Self {
        Subgroup { elements: vec![g.identity()], parent_order: g.order() }
    }

    pub fn whole(g: &GroupTable) -> Self {
        Subgroup { elements: g.elements().collect(), parent_order: g.order() }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Elements of the parent group outside this subgroup.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.parent_order).filter(|&x| !self.contains(x)).collect()
    }

    pub fn is_cyclic(&self, g: &GroupTable) -> bool {
        self.elements.iter().any(|&x| g.element_order(x) == self.order())
    }
}

/// Involution outside an index-2 subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemidirectWitness {
    pub involution: usize,
    pub label: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> GroupTable {
        make_group(&GroupSpec::Cyclic(n)).unwrap()
    }

    #[test]
    fn cyclic_one_is_trivial() {
        let g = z(1);
        assert_eq!(g.order(), 1);
        assert_eq!(g.element_order(0), 1);
        assert_eq!(g.label(0), "e");
    }

    #[test]
    fn empty_generation_is_trivial() {
        let g = make_group(&GroupSpec::Dihedral(5)).unwrap();
        assert_eq!(g.generated_subgroup(&[]).elements(), &[0]);
    }

    #[test]
    fn cosets_of_even_residues() {
        let g = z(6);
        let h = g.generated_subgroup(&[2]);
        assert_eq!(g.right_cosets(&h).unwrap(), vec![vec![0, 2, 4], vec![1, 3, 5]]);
        let whole = Subgroup::whole(&g);
        assert_eq!(g.right_cosets(&whole).unwrap().len(), 1);
    }

    #[test]
    fn odd_order_has_no_involutions() {
        assert!(z(3).involutions(None).is_empty());
    }

    #[test]
    fn z2_has_one_index2_subgroup() {
        let subs = z(2).index2_subgroups();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].elements(), &[0]);
    }

    #[test]
    fn subgroup_validation() {
        let g = z(6);
        assert!(Subgroup::new(&g, &[0, 3]).is_ok());
        assert!(Subgroup::new(&g, &[0, 1]).is_err());
        assert!(Subgroup::new(&g, &[1, 5]).is_err());
    }

    #[test]
    fn json_round_trip_and_word_lookup() {
        let g = make_group(&GroupSpec::Dicyclic(3)).unwrap();
        let back = GroupTable::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let x = g.parse_element("a^2*b").unwrap();
        let a = g.parse_element("a").unwrap();
        let b = g.parse_element("b").unwrap();
        assert_eq!(x, g.mul(g.mul(a, a), b));
        assert_eq!(g.parse_element("b^2").unwrap(), g.parse_element("a^3").unwrap());
        assert!(g.parse_element("z").is_err());
        assert!(g.parse_element("99").is_err());
    }

    #[test]
    fn rejects_broken_tables() {
        assert!(GroupTable::from_table(vec![vec![0, 1], vec![1, 1]], None, vec![]).is_err());
        assert!(GroupTable::from_table(vec![vec![0, 2], vec![1, 0]], None, vec![]).is_err());
        // Latin square with identity that is not associative.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(GroupTable::from_table(t, None, vec![]).is_err());
    }

    #[test]
    fn semidirect_requires_valid_automorphism() {
        let h = z(5);
        // x -> 2x has order 4, not 2.
        let doubling: Vec<usize> = (0..5).map(|x| (2 * x) % 5).collect();
        assert!(h.semidirect_z2(&Automorphism::Permutation(doubling)).is_err());
        let q = make_group(&GroupSpec::Dicyclic(3)).unwrap();
        assert!(q.semidirect_z2(&Automorphism::Inversion).is_err());
    }

    #[test]
    fn semidirect_decomposition_needs_index_two() {
        let g = make_group(&GroupSpec::Dihedral(6)).unwrap();
        let h = g.generated_subgroup(&[2]);
        assert!(g.semidirect_decomposition(&h).is_err());
    }
}
