//! Arithmetic in GF(p^e).
//!
//! An element is encoded as the integer `Σ c_i p^i`, where `c_i` is the
//! coefficient of `x^i` in its polynomial representative.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{make_group, GroupSpec, GroupTable};

pub const FIELD_SIZE_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct FieldTable {
    p: usize,
    degree: u32,
    size: usize,
    modulus: Vec<usize>,
    primitive: usize,
    exp: Vec<usize>,
    log: Vec<usize>,
}

/// Returns `(p, e)` with `q = p^e`, if `q` is a prime power.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// Builds GF(p^e) with the lexicographically smallest monic irreducible
/// modulus, comparing the constant coefficient first.
pub fn gf_make(p: usize, e: u32) -> Result<FieldTable> {
    if !crate::group::is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if e == 0 {
        return Err(Error::InvalidParameter("field degree must be positive".into()));
    }
    let size = p
        .checked_pow(e)
        .filter(|&q| q <= FIELD_SIZE_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("{p}^{e} exceeds {FIELD_SIZE_LIMIT}")))?;
    let modulus = smallest_irreducible(p, e as usize);
    let mut f = FieldTable {
        p,
        degree: e,
        size,
        modulus,
        primitive: 0,
        exp: Vec::new(),
        log: Vec::new(),
    };
    f.primitive = f.find_primitive();
    let mut exp = Vec::with_capacity(size - 1);
    let mut log = vec![usize::MAX; size];
    let mut x = 1;
    for i in 0..size - 1 {
        exp.push(x);
        if log[x] != usize::MAX {
            return Err(Error::Inconsistency("primitive element has small order".into()));
        }
        log[x] = i;
        x = f.poly_mul(x, f.primitive);
    }
    f.exp = exp;
    f.log = log;
    Ok(f)
}

/// Enumerates monic degree-`e` polynomials with the constant coefficient most
/// significant and returns the first irreducible one, as coefficients low to high.
fn smallest_irreducible(p: usize, e: usize) -> Vec<usize> {
    let count = p.pow(e as u32);
    for rank in 0..count {
        // rank's base-p digits, most significant first, are c_0, c_1, ..., c_{e-1}.
        let mut coeffs = vec![0usize; e + 1];
        let mut r = rank;
        for i in (0..e).rev() {
            coeffs[i] = r % p;
            r /= p;
        }
        coeffs[e] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let e = f.len() - 1;
    if e == 1 {
        return true;
    }
    for d in 1..=e / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = vec![0usize; d + 1];
            let mut r = low;
            for c in g.iter_mut().take(d) {
                *c = r % p;
                r /= p;
            }
            g[d] = 1;
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `f` modulo monic `g`.
fn poly_rem(f: &[usize], g: &[usize], p: usize) -> Vec<usize> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gc) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * gc) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldTable {
    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    /// The smallest-encoded generator of the multiplicative group.
    pub fn primitive_element(&self) -> usize {
        self.primitive
    }

    fn digits(&self, x: usize) -> Vec<usize> {
        let mut d = Vec::with_capacity(self.degree as usize);
        let mut r = x;
        for _ in 0..self.degree {
            d.push(r % self.p);
            r /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[usize]) -> usize {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn poly_mul(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.digits(x), self.digits(y));
        let mut prod = vec![0usize; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % self.p;
            }
        }
        let r = poly_rem(&prod, &self.modulus, self.p);
        self.undigits(&r)
    }

    fn poly_pow(&self, x: usize, mut k: usize) -> usize {
        let (mut base, mut acc) = (x, 1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.poly_mul(acc, base);
            }
            base = self.poly_mul(base, base);
            k >>= 1;
        }
        acc
    }

    fn find_primitive(&self) -> usize {
        let n = self.size - 1;
        let factors = prime_factors(n);
        (1..self.size)
            .find(|&g| factors.iter().all(|&r| self.poly_pow(g, n / r) != 1))
            .expect("multiplicative group is cyclic")
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.digits(x), self.digits(y));
        let s: Vec<usize> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        self.undigits(&s)
    }

    pub fn neg(&self, x: usize) -> usize {
        let d: Vec<usize> = self.digits(x).iter().map(|&c| (self.p - c) % self.p).collect();
        self.undigits(&d)
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        if x == 0 || y == 0 {
            return 0;
        }
        self.exp[(self.log[x] + self.log[y]) % (self.size - 1)]
    }

    pub fn inv(&self, x: usize) -> Result<usize> {
        if x == 0 {
            return Err(Error::InvalidParameter("zero has no inverse".into()));
        }
        Ok(self.exp[(self.size - 1 - self.log[x]) % (self.size - 1)])
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        if x == 0 {
            return usize::from(k == 0);
        }
        let n = (self.size - 1) as u64;
        self.exp[((self.log[x] as u64 % n) * (k % n) % n) as usize]
    }

    /// Discrete logarithm to the base [`Self::primitive_element`].
    pub fn log(&self, x: usize) -> Option<usize> {
        (x != 0).then(|| self.log[x])
    }

    /// `γ^i` for the primitive element `γ`.
    pub fn exp(&self, i: usize) -> usize {
        self.exp[i % (self.size - 1)]
    }

    pub fn multiplicative_order(&self, x: usize) -> Option<usize> {
        let n = self.size - 1;
        self.log(x).map(|l| n / l.gcd(&n))
    }

    /// Smallest-encoded element of multiplicative order exactly `d`.
    pub fn element_of_order(&self, d: usize) -> Result<usize> {
        let n = self.size - 1;
        if d == 0 || !n.is_multiple_of(d) {
            return Err(Error::InvalidParameter(format!("{d} does not divide {n}")));
        }
        Ok((1..self.size)
            .find(|&x| self.multiplicative_order(x) == Some(d))
            .expect("cyclic group has elements of every dividing order"))
    }

    /// Trace from GF(p^e) down to GF(p^s): `Σ x^{Q^i}` with `Q = p^s`.
    pub fn relative_trace(&self, s: u32, x: usize) -> Result<usize> {
        if s == 0 || !self.degree.is_multiple_of(s) {
            return Err(Error::InvalidParameter(format!(
                "{s} does not divide the field degree {}",
                self.degree
            )));
        }
        let q = self.p.pow(s) as u64;
        let mut acc = 0;
        let mut power = 1u64;
        for _ in 0..self.degree / s {
            acc = self.add(acc, self.pow(x, power));
            power = power.wrapping_mul(q) % (self.size as u64 - 1).max(1);
            if power == 0 {
                power = (self.size - 1) as u64;
            }
        }
        Ok(acc)
    }

    /// Base-`p` digit string, leading coefficient first (e.g. `"1021"`).
    pub fn format(&self, x: usize) -> String {
        self.digits(x)
            .iter()
            .rev()
            .map(|&c| std::char::from_digit(c as u32, 36).unwrap_or('?'))
            .collect()
    }

    pub fn parse(&self, s: &str) -> Result<usize> {
        let t = s.trim();
        if t.chars().count() != self.degree as usize {
            return Err(Error::Parse(format!("`{t}` should have {} digits", self.degree)));
        }
        let mut x = 0;
        for c in t.chars() {
            let d = c
                .to_digit(36)
                .map(|d| d as usize)
                .filter(|&d| d < self.p)
                .ok_or_else(|| Error::Parse(format!("bad digit `{c}` in `{t}`")))?;
            x = x * self.p + d;
        }
        Ok(x)
    }

    /// The additive group; element indices coincide with field encodings.
    pub fn additive_group(&self) -> Result<GroupTable> {
        let g = make_group(&GroupSpec::ElementaryAbelian(self.p, self.degree))?;
        let labels = (0..self.size).map(|x| self.format(x)).collect();
        g.with_labels(labels)
    }

    /// `GF(q)^copies`, row-major, with labels such as `"1:2"`.
    pub fn product_group(&self, copies: u32) -> Result<GroupTable> {
        if copies == 0 {
            return Err(Error::InvalidParameter("need at least one copy".into()));
        }
        let base = self.additive_group()?;
        let mut g = base.clone();
        for _ in 1..copies {
            g = g.direct_product(&base)?;
        }
        let labels = (0..g.order())
            .map(|mut x| {
                let mut parts = Vec::new();
                for _ in 0..copies {
                    parts.push(self.format(x % self.size));
                    x /= self.size;
                }
                parts.reverse();
                parts.join(":")
            })
            .collect();
        g.with_labels(labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = gf_make(3, 1).unwrap();
        assert_eq!(f.mul(2, 2), 1);
        assert_eq!(f.add(2, 2), 1);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn gf7_primitive_root() {
        let f = gf_make(7, 1).unwrap();
        assert_eq!(f.element_of_order(6).unwrap(), 3);
        assert_eq!(f.element_of_order(1).unwrap(), 1);
        assert!(f.element_of_order(4).is_err());
    }

    #[test]
    fn modulus_is_smallest_irreducible() {
        // Over GF(2): x^3 + x + 1 has c0 = 1, c1 = 1, c2 = 0; x^3 + x^2 + 1 has
        // c1 = 0 so it comes first.
        assert_eq!(gf_make(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        // Over GF(3) degree 2: x^2 + 1 (c0 = 1, c1 = 0).
        assert_eq!(gf_make(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn trace_value_counts() {
        let f = gf_make(2, 3).unwrap();
        let zeros = (0..8).filter(|&x| f.relative_trace(1, x).unwrap() == 0).count();
        assert_eq!(zeros, 4);
        let f = gf_make(3, 3).unwrap();
        let mut counts = [0; 3];
        for x in 0..27 {
            counts[f.relative_trace(1, x).unwrap()] += 1;
        }
        assert_eq!(counts, [9, 9, 9]);
        assert!(f.relative_trace(2, 5).is_err());
    }

    #[test]
    fn digit_strings() {
        let f = gf_make(3, 4).unwrap();
        let x = f.parse("1021").unwrap();
        assert_eq!(x, 27 + 2 * 3 + 1);
        assert_eq!(f.format(x), "1021");
        assert!(f.parse("3000").is_err());
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(gf_make(4, 1).is_err());
        assert!(gf_make(2, 20).is_err());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn product_group_labels() {
        let f = gf_make(3, 1).unwrap();
        let g = f.product_group(2).unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.label(5), "1:2");
        assert!((1..9).all(|x| g.element_order(x) == 3));
    }
}
