use std::fmt;
use std::str::FromStr;

use super::{Generator, GroupTable};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_LIMIT: usize = 5000;

/// The automorphism used by [`GroupSpec::SemidirectZ2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automorphism {
    /// `h -> h^-1`; requires an abelian base.
    Inversion,
    /// Explicit image of each element index.
    Permutation(Vec<usize>),
}

/// A recipe for one of the supported group families.
///
/// Element orderings:
/// - `Cyclic(n)`: residues `0..n`.
/// - `Dihedral(n)`: `r^0..r^{n-1}, s r^0..s r^{n-1}` (order `2n`).
/// - `Dicyclic(m)`: `a^0..a^{2m-1}, b a^0..b a^{2m-1}` (order `4m`).
/// - `Semidihedral(l)`: same shape as dicyclic with `m = 2^{l-1}`, `b^2 = e`,
///   `b a b = a^{m-1}`.
/// - `ElementaryAbelian(p, e)`: base-`p` vectors, first coordinate most significant.
/// - `DirectProduct(A, B)`: row-major, `(x, y) -> x·|B| + y`.
/// - `GeneralizedDihedral(H)` and `SemidirectZ2(H, _)`: `H` then `cH`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    Semidihedral(u32),
    ElementaryAbelian(usize, u32),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    GeneralizedDihedral(Box<GroupSpec>),
    SemidirectZ2(Box<GroupSpec>, Automorphism),
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::DirectProduct(Box::new(a), Box::new(b))
    }

    pub fn dih(h: GroupSpec) -> Self {
        GroupSpec::GeneralizedDihedral(Box::new(h))
    }

    /// Order implied by the parameters, or `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Dihedral(n) => n.checked_mul(2),
            GroupSpec::Dicyclic(m) => m.checked_mul(4),
            GroupSpec::Semidihedral(l) => 1usize.checked_shl(l + 1),
            GroupSpec::ElementaryAbelian(p, e) => p.checked_pow(*e),
            GroupSpec::DirectProduct(a, b) => a.order()?.checked_mul(b.order()?),
            GroupSpec::GeneralizedDihedral(h) | GroupSpec::SemidirectZ2(h, _) => {
                h.order()?.checked_mul(2)
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Dicyclic(m) => write!(f, "dicyclic({m})"),
            GroupSpec::Semidihedral(l) => write!(f, "semidihedral({l})"),
            GroupSpec::ElementaryAbelian(p, e) => write!(f, "elementary_abelian({p},{e})"),
            GroupSpec::DirectProduct(a, b) => write!(f, "product({a},{b})"),
            GroupSpec::GeneralizedDihedral(h) => write!(f, "dih({h})"),
            GroupSpec::SemidirectZ2(h, Automorphism::Inversion) => {
                write!(f, "semidirect_z2({h},inversion)")
            }
            GroupSpec::SemidirectZ2(h, Automorphism::Permutation(p)) => {
                let body: Vec<String> = p.iter().map(usize::to_string).collect();
                write!(f, "semidirect_z2({h},[{}])", body.join(","))
            }
        }
    }
}

pub fn make_group(spec: &GroupSpec) -> Result<GroupTable> {
    make_group_with_limit(spec, DEFAULT_ORDER_LIMIT)
}

/// Builds a group, refusing anything larger than `limit` elements.
pub fn make_group_with_limit(spec: &GroupSpec, limit: usize) -> Result<GroupTable> {
    let order = spec
        .order()
        .ok_or_else(|| Error::TooLarge(format!("order of {spec} overflows")))?;
    if order > limit {
        return Err(Error::TooLarge(format!("{spec} has order {order} > {limit}")));
    }
    build(spec)
}

fn gens(names: &[(&str, usize)]) -> Vec<Generator> {
    names
        .iter()
        .map(|&(name, element)| Generator { name: name.into(), element })
        .collect()
}

fn build(spec: &GroupSpec) -> Result<GroupTable> {
    match *spec {
        GroupSpec::Cyclic(n) => {
            positive(n, "cyclic order")?;
            let g = if n > 1 { gens(&[("a", 1)]) } else { Vec::new() };
            GroupTable::from_fn(n, g, |x, y| (x + y) % n)
        }
        GroupSpec::Dihedral(n) => {
            positive(n, "dihedral parameter")?;
            let g = gens(&[("r", 1 % n), ("s", n)]);
            GroupTable::from_fn(2 * n, g, |x, y| {
                let (sx, i) = (x / n, x % n);
                let (sy, j) = (y / n, y % n);
                let i = if sy == 1 { (n - i) % n } else { i };
                ((sx + sy) % 2) * n + (i + j) % n
            })
        }
        GroupSpec::Dicyclic(m) => {
            positive(m, "dicyclic parameter")?;
            let t = 2 * m;
            let g = gens(&[("a", 1), ("b", t)]);
            GroupTable::from_fn(2 * t, g, |x, y| {
                let (bx, i) = (x / t, x % t);
                let (by, j) = (y / t, y % t);
                match (bx, by) {
                    (_, 0) => bx * t + (i + j) % t,
                    (0, _) => t + (j + t - i) % t,
                    _ => (m + j + t - i) % t,
                }
            })
        }
        GroupSpec::Semidihedral(l) => {
            if l < 2 {
                return Err(Error::InvalidParameter("semidihedral needs l >= 2".into()));
            }
            let m = 1usize << (l - 1);
            let t = 2 * m;
            let g = gens(&[("a", 1), ("b", t)]);
            GroupTable::from_fn(2 * t, g, |x, y| {
                let (bx, i) = (x / t, x % t);
                let (by, j) = (y / t, y % t);
                let i = if by == 1 { (i * (m - 1)) % t } else { i };
                ((bx + by) % 2) * t + (i + j) % t
            })
        }
        GroupSpec::ElementaryAbelian(p, e) => {
            if p < 2 || !is_prime(p) {
                return Err(Error::InvalidParameter(format!("{p} is not prime")));
            }
            if e == 0 {
                return Err(Error::InvalidParameter("exponent must be positive".into()));
            }
            let n = p.pow(e);
            let letters = super::words_alphabet(e as usize);
            let g: Vec<Generator> = (0..e as usize)
                .map(|i| Generator {
                    name: letters[i].clone(),
                    element: p.pow(e - 1 - i as u32),
                })
                .collect();
            GroupTable::from_fn(n, g, |x, y| {
                let (mut x, mut y, mut out, mut place) = (x, y, 0, 1);
                for _ in 0..e {
                    out += ((x % p + y % p) % p) * place;
                    x /= p;
                    y /= p;
                    place *= p;
                }
                out
            })
        }
        GroupSpec::DirectProduct(ref a, ref b) => {
            let ga = build(a)?;
            let gb = build(b)?;
            ga.direct_product(&gb)
        }
        GroupSpec::GeneralizedDihedral(ref h) => {
            let gh = build(h)?;
            if !gh.is_abelian() {
                return Err(Error::InvalidParameter(format!(
                    "generalized dihedral group needs an abelian base, {h} is not"
                )));
            }
            gh.semidirect_z2(&Automorphism::Inversion)
        }
        GroupSpec::SemidirectZ2(ref h, ref aut) => build(h)?.semidirect_z2(aut),
    }
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameter(format!("{what} must be positive")))
    } else {
        Ok(())
    }
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts `Z6`, `cyclic(6)`, `dihedral(7)`, `D14` (order 14), `Q12`
    /// (order 12), `dicyclic(3)`, `semidihedral(3)`, `SD16`,
    /// `elementary_abelian(3,4)`, `product(A,B)`, `AxB`, `dih(A)` and
    /// `semidirect_z2(A, inversion)` or `semidirect_z2(A, [p0,p1,...])`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        parse_spec(&compact)
    }
}

fn parse_spec(s: &str) -> Result<GroupSpec> {
    if s.is_empty() {
        return Err(Error::Parse("empty group spec".into()));
    }
    let parts = split_top(s, 'x');
    if parts.len() > 1 {
        let mut it = parts.iter().map(|p| parse_spec(p));
        let first = it.next().unwrap()?;
        return it.try_fold(first, |acc, b| Ok(GroupSpec::product(acc, b?)));
    }
    if let Some(open) = s.find('(') {
        if !s.ends_with(')') {
            return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
        }
        let head = s[..open].to_ascii_lowercase();
        let args = split_top(&s[open + 1..s.len() - 1], ',');
        let num = |i: usize| -> Result<usize> {
            args.get(i)
                .ok_or_else(|| Error::Parse(format!("`{head}` is missing argument {}", i + 1)))?
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad number in `{s}`")))
        };
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Parse(format!("`{head}` takes {n} argument(s)")))
            }
        };
        return match head.as_str() {
            "z" | "cyclic" => arity(1).and(Ok(GroupSpec::Cyclic(num(0)?))),
            "dihedral" => arity(1).and(Ok(GroupSpec::Dihedral(num(0)?))),
            "dicyclic" => arity(1).and(Ok(GroupSpec::Dicyclic(num(0)?))),
            "semidihedral" => arity(1).and(Ok(GroupSpec::Semidihedral(num(0)? as u32))),
            "elementary_abelian" | "elemab" => {
                arity(2)?;
                Ok(GroupSpec::ElementaryAbelian(num(0)?, num(1)? as u32))
            }
            "product" => {
                arity(2)?;
                Ok(GroupSpec::product(parse_spec(&args[0])?, parse_spec(&args[1])?))
            }
            "dih" => {
                arity(1)?;
                Ok(GroupSpec::dih(parse_spec(&args[0])?))
            }
            "semidirect_z2" => {
                arity(2)?;
                let base = parse_spec(&args[0])?;
                let aut = if args[1].eq_ignore_ascii_case("inversion") {
                    Automorphism::Inversion
                } else {
                    let body = args[1]
                        .strip_prefix('[')
                        .and_then(|b| b.strip_suffix(']'))
                        .ok_or_else(|| Error::Parse("automorphism must be `inversion` or `[...]`".into()))?;
                    let perm = body
                        .split([',', ';'])
                        .filter(|t| !t.is_empty())
                        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad index `{t}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    Automorphism::Permutation(perm)
                };
                Ok(GroupSpec::SemidirectZ2(Box::new(base), aut))
            }
            _ => Err(Error::Parse(format!("unknown group family `{head}`"))),
        };
    }
    let shorthand = |prefix: &str| -> Option<usize> {
        s.strip_prefix(prefix).and_then(|rest| rest.parse().ok())
    };
    if let Some(n) = shorthand("SD") {
        if n >= 8 && n.is_power_of_two() {
            return Ok(GroupSpec::Semidihedral(n.trailing_zeros() - 1));
        }
        return Err(Error::Parse(format!("SD{n}: order must be a power of two >= 8")));
    }
    if let Some(n) = shorthand("Z") {
        return Ok(GroupSpec::Cyclic(n));
    }
    if let Some(n) = shorthand("D") {
        if n >= 2 && n % 2 == 0 {
            return Ok(GroupSpec::Dihedral(n / 2));
        }
        return Err(Error::Parse(format!("D{n}: order must be even")));
    }
    if let Some(n) = shorthand("Q") {
        if n >= 4 && n % 4 == 0 {
            return Ok(GroupSpec::Dicyclic(n / 4));
        }
        return Err(Error::Parse(format!("Q{n}: order must be divisible by 4")));
    }
    Err(Error::Parse(format!("unrecognized group spec `{s}`")))
}

/// Splits on `sep` outside brackets.
fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out
}
