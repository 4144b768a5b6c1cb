use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Intersection array `{b_0,...,b_{d-1}; c_1,...,c_d}` of a distance-regular graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntersectionArray {
    b: Vec<u64>,
    c: Vec<u64>,
}

impl IntersectionArray {
    /// Builds an array after checking the feasibility conditions: equal
    /// lengths, `c_1 = 1`, monotone `b` and `c`, and integral `k_i`.
    pub fn new(b: Vec<u64>, c: Vec<u64>) -> Result<Self> {
        let a = IntersectionArray { b, c };
        a.validate()?;
        Ok(a)
    }

    /// Wraps measured values without the feasibility checks.
    pub(crate) fn measured(b: Vec<u64>, c: Vec<u64>) -> Self {
        IntersectionArray { b, c }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.b.len() != self.c.len() {
            return bad(format!("{} b-values but {} c-values", self.b.len(), self.c.len()));
        }
        if self.b.is_empty() {
            return Ok(());
        }
        if self.c[0] != 1 {
            return bad("c_1 must be 1".into());
        }
        if self.b.windows(2).any(|w| w[0] < w[1]) {
            return bad("b_i must be non-increasing".into());
        }
        if self.c.windows(2).any(|w| w[0] > w[1]) {
            return bad("c_i must be non-decreasing".into());
        }
        if self.b.contains(&0) {
            return bad("b_i must be positive below the diameter".into());
        }
        if self.c.last().copied() > Some(self.valency()) {
            return bad("c_d exceeds the valency".into());
        }
        self.k_sequence().map(|_| ())
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn c(&self) -> &[u64] {
        &self.c
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    pub fn valency(&self) -> u64 {
        self.b.first().copied().unwrap_or(0)
    }

    /// `c_2`, if the diameter is at least 2.
    pub fn mu(&self) -> Option<u64> {
        self.c.get(1).copied()
    }

    /// `a_i = k - b_i - c_i` for `0 <= i <= d` (with `b_d = c_0 = 0`).
    pub fn a(&self, i: usize) -> i64 {
        let k = self.valency() as i64;
        let b = self.b.get(i).copied().unwrap_or(0) as i64;
        let c = if i == 0 { 0 } else { self.c.get(i - 1).copied().unwrap_or(0) as i64 };
        k - b - c
    }

    /// Shell sizes `k_0 = 1, k_{i+1} = k_i b_i / c_{i+1}`.
    pub fn k_sequence(&self) -> Result<Vec<u64>> {
        let mut ks = vec![1u64];
        for i in 0..self.b.len() {
            let num = ks[i] * self.b[i];
            if self.c[i] == 0 || !num.is_multiple_of(self.c[i]) {
                return Err(Error::InvalidParameter(format!("k_{} is not an integer", i + 1)));
            }
            ks.push(num / self.c[i]);
        }
        Ok(ks)
    }

    pub fn vertex_count(&self) -> Result<u64> {
        Ok(self.k_sequence()?.iter().sum())
    }

    pub fn is_bipartite(&self) -> bool {
        (0..=self.diameter()).all(|i| self.a(i) == 0)
    }

    /// The array `{k, k-1, k-μ; 1, μ, k}` of the incidence graph of a
    /// symmetric `(n, k, μ)` design.
    pub fn symmetric_design(k: u64, mu: u64) -> Result<Self> {
        if k < 2 || mu == 0 || mu > k {
            return Err(Error::InvalidParameter(format!("no design array for k={k}, μ={mu}")));
        }
        IntersectionArray::new(vec![k, k - 1, k - mu], vec![1, mu, k])
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

impl FromStr for IntersectionArray {
    type Err = Error;

    /// Parses `{6,5,4;1,2,6}`; the braces are optional.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.trim_start_matches('{').trim_end_matches('}');
        let (b, c) = t
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("missing `;` in array `{s}`")))?;
        let nums = |part: &str| -> Result<Vec<u64>> {
            part.split(',')
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<u64>().map_err(|_| Error::Parse(format!("bad entry `{x}`"))))
                .collect()
        };
        IntersectionArray::new(nums(b)?, nums(c)?)
    }
}
