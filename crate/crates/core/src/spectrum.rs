//! Exact spectral certificates: polynomial annihilation of adjacency matrices,
//! fraction-free determinants, and circulant eigenvalues.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::array::IntersectionArray;
use crate::graph::Graph;

/// Dense square matrix over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| BigInt::from(x))).collect();
        IntMatrix { n, data }
    }

    pub fn adjacency(g: &Graph) -> Self {
        let n = g.order();
        let mut m = IntMatrix::zeros(n);
        for (u, v) in g.edges() {
            m.data[u * n + v] = BigInt::one();
            m.data[v * n + u] = BigInt::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    /// `self - c I`.
    pub fn shift(&self, c: &BigInt) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.data[i * self.n + i] -= c;
        }
        m
    }

    /// `self · A(g)`, using the sparsity of the adjacency matrix.
    pub fn mul_adjacency(&self, g: &Graph) -> Self {
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            for j in 0..n {
                let mut acc = BigInt::zero();
                for &l in g.neighbors(j) {
                    acc += &row[l];
                }
                out.data[i * n + j] = acc;
            }
        }
        out
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| self.data[i * n..(i + 1) * n].to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }
}

/// A factor `A - cI` or `A^2 - cI` of an annihilating product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "c", rename_all = "snake_case")]
pub enum Factor {
    Linear(i64),
    Quadratic(i64),
}

impl std::fmt::Display for Factor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Factor::Linear(c) => write!(f, "(A-{c}I)"),
            Factor::Quadratic(c) => write!(f, "(A^2-{c}I)"),
        }
    }
}

/// Whether the product of `factors` evaluated at the adjacency matrix is zero.
pub fn annihilates(g: &Graph, factors: &[Factor]) -> bool {
    let mut m = IntMatrix::identity(g.order());
    for f in factors {
        m = match *f {
            Factor::Linear(c) => {
                let ma = m.mul_adjacency(g);
                sub_scaled(ma, &m, &BigInt::from(c))
            }
            Factor::Quadratic(c) => {
                let ma2 = m.mul_adjacency(g).mul_adjacency(g);
                sub_scaled(ma2, &m, &BigInt::from(c))
            }
        };
    }
    m.is_zero()
}

fn sub_scaled(mut a: IntMatrix, b: &IntMatrix, c: &BigInt) -> IntMatrix {
    for (x, y) in a.data.iter_mut().zip(&b.data) {
        *x -= y * c;
    }
    a
}

/// Integer polynomial, constant term first.
pub type IntPoly = Vec<BigInt>;

/// Characteristic polynomial of the tridiagonal intersection matrix, whose
/// roots are the distinct eigenvalues of a graph with that array.
pub fn array_polynomial(array: &IntersectionArray) -> IntPoly {
    let d = array.diameter();
    let a: Vec<BigInt> = (0..=d).map(|i| BigInt::from(array.a(i))).collect();
    // f_i = (x - a_{i-1}) f_{i-1} - b_{i-2} c_{i-1} f_{i-2}
    let mut prev: IntPoly = vec![BigInt::one()];
    let mut cur: IntPoly = vec![-a[0].clone(), BigInt::one()];
    for i in 2..=d + 1 {
        let mut next: IntPoly = vec![BigInt::zero(); cur.len() + 1];
        for (j, coef) in cur.iter().enumerate() {
            next[j + 1] += coef;
            next[j] -= coef * &a[i - 1];
        }
        let bc = BigInt::from(array.b()[i - 2]) * BigInt::from(array.c()[i - 2]);
        for (j, coef) in prev.iter().enumerate() {
            next[j] -= coef * &bc;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Evaluates `p(A)` by Horner's rule and tests for zero.
pub fn annihilated_by(g: &Graph, p: &IntPoly) -> bool {
    let n = g.order();
    let mut m = IntMatrix::zeros(n);
    for coef in p.iter().rev() {
        m = m.mul_adjacency(g);
        for i in 0..n {
            m.data[i * n + i] += coef;
        }
    }
    m.is_zero()
}

pub fn is_nonsingular(g: &Graph) -> bool {
    !IntMatrix::adjacency(g).determinant().is_zero()
}

/// `det(A - θ I)`.
pub fn shifted_determinant(g: &Graph, theta: i64) -> BigInt {
    IntMatrix::adjacency(g).shift(&BigInt::from(theta)).determinant()
}

/// Integer roots of `det(M - θI)`, searched over `|θ| <=` the largest absolute row sum.
pub fn integer_eigenvalues(m: &[Vec<i64>]) -> Vec<i64> {
    let bound = m.iter().map(|r| r.iter().map(|x| x.abs()).sum::<i64>()).max().unwrap_or(0);
    let base = IntMatrix::from_rows(m);
    (-bound..=bound)
        .filter(|&t| base.shift(&BigInt::from(t)).determinant().is_zero())
        .collect()
}

/// `λ_j = Σ_{c ∈ T} ω^{jc}` with `ω = e^{2πi/n}`, summed with Kahan compensation.
pub fn circulant_eigenvalues(n: usize, residues: &[usize]) -> Vec<Complex64> {
    (0..n)
        .map(|j| {
            let (mut re, mut im) = (Kahan::default(), Kahan::default());
            for &c in residues {
                let angle = TAU * (((j as u128 * c as u128) % n as u128) as f64) / n as f64;
                re.add(angle.cos());
                im.add(angle.sin());
            }
            Complex64::new(re.sum, im.sum)
        })
        .collect()
}

#[derive(Default)]
struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

pub const EIGENVALUE_TOLERANCE: f64 = 1e-9;

/// An exactly known real algebraic value: `v` or `sign·√r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExactValue {
    Int { value: i64 },
    Sqrt { negative: bool, radicand: u64 },
}

impl ExactValue {
    pub fn to_f64(self) -> f64 {
        match self {
            ExactValue::Int { value } => value as f64,
            ExactValue::Sqrt { negative, radicand } => {
                let r = (radicand as f64).sqrt();
                if negative {
                    -r
                } else {
                    r
                }
            }
        }
    }

    /// The square, which is always an integer.
    pub fn square(self) -> u64 {
        match self {
            ExactValue::Int { value } => value.unsigned_abs().pow(2),
            ExactValue::Sqrt { radicand, .. } => radicand,
        }
    }

    pub fn pm_sqrt(r: u64) -> [ExactValue; 2] {
        [
            ExactValue::Sqrt { negative: false, radicand: r },
            ExactValue::Sqrt { negative: true, radicand: r },
        ]
    }
}

impl std::fmt::Display for ExactValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExactValue::Int { value } => write!(f, "{value}"),
            ExactValue::Sqrt { negative, radicand } => {
                write!(f, "{}sqrt({radicand})", if *negative { "-" } else { "" })
            }
        }
    }
}

/// Matches each value against `targets` within [`EIGENVALUE_TOLERANCE`];
/// `None` marks a value with no match (or a non-negligible imaginary part).
pub fn classify(values: &[Complex64], targets: &[ExactValue]) -> Vec<Option<ExactValue>> {
    values
        .iter()
        .map(|z| {
            if z.im.abs() > EIGENVALUE_TOLERANCE {
                return None;
            }
            targets
                .iter()
                .copied()
                .find(|t| (z.re - t.to_f64()).abs() <= EIGENVALUE_TOLERANCE)
        })
        .collect()
}

/// Parseval for circulants: `Σ λ_j^2 = n |T|`, evaluated on exact squares.
pub fn parseval_holds(n: usize, residue_count: usize, classified: &[Option<ExactValue>]) -> bool {
    classified
        .iter()
        .map(|c| c.map(ExactValue::square))
        .sum::<Option<u64>>()
        .is_some_and(|s| s == (n * residue_count) as u64)
}

/// Floating-point Parseval residual `|Σ |λ_j|^2 - n|T||`.
pub fn parseval_residual(n: usize, residue_count: usize, values: &[Complex64]) -> f64 {
    let s: f64 = values.iter().map(|z| z.norm_sqr()).sum();
    (s - (n * residue_count) as f64).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> Graph {
        Graph::from_edges(2, [(0, 1)]).unwrap()
    }

    #[test]
    fn k2_spectrum() {
        assert!(annihilates(&k2(), &[Factor::Quadratic(1)]));
        assert_eq!(IntMatrix::adjacency(&k2()).determinant(), BigInt::from(-1));
        assert!(is_nonsingular(&k2()));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = IntMatrix::from_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(m.determinant(), BigInt::from(4));
        let s = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(s.determinant(), BigInt::from(-1));
        let z = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(z.determinant().is_zero());
    }

    #[test]
    fn four_cycle_circulant() {
        let ev = circulant_eigenvalues(4, &[1, 3]);
        let expected = [2.0, 0.0, -2.0, 0.0];
        for (z, e) in ev.iter().zip(expected) {
            assert!((z.re - e).abs() < 1e-12 && z.im.abs() < 1e-12);
        }
    }

    #[test]
    fn paley_seven_magnitudes() {
        let ev = circulant_eigenvalues(7, &[1, 2, 4]);
        assert!((ev[0].re - 3.0).abs() < 1e-12);
        for z in &ev[1..] {
            assert!((z.norm_sqr() - 2.0).abs() < 1e-12);
        }
        assert!(parseval_residual(7, 3, &ev) < 1e-9);
    }

    #[test]
    fn cycle_array_polynomial() {
        let a: IntersectionArray = "{2,1;1,2}".parse().unwrap();
        // C4: eigenvalues 2, 0, -2 -> x^3 - 4x.
        let p = array_polynomial(&a);
        let expect: Vec<BigInt> = [0, -4, 0, 1].into_iter().map(BigInt::from).collect();
        assert_eq!(p, expect);
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(annihilated_by(&c4, &p));
    }

    #[test]
    fn quotient_integer_eigenvalues() {
        assert_eq!(integer_eigenvalues(&[vec![1, 2], vec![2, 1]]), vec![-1, 3]);
    }

    #[test]
    fn classification_and_exact_parseval() {
        let ev = circulant_eigenvalues(4, &[1, 3]);
        let targets = [
            ExactValue::Int { value: 2 },
            ExactValue::Int { value: -2 },
            ExactValue::Int { value: 0 },
        ];
        let cls = classify(&ev, &targets);
        assert!(cls.iter().all(Option::is_some));
        assert!(parseval_holds(4, 2, &cls));
    }
}
