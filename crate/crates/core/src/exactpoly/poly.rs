use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Monomial, Rational, MAX_VARS};
use crate::error::{Error, Result};

/// Sparse polynomial over the rationals in variables x1..xn.
///
/// Terms are kept sorted by ascending monomial with no zero coefficients, so
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n_vars: usize,
    terms: Vec<(Monomial, Rational)>,
}

fn merge(
    a: &[(Monomial, Rational)],
    b: &[(Monomial, Rational)],
    sign: bool,
) -> Vec<(Monomial, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let c = if sign { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if sign { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = if sign { -&t.1 } else { t.1.clone() };
        out.push((t.0, c));
    }
    out
}

impl Poly {
    pub fn zero(n_vars: usize) -> Self {
        assert!(n_vars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Poly { n_vars, terms: Vec::new() }
    }

    pub fn one(n_vars: usize) -> Self {
        Poly::constant(n_vars, Rational::one())
    }

    pub fn constant(n_vars: usize, c: Rational) -> Self {
        Poly::term(n_vars, Monomial::ONE, c)
    }

    pub fn from_int(n_vars: usize, c: i64) -> Self {
        Poly::constant(n_vars, Rational::from_int(c))
    }

    /// The variable x_i, with `i` one-based.
    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n_vars, "variable x{i} out of range");
        Poly::term(n_vars, Monomial::var(i - 1), Rational::one())
    }

    pub fn term(n_vars: usize, m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero(n_vars);
        assert!(m.support_len() <= n_vars, "monomial uses too many variables");
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    pub fn monomial(n_vars: usize, m: Monomial) -> Self {
        Poly::term(n_vars, m, Rational::one())
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(n_vars: usize, mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            assert!(m.support_len() <= n_vars, "monomial uses too many variables");
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += &c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|t| t.1.is_zero()) {
            out.pop();
        }
        Poly { n_vars, terms: out }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Terms in ascending lexicographic order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0 == Monomial::ONE)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE && self.terms[0].1.is_one()
    }

    pub fn coefficient(&self, m: Monomial) -> Rational {
        match self.terms.binary_search_by_key(&m, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(Monomial::ONE)
    }

    /// Largest combinatorial degree of a term, `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// Combinatorial degree if homogeneous (zero is homogeneous of every degree: `Some(None)`).
    pub fn homogeneous_degree(&self) -> Option<Option<u32>> {
        let mut it = self.terms.iter().map(|t| t.0.degree());
        match it.next() {
            None => Some(None),
            Some(d) => it.all(|e| e == d).then_some(Some(d)),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    /// Doubled degree (x_i has degree 2) of a homogeneous nonzero polynomial.
    pub fn geometric_degree(&self) -> Option<i64> {
        match self.homogeneous_degree() {
            Some(Some(d)) => Some(2 * d as i64),
            _ => None,
        }
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.last()
    }

    /// Part of the given combinatorial degree.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            n_vars: self.n_vars,
            terms: self.terms.iter().filter(|t| t.0.degree() == d).cloned().collect(),
        }
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.n_vars != other.n_vars {
            Err(Error::VarMismatch(self.n_vars, other.n_vars))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(Poly { n_vars: self.n_vars, terms: merge(&self.terms, &other.terms, false) })
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(Poly { n_vars: self.n_vars, terms: merge(&self.terms, &other.terms, true) })
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.n_vars);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            return big.mul_term(small.terms[0].0, &small.terms[0].1);
        }
        let mut acc = Vec::with_capacity(small.len() * big.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                acc.push((m1.mul(*m2), c1 * c2));
            }
        }
        Poly::from_terms(self.n_vars, acc)
    }

    /// Multiplication by c·m; shifting by a monomial preserves term order.
    pub fn mul_term(&self, m: Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n_vars);
        }
        Poly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m2, c2)| (m.mul(*m2), c * c2)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n_vars);
        }
        Poly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c2)| (*m, c * c2)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.n_vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        assert_eq!(self.n_vars, other.n_vars, "variable count mismatch");
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            self.terms = other.terms.clone();
            return;
        }
        self.terms = merge(&self.terms, &other.terms, false);
    }

    /// Action of a permutation given in one-line notation (one-based): x_j -> x_{w(j)}.
    pub fn act(&self, w: &[usize]) -> Result<Poly> {
        if w.len() != self.n_vars {
            return Err(Error::SizeMismatch(format!(
                "permutation of degree {} on {} variables",
                w.len(),
                self.n_vars
            )));
        }
        let z: Vec<usize> = w.iter().map(|&v| v - 1).collect();
        Ok(self.act_zero_based(&z))
    }

    pub(crate) fn act_zero_based(&self, w: &[usize]) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.permute(w), c.clone())).collect();
        Poly::from_terms(self.n_vars, terms)
    }

    /// Exchange x_i and x_j (one-based).
    pub fn swap_vars(&self, i: usize, j: usize) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.swap(i - 1, j - 1), c.clone())).collect();
        Poly::from_terms(self.n_vars, terms)
    }

    /// Exact quotient by (x_i − x_j), one-based indices.
    pub fn divide_linear(&self, i: usize, j: usize) -> Result<Poly> {
        if i == j || i == 0 || j == 0 || i > self.n_vars || j > self.n_vars {
            return Err(Error::Invalid(format!("divide_linear indices {i}, {j}")));
        }
        let (a, b) = (i - 1, j - 1);
        let mut quot = Vec::new();
        let mut rem = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(a);
            let base = m.with_exponent(a, 0);
            let f = base.exponent(b);
            rem.push((base.with_exponent(b, f + e), c.clone()));
            for t in 0..e {
                let q = base.with_exponent(a, t).with_exponent(b, f + e - 1 - t);
                quot.push((q, c.clone()));
            }
        }
        if !Poly::from_terms(self.n_vars, rem).is_zero() {
            return Err(Error::NotDivisible(i, j));
        }
        Ok(Poly::from_terms(self.n_vars, quot))
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.n_vars, "evaluation point has wrong length");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    v *= &x.pow(e);
                }
            }
            acc += &v;
        }
        acc
    }

    /// Substitute x_i -> images[i-1]; all images share one variable count.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.n_vars, "substitution has wrong length");
        let n_out = images.first().map_or(0, |p| p.n_vars);
        let mut acc = Poly::zero(n_out);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(n_out), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut v = Poly::constant(n_out, c.clone());
            for i in 0..self.n_vars {
                let e = m.exponent(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                v = &v * &powers[i][e];
            }
            acc.add_assign_ref(&v);
        }
        acc
    }

    /// Reinterpret in a different number of variables; fails if a dropped variable occurs.
    pub fn with_n_vars(&self, n: usize) -> Result<Poly> {
        if self.terms.iter().any(|t| t.0.support_len() > n) {
            return Err(Error::VarMismatch(self.n_vars, n));
        }
        Ok(Poly { n_vars: n, terms: self.terms.clone() })
    }

    /// Rename variables: x_i -> x_{map[i-1]} in a ring with `n` variables (all one-based).
    pub fn rename_vars(&self, map: &[usize], n: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut out = Monomial::ONE;
                for (i, &t) in map.iter().enumerate() {
                    let e = m.exponent(i);
                    if e > 0 {
                        out = out.mul(Monomial::var(t - 1).pow(e));
                    }
                }
                (out, c.clone())
            })
            .collect();
        Poly::from_terms(n, terms)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{a}")?;
            } else if a.is_one() {
                m.fmt_vars(f)?;
            } else {
                write!(f, "{a}*")?;
                m.fmt_vars(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All monomials of geometric degree `d` in `n_vars` variables, in descending
/// lexicographic order (x1 first).
pub fn graded_basis(n_vars: usize, d: i64) -> Result<Vec<Monomial>> {
    if d < 0 || d % 2 != 0 {
        return Err(Error::OddDegree(d));
    }
    let total = (d / 2) as u32;
    let mut out = Vec::new();
    let mut exps = vec![0u32; n_vars];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = exps.len();
        if i + 1 >= n {
            if n == 0 {
                if left == 0 {
                    out.push(Monomial::ONE);
                }
                return;
            }
            exps[i] = left;
            out.push(Monomial::from_exponents(exps));
            exps[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    rec(0, total, &mut exps, &mut out);
    Ok(out)
}
