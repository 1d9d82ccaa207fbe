//! Elementary, complete and Schur symmetric polynomials over variable or scalar alphabets.

use crate::coxeter::Partition;
use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Poly, Rational};

/// An alphabet: a list of polynomial variables or a finite multiset of scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Alphabet {
    /// One-based variable indices inside a ring with `n_vars` variables.
    Vars { n_vars: usize, vars: Vec<usize> },
    Scalars(Vec<Rational>),
}

impl Alphabet {
    /// The contiguous range x_start..x_{start+len-1}.
    pub fn range(n_vars: usize, start: usize, len: usize) -> Self {
        Alphabet::Vars { n_vars, vars: (start..start + len).collect() }
    }

    pub fn all_vars(n_vars: usize) -> Self {
        Alphabet::range(n_vars, 1, n_vars)
    }

    pub fn scalars(v: &[Rational]) -> Self {
        Alphabet::Scalars(v.to_vec())
    }

    pub fn len(&self) -> usize {
        match self {
            Alphabet::Vars { vars, .. } => vars.len(),
            Alphabet::Scalars(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Value of a symmetric function on an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymValue {
    Poly(Poly),
    Scalar(Rational),
}

impl SymValue {
    /// Embed as a polynomial in `n_vars` variables.
    pub fn into_poly(self, n_vars: usize) -> Poly {
        match self {
            SymValue::Poly(p) => p,
            SymValue::Scalar(c) => Poly::constant(n_vars, c),
        }
    }

    pub fn scalar(&self) -> Option<&Rational> {
        match self {
            SymValue::Scalar(c) => Some(c),
            SymValue::Poly(_) => None,
        }
    }
}

/// e_0..e_max of the variables, via the product ∏(1 + x t).
pub fn elem_table(n_vars: usize, vars: &[usize], max: usize) -> Vec<Poly> {
    let mut e = vec![Poly::zero(n_vars); max + 1];
    e[0] = Poly::one(n_vars);
    for &v in vars {
        let x = Monomial::var(v - 1);
        for k in (1..=max).rev() {
            let add = e[k - 1].mul_term(x, &Rational::one());
            e[k].add_assign_ref(&add);
        }
    }
    e
}

/// h_0..h_max of the variables, via h_k(X ∪ x) = h_k(X) + x·h_{k−1}(X ∪ x).
pub fn complete_table(n_vars: usize, vars: &[usize], max: usize) -> Vec<Poly> {
    let mut h = vec![Poly::zero(n_vars); max + 1];
    h[0] = Poly::one(n_vars);
    for &v in vars {
        let x = Monomial::var(v - 1);
        for k in 1..=max {
            let add = h[k - 1].mul_term(x, &Rational::one());
            h[k].add_assign_ref(&add);
        }
    }
    h
}

pub fn elem_scalar_table(s: &[Rational], max: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); max + 1];
    e[0] = Rational::one();
    for x in s {
        for k in (1..=max).rev() {
            let add = &e[k - 1] * x;
            e[k] += &add;
        }
    }
    e
}

pub fn complete_scalar_table(s: &[Rational], max: usize) -> Vec<Rational> {
    let mut h = vec![Rational::zero(); max + 1];
    h[0] = Rational::one();
    for x in s {
        for k in 1..=max {
            let add = &h[k - 1] * x;
            h[k] += &add;
        }
    }
    h
}

pub fn elem(k: usize, a: &Alphabet) -> SymValue {
    match a {
        Alphabet::Vars { n_vars, vars } => SymValue::Poly(elem_table(*n_vars, vars, k).pop().unwrap()),
        Alphabet::Scalars(s) => SymValue::Scalar(elem_scalar_table(s, k).pop().unwrap()),
    }
}

pub fn complete(k: usize, a: &Alphabet) -> SymValue {
    match a {
        Alphabet::Vars { n_vars, vars } => SymValue::Poly(complete_table(*n_vars, vars, k).pop().unwrap()),
        Alphabet::Scalars(s) => SymValue::Scalar(complete_scalar_table(s, k).pop().unwrap()),
    }
}

/// h_n(X − B) = Σ_i h_{n−i}(X)·(−1)^i·e_i(B). `X` must be a variable alphabet.
pub fn diff_complete(n: usize, x: &Alphabet, b: &Alphabet) -> Result<Poly> {
    let Alphabet::Vars { n_vars, vars } = x else {
        return Err(Error::Invalid("first alphabet must consist of variables".into()));
    };
    let h = complete_table(*n_vars, vars, n);
    let e: Vec<Poly> = match b {
        Alphabet::Vars { n_vars: nb, vars: vb } => {
            if nb != n_vars {
                return Err(Error::VarMismatch(*n_vars, *nb));
            }
            elem_table(*n_vars, vb, n)
        }
        Alphabet::Scalars(s) => elem_scalar_table(s, n).into_iter().map(|c| Poly::constant(*n_vars, c)).collect(),
    };
    let mut acc = Poly::zero(*n_vars);
    for i in 0..=n {
        let term = &h[n - i] * &e[i];
        if i % 2 == 0 {
            acc.add_assign_ref(&term);
        } else {
            acc = &acc - &term;
        }
    }
    Ok(acc)
}

/// Determinant of a square matrix of polynomials by expansion over column subsets.
pub fn poly_det(m: &[Vec<Poly>], n_vars: usize) -> Poly {
    let k = m.len();
    if k == 0 {
        return Poly::one(n_vars);
    }
    // minors[mask] = determinant of rows 0..popcount(mask) on the columns in mask.
    let mut minors: Vec<Option<Poly>> = vec![None; 1 << k];
    minors[0] = Some(Poly::one(n_vars));
    for mask in 1usize..(1 << k) {
        let r = mask.count_ones() as usize - 1;
        let mut acc = Poly::zero(n_vars);
        let mut sign_pos = 0;
        for c in (0..k).rev() {
            if mask & (1 << c) == 0 {
                continue;
            }
            let entry = &m[r][c];
            if !entry.is_zero() {
                if let Some(sub) = &minors[mask & !(1 << c)] {
                    let t = entry * sub;
                    // Sign: number of selected columns to the right of c.
                    if sign_pos % 2 == 0 {
                        acc.add_assign_ref(&t);
                    } else {
                        acc = &acc - &t;
                    }
                }
            }
            sign_pos += 1;
        }
        minors[mask] = Some(acc);
    }
    minors.pop().unwrap().unwrap()
}

/// Jacobi–Trudi determinant det(h_{α_i − i + j}) for an arbitrary integer sequence,
/// with `h(m)` supplying complete symmetric functions (zero for m < 0).
pub fn jacobi_trudi(alpha: &[i64], n_vars: usize, h: &dyn Fn(i64) -> Poly) -> Poly {
    let l = alpha.len();
    let m: Vec<Vec<Poly>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let idx = alpha[i] - i as i64 + j as i64;
                    if idx < 0 { Poly::zero(n_vars) } else { h(idx) }
                })
                .collect()
        })
        .collect();
    poly_det(&m, n_vars)
}

/// Rewrites the Jacobi–Trudi determinant of an integer sequence as ± s_λ, or
/// `None` when it vanishes identically.
pub fn straighten(alpha: &[i64]) -> Option<(i64, Partition)> {
    let l = alpha.len();
    let mut beta: Vec<i64> = alpha.iter().enumerate().map(|(i, &a)| a + (l - 1 - i) as i64).collect();
    if beta.iter().any(|&b| b < 0) {
        return None;
    }
    let mut sign = 1i64;
    // Bubble sort into strictly decreasing order, tracking the sign.
    for i in 0..l {
        for j in 0..l - 1 - i {
            if beta[j] < beta[j + 1] {
                beta.swap(j, j + 1);
                sign = -sign;
            } else if beta[j] == beta[j + 1] {
                return None;
            }
        }
    }
    if beta.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let lam: Partition = beta
        .iter()
        .enumerate()
        .map(|(i, &b)| (b - (l - 1 - i) as i64) as usize)
        .filter(|&p| p > 0)
        .collect();
    Some((sign, lam))
}

/// Schur polynomial of a variable alphabet through Jacobi–Trudi.
pub fn schur(lam: &[usize], a: &Alphabet) -> Result<Poly> {
    let Alphabet::Vars { n_vars, vars } = a else {
        return Err(Error::Invalid("Schur polynomials need a variable alphabet".into()));
    };
    let lam: Vec<usize> = lam.iter().copied().filter(|&p| p > 0).collect();
    if lam.len() > vars.len() {
        return Err(Error::Invalid(format!("partition {lam:?} longer than alphabet")));
    }
    let max = lam.first().copied().unwrap_or(0) + lam.len();
    let h = complete_table(*n_vars, vars, max);
    let alpha: Vec<i64> = lam.iter().map(|&p| p as i64).collect();
    Ok(jacobi_trudi(&alpha, *n_vars, &|m| h.get(m as usize).cloned().unwrap_or_else(|| Poly::zero(*n_vars))))
}

/// Partitions fitting in a `rows × cols` box, listed by size then reverse lexicographically.
pub fn box_partitions(rows: usize, cols: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(cur.clone());
        if cur.len() == rows {
            return;
        }
        for p in (1..=max).rev() {
            cur.push(p);
            rec(rows, p, cur, out);
            cur.pop();
        }
    }
    rec(rows, cols, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().sum::<usize>().cmp(&b.iter().sum::<usize>()).then(b.cmp(a)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn r(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn elem_examples() {
        let a = Alphabet::all_vars(2);
        assert_eq!(elem(2, &a), SymValue::Poly(parse_poly("x1*x2", 2).unwrap()));
        assert_eq!(elem(3, &a), SymValue::Poly(Poly::zero(2)));
        assert_eq!(elem(1, &Alphabet::scalars(&[r(1), r(-1)])), SymValue::Scalar(r(0)));
        assert_eq!(elem(0, &Alphabet::scalars(&[])), SymValue::Scalar(r(1)));
    }

    #[test]
    fn complete_examples() {
        let a = Alphabet::all_vars(2);
        assert_eq!(complete(2, &a), SymValue::Poly(parse_poly("x1^2 + x1*x2 + x2^2", 2).unwrap()));
        assert_eq!(complete(0, &a), SymValue::Poly(Poly::one(2)));
        assert_eq!(complete(2, &Alphabet::scalars(&[r(1), r(1)])), SymValue::Scalar(r(3)));
    }

    #[test]
    fn diff_complete_examples() {
        let x = Alphabet::range(3, 1, 2);
        let b = Alphabet::range(3, 3, 1);
        let d = diff_complete(1, &x, &b).unwrap();
        assert_eq!(d, parse_poly("x1 + x2 - x3", 3).unwrap());
        for n in 1..4 {
            assert!(diff_complete(n, &x, &x).unwrap().is_zero());
        }
        let d = diff_complete(2, &Alphabet::all_vars(1), &Alphabet::scalars(&[r(1), r(1)])).unwrap();
        assert_eq!(d, parse_poly("x1^2 - 2*x1 + 1", 1).unwrap());
    }

    #[test]
    fn schur_examples() {
        let a = Alphabet::all_vars(2);
        assert_eq!(schur(&[1], &a).unwrap(), parse_poly("x1 + x2", 2).unwrap());
        assert_eq!(schur(&[], &a).unwrap(), Poly::one(2));
        assert!(schur(&[1, 1, 1], &a).is_err());
        let s21 = schur(&[2, 1], &Alphabet::all_vars(3)).unwrap();
        let expect = parse_poly(
            "x1^2*x2 + x1^2*x3 + x1*x2^2 + 2*x1*x2*x3 + x1*x3^2 + x2^2*x3 + x2*x3^2",
            3,
        )
        .unwrap();
        assert_eq!(s21, expect);
    }

    #[test]
    fn straightening() {
        assert_eq!(straighten(&[2, 1]), Some((1, vec![2, 1])));
        assert_eq!(straighten(&[1, 2]), None);
        assert_eq!(straighten(&[0, 2]), Some((-1, vec![1, 1])));
        assert_eq!(straighten(&[1, -1]), None);
        assert_eq!(straighten(&[2, 0, 0]), Some((1, vec![2])));
    }

    #[test]
    fn box_counts() {
        assert_eq!(box_partitions(2, 2).len(), 6);
        assert_eq!(box_partitions(2, 3).len(), 10);
        assert_eq!(box_partitions(0, 3), vec![Vec::<usize>::new()]);
    }
}
