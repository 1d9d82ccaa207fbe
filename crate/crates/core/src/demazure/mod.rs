//! Demazure operators on R = Q[x1..xn] and the invariant subrings R^J.

mod ring;

pub use ring::InvariantRingId;

use crate::coxeter::{longest, ParabolicSet};
use crate::error::Result;
use crate::exactpoly::{Monomial, Poly, Rational};

/// ∂_i(p) = (p − s_i·p)/(x_i − x_{i+1}), computed term by term.
pub fn demazure_simple(p: &Poly, i: usize) -> Poly {
    assert!(i >= 1 && i < p.n_vars(), "simple index {i} out of range");
    let (a, b) = (i - 1, i);
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        let (ea, eb) = (m.exponent(a), m.exponent(b));
        if ea == eb {
            continue;
        }
        let base = m.with_exponent(a, 0).with_exponent(b, 0);
        let (lo, hi, coef) = if ea > eb { (eb, ea, c.clone()) } else { (ea, eb, -c) };
        for t in 0..hi - lo {
            let q = base.with_exponent(a, lo + t).with_exponent(b, hi - 1 - t);
            out.push((q, coef.clone()));
        }
    }
    Poly::from_terms(p.n_vars(), out)
}

/// Operator product ∂_{i1} ∘ ⋯ ∘ ∂_{id} applied to `p` (the last letter acts first).
pub fn demazure_word(p: &Poly, word: &[usize]) -> Poly {
    let mut acc = p.clone();
    for &i in word.iter().rev() {
        if acc.is_zero() {
            break;
        }
        acc = demazure_simple(&acc, i);
    }
    acc
}

/// ∂_J along the reduced word of w_J produced by the Coxeter module.
pub fn demazure_j(p: &Poly, j: &ParabolicSet) -> Result<Poly> {
    let w = longest(j, p.n_vars())?;
    Ok(demazure_word(p, &w.reduced_word()))
}

/// Product of the positive roots x_a − x_b (a < b in one block of J).
pub fn alpha_j(j: &ParabolicSet, n: usize) -> Result<Poly> {
    j.validate(n)?;
    let mut acc = Poly::one(n);
    for (start, size) in j.blocks(n) {
        for a in start..start + size {
            for b in a + 1..start + size {
                let root = &Poly::var(n, a) - &Poly::var(n, b);
                acc = &acc * &root;
            }
        }
    }
    Ok(acc)
}

pub fn is_invariant(p: &Poly, j: &ParabolicSet) -> bool {
    j.indices().iter().all(|&i| p.swap_vars(i, i + 1) == *p)
}

/// |W_J| as a rational scalar.
pub fn group_order(j: &ParabolicSet, n: usize) -> Rational {
    Rational::from_int(j.group_order(n) as i64)
}

/// All monomials of W_J-orbit of `m` (as a set).
pub fn orbit(m: Monomial, j: &ParabolicSet, n: usize) -> Vec<Monomial> {
    let mut acc = vec![m];
    for (start, size) in j.blocks(n) {
        if size == 1 {
            continue;
        }
        let mut next = Vec::new();
        for base in &acc {
            let mut exps: Vec<u32> = (start - 1..start - 1 + size).map(|i| base.exponent(i)).collect();
            exps.sort_unstable();
            loop {
                let mut mm = *base;
                for (k, &e) in exps.iter().enumerate() {
                    mm = mm.with_exponent(start - 1 + k, e);
                }
                next.push(mm);
                if !next_permutation(&mut exps) {
                    break;
                }
            }
        }
        acc = next;
    }
    acc.sort_unstable();
    acc
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
