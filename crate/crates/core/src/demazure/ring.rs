use std::fmt;

use serde::Serialize;

use super::{is_invariant, orbit};
use crate::coxeter::ParabolicSet;
use crate::error::{Error, Result};
use crate::exactpoly::{graded_basis, Monomial, Poly, Rational};
use crate::symfunc::elem_table;

/// Identifies the invariant subring R^J of Q[x1..xn].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct InvariantRingId {
    pub n: usize,
    pub j: ParabolicSet,
}

impl InvariantRingId {
    pub fn new(n: usize, j: ParabolicSet) -> Result<Self> {
        j.validate(n)?;
        Ok(InvariantRingId { n, j })
    }

    /// R itself.
    pub fn full(n: usize) -> Self {
        InvariantRingId { n, j: ParabolicSet::empty() }
    }

    pub fn blocks(&self) -> Vec<(usize, usize)> {
        self.j.blocks(self.n)
    }

    /// Polynomial generators: per block the elementary symmetric polynomials
    /// e_1..e_b of its variables (a singleton block contributes x_i).
    pub fn generators(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        for (start, size) in self.blocks() {
            let vars: Vec<usize> = (start..start + size).collect();
            let e = elem_table(self.n, &vars, size);
            out.extend(e.into_iter().skip(1));
        }
        out
    }

    /// Combinatorial degrees of the generators (1..b per block).
    pub fn generator_degrees(&self) -> Vec<u32> {
        self.blocks().iter().flat_map(|&(_, b)| 1..=b as u32).collect()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        p.n_vars() == self.n && is_invariant(p, &self.j)
    }

    /// Rewrites an invariant polynomial as a polynomial in the generators; the
    /// result lives in one variable y_g per generator.
    pub fn express(&self, p: &Poly) -> Result<Poly> {
        if !self.contains(p) {
            return Err(Error::NotInvariant(format!("{p} under {}", self.j)));
        }
        let gens = self.generators();
        let blocks = self.blocks();
        let mut rest = p.clone();
        let mut out = Vec::new();
        while let Some((m, c)) = rest.leading_term().cloned() {
            let mut y = Monomial::ONE;
            let mut prod = Poly::one(self.n);
            let mut g0 = 0;
            for &(start, size) in &blocks {
                for k in 0..size {
                    let a = m.exponent(start - 1 + k);
                    let b = if k + 1 < size { m.exponent(start + k) } else { 0 };
                    debug_assert!(a >= b, "leading monomial of an invariant is dominant");
                    let e = a - b;
                    if e > 0 {
                        y = y.mul(Monomial::var(g0 + k).pow(e));
                        prod = &prod * &gens[g0 + k].pow(e);
                    }
                }
                g0 += size;
            }
            rest = &rest - &prod.scale(&c);
            out.push((y, c));
        }
        Ok(Poly::from_terms(self.n, out))
    }

    /// Evaluate a polynomial in generator variables back to R.
    pub fn evaluate(&self, q: &Poly) -> Poly {
        q.substitute(&self.generators())
    }

    /// Sum over the W_J-orbit of a monomial.
    pub fn orbit_sum(&self, m: Monomial) -> Poly {
        let terms = orbit(m, &self.j, self.n).into_iter().map(|mm| (mm, Rational::one())).collect();
        Poly::from_terms(self.n, terms)
    }

    fn is_dominant(&self, m: Monomial) -> bool {
        self.blocks().iter().all(|&(start, size)| {
            (0..size.saturating_sub(1)).all(|k| m.exponent(start - 1 + k) >= m.exponent(start + k))
        })
    }

    /// Basis of the degree-`d` part (geometric degree) by orbit sums of dominant
    /// monomials, in descending lexicographic order.
    pub fn graded_basis(&self, d: i64) -> Result<Vec<Poly>> {
        Ok(graded_basis(self.n, d)?
            .into_iter()
            .filter(|&m| self.is_dominant(m))
            .map(|m| self.orbit_sum(m))
            .collect())
    }

    /// Dimension of the degree-`d` part.
    pub fn graded_dim(&self, d: i64) -> usize {
        if d < 0 || d % 2 != 0 {
            return 0;
        }
        graded_basis(self.n, d).map_or(0, |b| b.into_iter().filter(|&m| self.is_dominant(m)).count())
    }
}

impl fmt::Display for InvariantRingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R^{}[n={}]", self.j, self.n)
    }
}

impl fmt::Debug for InvariantRingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
