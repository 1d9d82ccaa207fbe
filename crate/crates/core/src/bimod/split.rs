use std::sync::Arc;

use super::{graded_inverse, BimodMap, Bimodule, PolyMatrix};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};

/// Image of an idempotent as a new free presentation.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub summand: Arc<Bimodule>,
    pub incl: BimodMap,
    pub proj: BimodMap,
}

/// Greedy choice of independent columns of a rational matrix, in index order.
fn independent_columns(c: &Matrix, candidates: &[usize]) -> Vec<usize> {
    let mut ech = Echelon::new();
    candidates
        .iter()
        .copied()
        .filter(|&j| {
            let v = (0..c.rows).filter(|&i| !c.get(i, j).is_zero()).map(|i| (i, c.get(i, j).clone())).collect();
            ech.insert(v).is_none()
        })
        .collect()
}

/// Splits a degree-zero idempotent p: M → M as M ⊇ im p.
///
/// Basis of the summand: columns of p whose constant parts are independent
/// (graded Nakayama); the projection is (p[I, J])⁻¹ · p[I, −] for a matching
/// choice of rows I.
pub fn split_idempotent(p: &BimodMap) -> Result<Splitting> {
    let m = p.source().clone();
    if !p.target().same(&m) {
        return Err(Error::NotIdempotent("not an endomorphism".into()));
    }
    if p.degree() != 0 && !p.is_zero() {
        return Err(Error::NotIdempotent(format!("degree {}", p.degree())));
    }
    let pm = p.matrix();
    if pm.mul(pm) != *pm {
        return Err(Error::NotIdempotent("p ∘ p ≠ p".into()));
    }
    let n = m.n();
    let c = pm.constant_part();
    let all: Vec<usize> = (0..m.rank()).collect();
    let cols = independent_columns(&c, &all);
    let sub = {
        let mut s = Matrix::zeros(c.rows, cols.len());
        for i in 0..c.rows {
            for (k, &j) in cols.iter().enumerate() {
                s.set(i, k, c.get(i, j).clone());
            }
        }
        s
    };
    let rows = independent_columns(&sub.transpose(), &all);
    let r = cols.len();
    let degrees: Vec<i64> = cols.iter().map(|&j| m.degrees()[j]).collect();
    let square = pm.select(&rows, &cols);
    let t = graded_inverse(&square).ok_or_else(|| Error::NotIdempotent("no graded basis for the image".into()))?;
    let incl_m = pm.select(&all, &cols);
    let proj_m = t.mul(&pm.select(&rows, &all));
    let action: Vec<PolyMatrix> = m.action().iter().map(|g| proj_m.mul(&g.mul(&incl_m))).collect();
    let summand = if r == m.rank() && pm.is_identity() {
        m.clone()
    } else if r == 0 {
        Bimodule::zero(m.left(), m.right())
    } else {
        Bimodule::from_action(m.left().clone(), m.right().clone(), degrees, action)?
    };
    let incl = BimodMap::new(summand.clone(), m.clone(), 0, if summand.same(&m) && pm.is_identity() {
        PolyMatrix::identity(n, r)
    } else {
        incl_m
    })?;
    let proj = BimodMap::new(m.clone(), summand.clone(), 0, proj_m)?;
    if !proj.compose(&incl)?.equals(&BimodMap::identity(&summand)) || !incl.compose(&proj)?.equals(p) {
        return Err(Error::Solver("splitting failed verification".into()));
    }
    Ok(Splitting { summand, incl, proj })
}
