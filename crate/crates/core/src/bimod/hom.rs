use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{BimodMap, Bimodule, PolyMatrix};
use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Poly, Rational};
use crate::linalg::{sparse_kernel, sparse_solve, Matrix, SparseVec};

type EqKey = (usize, usize, usize, Monomial);

fn intern(rows: &mut HashMap<EqKey, usize>, raw: Vec<(EqKey, Rational)>) -> SparseVec {
    let mut acc: HashMap<usize, Rational> = HashMap::new();
    for (k, c) in raw {
        let next = rows.len();
        let r = *rows.entry(k).or_insert(next);
        *acc.entry(r).or_insert_with(Rational::zero) += &c;
    }
    crate::linalg::sparse_from_map(acc)
}

fn check_rings(m: &Bimodule, n: &Bimodule) -> Result<()> {
    if m.left() != n.left() || m.right() != n.right() {
        return Err(Error::RingMismatch(format!("{m:?} vs {n:?}")));
    }
    Ok(())
}

/// Basis of the degree-`d` bimodule maps M → N.
///
/// Every entry (i, j) is an unknown combination of the left-ring basis in degree
/// d + deg_j(M) − deg_i(N) (homogeneity forces this, so the ansatz is exact);
/// the equations are N_g F = F M_g for each right generator g.
pub fn hom_basis(m: &Arc<Bimodule>, n: &Arc<Bimodule>, d: i64) -> Result<Vec<BimodMap>> {
    check_rings(m, n)?;
    let nv = m.n();
    let left = m.left();
    let mut basis_cache: HashMap<i64, Arc<Vec<Poly>>> = HashMap::new();
    let mut unknowns: Vec<(usize, usize, Arc<Vec<Poly>>, usize)> = Vec::new();
    for j in 0..m.rank() {
        for i in 0..n.rank() {
            let deg = d + m.degrees()[j] - n.degrees()[i];
            if deg < 0 || deg % 2 != 0 {
                continue;
            }
            let b = basis_cache.entry(deg).or_insert_with(|| Arc::new(left.graded_basis(deg).unwrap_or_default()));
            for k in 0..b.len() {
                unknowns.push((i, j, b.clone(), k));
            }
        }
    }
    if unknowns.is_empty() {
        return Ok(Vec::new());
    }
    let ma = m.action();
    let na = n.action();
    let m_rows: Vec<Vec<Vec<(usize, &Poly)>>> = ma.iter().map(|a| a.row_lists()).collect();
    let raw: Vec<Vec<(EqKey, Rational)>> = unknowns
        .par_iter()
        .map(|(i, j, b, k)| {
            let f = &b[*k];
            let mut out = Vec::new();
            for g in 0..ma.len() {
                for (r, q) in na[g].column(*i) {
                    for (mono, c) in (q * f).terms() {
                        out.push(((g, *r, *j, *mono), c.clone()));
                    }
                }
                for (c2, q) in &m_rows[g][*j] {
                    for (mono, c) in (f * *q).terms() {
                        out.push(((g, *i, *c2, *mono), -c));
                    }
                }
            }
            out
        })
        .collect();
    let mut rows = HashMap::new();
    let columns: Vec<SparseVec> = raw.into_iter().map(|r| intern(&mut rows, r)).collect();
    let kernel = sparse_kernel(columns);
    kernel
        .into_iter()
        .map(|v| {
            let triples = v.iter().map(|(u, c)| {
                let (i, j, b, k) = &unknowns[*u];
                (*i, *j, b[*k].scale(c))
            });
            let mat = PolyMatrix::from_triples(nv, n.rank(), m.rank(), triples.collect());
            BimodMap::new(m.clone(), n.clone(), d, mat)
        })
        .collect()
}

pub fn hom_dim(m: &Arc<Bimodule>, n: &Arc<Bimodule>, d: i64) -> Result<usize> {
    Ok(hom_basis(m, n, d)?.len())
}

/// Degree-`e` maps between the reductions Q ⊗ M and Q ⊗ N (constant parts of the
/// actions), as right modules.
fn reduced_hom(m: &Bimodule, n: &Bimodule, e: i64) -> usize {
    let mut unknowns = Vec::new();
    for j in 0..m.rank() {
        for i in 0..n.rank() {
            if n.degrees()[i] == m.degrees()[j] + e {
                unknowns.push((i, j));
            }
        }
    }
    if unknowns.is_empty() {
        return 0;
    }
    let mc: Vec<Matrix> = m.action().iter().map(|a| a.constant_part()).collect();
    let nc: Vec<Matrix> = n.action().iter().map(|a| a.constant_part()).collect();
    let mut rows = HashMap::new();
    let columns: Vec<SparseVec> = unknowns
        .iter()
        .map(|&(i, j)| {
            let mut raw = Vec::new();
            for g in 0..mc.len() {
                for r in 0..n.rank() {
                    let c = nc[g].get(r, i);
                    if !c.is_zero() {
                        raw.push(((g, r, j, Monomial::ONE), c.clone()));
                    }
                }
                for c2 in 0..m.rank() {
                    let c = mc[g].get(j, c2);
                    if !c.is_zero() {
                        raw.push(((g, i, c2, Monomial::ONE), -c));
                    }
                }
            }
            intern(&mut rows, raw)
        })
        .collect();
    sparse_kernel(columns).len()
}

/// dim Hom^d(M, N) for Soergel-type bimodules, from the reduced morphism spaces:
/// Hom(M, N) is graded free over the left ring with Q ⊗ Hom(M, N) = Hom(Q ⊗ M, Q ⊗ N),
/// so dim Hom^d = Σ_{j ≥ 0} dim R_{2j} · dim Hom^{d−2j}(Q ⊗ M, Q ⊗ N).
pub fn hom_dim_reduced(m: &Arc<Bimodule>, n: &Arc<Bimodule>, d: i64) -> Result<usize> {
    check_rings(m, n)?;
    if m.rank() == 0 || n.rank() == 0 {
        return Ok(0);
    }
    let lowest = n.degrees().iter().min().unwrap() - m.degrees().iter().max().unwrap();
    let mut total = 0;
    let mut j = 0;
    while d - 2 * j >= lowest {
        let r = m.left().graded_dim(2 * j);
        if r > 0 {
            total += r * reduced_hom(m, n, d - 2 * j);
        }
        j += 1;
    }
    Ok(total)
}

/// Inverse of a homogeneous square matrix whose constant part is invertible
/// (graded Nakayama): with A = C(1 + X), X is nilpotent and A⁻¹ = Σ (−X)^k C⁻¹.
pub fn graded_inverse(a: &PolyMatrix) -> Option<PolyMatrix> {
    if a.rows() != a.cols() {
        return None;
    }
    let nv = a.n_vars();
    let c = a.constant_part();
    let cinv = c.inverse()?;
    let cinv_p = PolyMatrix::from_constant(nv, &cinv);
    let x = cinv_p.mul(&a.sub(&PolyMatrix::from_constant(nv, &c)));
    let neg_x = x.scale(&Rational::from_int(-1));
    let mut term = cinv_p.clone();
    let mut acc = cinv_p;
    for _ in 0..=a.rows() {
        term = neg_x.mul(&term);
        if term.is_zero() {
            return Some(acc);
        }
        acc = acc.add(&term);
    }
    None
}

/// Two-sided inverse of a homogeneous bimodule map, if one exists.
pub fn inverse(f: &BimodMap) -> Result<BimodMap> {
    if f.source().rank() != f.target().rank() {
        return Err(Error::NotInvertible("ranks differ".into()));
    }
    let g = graded_inverse(f.matrix()).ok_or_else(|| Error::NotInvertible("constant part is singular".into()))?;
    let g = BimodMap::new(f.target().clone(), f.source().clone(), -f.degree(), g)?;
    if !g.compose(f)?.equals(&BimodMap::identity(f.source()))
        || !f.compose(&g)?.equals(&BimodMap::identity(f.target()))
    {
        return Err(Error::NotInvertible("series inverse failed verification".into()));
    }
    Ok(g)
}

pub fn is_iso(f: &BimodMap) -> bool {
    inverse(f).is_ok()
}

/// Inverse found by a linear solve over the morphism space target → source,
/// independent of the Nakayama series.
pub fn inverse_by_solve(f: &BimodMap) -> Result<Option<BimodMap>> {
    let cands = hom_basis(f.target(), f.source(), -f.degree())?;
    let mut rows = HashMap::new();
    let mut columns = Vec::with_capacity(cands.len());
    for h in &cands {
        let mut raw = Vec::new();
        for (side, prod) in [(0usize, h.compose(f)?), (1, f.compose(h)?)] {
            for (i, j, p) in prod.matrix().entries() {
                for (mono, c) in p.terms() {
                    raw.push(((side, i, j, *mono), c.clone()));
                }
            }
        }
        columns.push(intern(&mut rows, raw));
    }
    let mut rhs = Vec::new();
    for side in 0..2 {
        let r = if side == 0 { f.source().rank() } else { f.target().rank() };
        for i in 0..r {
            rhs.push(((side, i, i, Monomial::ONE), Rational::one()));
        }
    }
    let rhs = intern(&mut rows, rhs);
    let Some((x, _)) = sparse_solve(columns, rhs) else {
        return Ok(None);
    };
    let mut acc = BimodMap::zero(f.target(), f.source(), -f.degree());
    for (k, c) in x {
        acc = acc.add(&cands[k].scale(&c))?;
    }
    Ok(Some(acc))
}
