use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::idem::{check_two_idem, TwoIdem};
use super::sandwich::Sandwich;
use crate::bimod::{hom_basis, id_tensor, tensor, tensor_id, BimodMap, Bimodule};
use crate::error::Result;
use crate::exactpoly::{Monomial, Poly, Rational};
use crate::linalg::{sparse_from_map, sparse_solve, Echelon, SparseVec};

type Key = (usize, usize, usize, Monomial);

fn flatten(tag: usize, m: &BimodMap, rows: &mut HashMap<Key, usize>, acc: &mut HashMap<usize, Rational>) {
    for (i, j, p) in m.matrix().entries() {
        for (mono, c) in p.terms() {
            let next = rows.len();
            let r = *rows.entry((tag, i, j, *mono)).or_insert(next);
            *acc.entry(r).or_insert_with(Rational::zero) += c;
        }
    }
}

/// Affine solve Σ x_k L(c_k) = rhs where `images[k]` lists the values of the
/// linear equations on candidate k. Returns a particular solution and a kernel basis.
fn affine_solve(images: &[Vec<BimodMap>], rhs: &[Option<BimodMap>]) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let mut rows = HashMap::new();
    let columns: Vec<SparseVec> = images
        .iter()
        .map(|eqs| {
            let mut acc = HashMap::new();
            for (t, m) in eqs.iter().enumerate() {
                flatten(t, m, &mut rows, &mut acc);
            }
            sparse_from_map(acc)
        })
        .collect();
    let mut acc = HashMap::new();
    for (t, m) in rhs.iter().enumerate() {
        if let Some(m) = m {
            flatten(t, m, &mut rows, &mut acc);
        }
    }
    let (x, kernel) = sparse_solve(columns, sparse_from_map(acc))?;
    let dense = |v: &SparseVec| {
        let mut out = vec![Rational::zero(); images.len()];
        for (k, c) in v {
            out[*k] = c.clone();
        }
        out
    };
    Some((dense(&x), kernel.iter().map(dense).collect()))
}

fn combine(cands: &[BimodMap], coeffs: &[Rational], zero: &BimodMap) -> Result<BimodMap> {
    let mut acc = zero.clone();
    for (c, k) in cands.iter().zip(coeffs) {
        if !k.is_zero() {
            acc = acc.add(&c.scale(k))?;
        }
    }
    Ok(acc)
}

/// Sections found for (e, μ): the affine family solving the linear axioms and
/// the members that pass every check.
#[derive(Clone, Debug)]
pub struct SectionSearch {
    pub family_dim: usize,
    pub particular: Option<BimodMap>,
    pub kernel: Vec<BimodMap>,
    pub sections: Vec<BimodMap>,
}

impl SectionSearch {
    /// Whether δ lies in the affine family particular + span(kernel).
    pub fn family_contains(&self, delta: &BimodMap) -> Result<bool> {
        let Some(p) = &self.particular else {
            return Ok(false);
        };
        let diff = delta.sub(p)?;
        let mut rows = HashMap::new();
        let mut ech = Echelon::new();
        for k in &self.kernel {
            let mut acc = HashMap::new();
            flatten(0, k, &mut rows, &mut acc);
            ech.insert(sparse_from_map(acc));
        }
        let mut acc = HashMap::new();
        flatten(0, &diff, &mut rows, &mut acc);
        Ok(ech.contains(sparse_from_map(acc)))
    }
}

/// Searches δ ∈ Hom^{−deg μ}(e, e∘e) with μ∘δ = id and both Frobenius relations
/// (all linear in δ); the particular solution and its translates by the kernel
/// basis are then filtered by the full axiom check.
pub fn find_section(e: &Arc<Bimodule>, mu: &BimodMap) -> Result<SectionSearch> {
    let ee = tensor(e, e)?;
    let mu = mu.retarget(&ee, e)?;
    let cands = hom_basis(e, &ee, -mu.degree())?;
    let mu_l = tensor_id(&mu, e)?;
    let mu_r = id_tensor(e, &mu)?;
    let images: Vec<Vec<BimodMap>> = cands
        .par_iter()
        .map(|d| -> Result<Vec<BimodMap>> {
            let dm = d.compose(&mu)?;
            let fl = dm.sub(&mu_l.compose(&id_tensor(e, d)?)?)?;
            let fr = dm.sub(&mu_r.compose(&tensor_id(d, e)?)?)?;
            Ok(vec![mu.compose(d)?, fl, fr])
        })
        .collect::<Result<_>>()?;
    let rhs = vec![Some(BimodMap::identity(e)), None, None];
    let zero = BimodMap::zero(e, &ee, -mu.degree());
    let Some((x, kernel)) = affine_solve(&images, &rhs) else {
        return Ok(SectionSearch { family_dim: 0, particular: None, kernel: Vec::new(), sections: Vec::new() });
    };
    let particular = combine(&cands, &x, &zero)?;
    let kernel: Vec<BimodMap> = kernel.iter().map(|k| combine(&cands, k, &zero)).collect::<Result<_>>()?;
    let mut trial = vec![particular.clone()];
    for k in &kernel {
        trial.push(particular.add(k)?);
    }
    let obj = e.left().clone();
    let mut sections = Vec::new();
    for delta in trial {
        let t = TwoIdem { obj: obj.clone(), e: e.clone(), mu: mu.clone(), delta: delta.clone() };
        if check_two_idem(&t)?.all() {
            sections.push(delta);
        }
    }
    Ok(SectionSearch { family_dim: kernel.len(), particular: Some(particular), kernel, sections })
}

/// Section search for a sandwich restricted to the corrections δ_P, P of degree 2ℓ(w_J).
#[derive(Clone, Debug, Serialize)]
pub struct SandwichSection {
    pub degree: i64,
    /// Solutions P of μ ∘ δ_P = id: particular + span(kernel).
    pub particular: Option<Poly>,
    pub kernel_dim: usize,
    /// Checked candidates and whether they pass every axiom.
    pub candidates: Vec<(Poly, bool)>,
}

impl SandwichSection {
    pub fn sections(&self) -> Vec<&Poly> {
        self.candidates.iter().filter(|c| c.1).map(|c| &c.0).collect()
    }

    /// Whether P solves μ ∘ δ_P = id, i.e. lies in the affine family.
    pub fn in_family(&self, s: &Sandwich, p: &Poly) -> Result<bool> {
        Ok(s.section_scalar(p)? == Some(Rational::one()))
    }
}

/// Solves μ ∘ δ_P = id over all P of degree 2ℓ(w_J), then checks the rainbow
/// correction and the particular solution against every axiom.
pub fn find_section_sandwich(s: &Sandwich) -> Result<SandwichSection> {
    let n = s.n;
    let degree = 2 * s.degree_l() as i64;
    let basis: Vec<Poly> = crate::exactpoly::graded_basis(n, degree)?
        .into_iter()
        .map(|m| Poly::monomial(n, m))
        .collect();
    let images: Vec<Vec<BimodMap>> = basis
        .par_iter()
        .map(|p| Ok(vec![s.mu.compose(&s.delta_with(p)?)?]))
        .collect::<Result<_>>()?;
    let rhs = vec![Some(BimodMap::identity(&s.e))];
    let Some((x, kernel)) = affine_solve(&images, &rhs) else {
        return Ok(SandwichSection { degree, particular: None, kernel_dim: 0, candidates: Vec::new() });
    };
    let mut particular = Poly::zero(n);
    for (b, c) in basis.iter().zip(&x) {
        particular = &particular + &b.scale(c);
    }
    let mut candidates = Vec::new();
    let mut trial = Vec::new();
    if let Some(p) = s.rainbow_correction()? {
        trial.push(p);
    }
    if !trial.contains(&particular) {
        trial.push(particular.clone());
    }
    for p in trial {
        let ok = check_two_idem(&s.two_idem(&p)?)?.all();
        candidates.push((p, ok));
    }
    Ok(SandwichSection { degree, particular: Some(particular), kernel_dim: kernel.len(), candidates })
}
