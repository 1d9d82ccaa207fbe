use std::sync::Arc;

use serde::Serialize;

use super::idem::{bj_maps, BjMaps, TwoIdem};
use crate::bimod::{
    b_simple, cap, cup, hom_dim_reduced, scalar_map, tensor, tensor_all, whisker, BimodMap, Bimodule,
};
use crate::coxeter::{longest, rsk_shape, ParabolicSet, Perm};
use crate::demazure::{alpha_j, demazure_j, InvariantRingId};
use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Rational};

/// Conditions for sandwiching w_J by the rainbow (s_1, …, s_k).
#[derive(Clone, Debug, Serialize)]
pub struct SandwichConditions {
    pub d: Perm,
    /// ℓ(d) = ℓ(w_J) + 2k, with every layer adding 2.
    pub length_additive: bool,
    /// Every layer stays in the two-sided cell (RSK shape) of w_J.
    pub same_cell: bool,
    /// dim End⁰ of the sandwich; indecomposable iff 1.
    pub end_dim: Option<usize>,
}

impl SandwichConditions {
    pub fn all(&self) -> bool {
        self.length_additive && self.same_cell && self.end_dim == Some(1)
    }
}

fn layers(j: &ParabolicSet, seq: &[usize], n: usize) -> Result<(Vec<Perm>, bool, bool)> {
    let wj = longest(j, n)?;
    let shape = rsk_shape(&wj);
    let mut w = wj.clone();
    let mut out = vec![w.clone()];
    let (mut additive, mut cell) = (true, true);
    for &s in seq {
        let v = w.left_mul_simple(s).right_mul_simple(s);
        additive &= v.length() == w.length() + 2;
        cell &= rsk_shape(&v) == shape;
        out.push(v.clone());
        w = v;
    }
    Ok((out, additive, cell))
}

/// The rainbow sandwich e = B_{s_k} ⋯ B_{s_1} B_J B_{s_1} ⋯ B_{s_k} with the
/// multiplication and (uncorrected) comultiplication inherited from B_J.
pub struct Sandwich {
    pub n: usize,
    pub parabolic: ParabolicSet,
    /// (s_1, …, s_k), innermost first.
    pub sequence: Vec<usize>,
    pub conditions: SandwichConditions,
    /// B_{s_k}, …, B_{s_1}.
    pub left: Vec<Arc<Bimodule>>,
    /// B_{s_1}, …, B_{s_k}.
    pub right: Vec<Arc<Bimodule>>,
    pub e: Arc<Bimodule>,
    pub mu: BimodMap,
    pub delta_uncorrected: BimodMap,
    bj: BjMaps,
    caps: BimodMap,
}

impl std::fmt::Debug for Sandwich {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Sandwich(J={}, seq={:?}, n={})", self.parabolic, self.sequence, self.n)
    }
}

/// Nested caps B_{s_1} ⋯ B_{s_k} B_{s_k} ⋯ B_{s_1} ⇒ R, innermost cap s_k.
fn nested_caps(seq: &[usize], n: usize) -> Result<BimodMap> {
    let Some((&s, rest)) = seq.split_first() else {
        return Ok(BimodMap::identity(&Bimodule::identity(&InvariantRingId::full(n))));
    };
    let b = b_simple(n, s)?;
    let inner = whisker(&[b.clone()], &nested_caps(rest, n)?, &[b])?;
    cap(n, s)?.compose(&inner)
}

/// Nested cups R ⇒ B_{s_1} ⋯ B_{s_k} B_{s_k} ⋯ B_{s_1} with p in the innermost region.
pub(crate) fn nested_cups(seq: &[usize], n: usize, p: &Poly) -> Result<BimodMap> {
    let Some((&s, rest)) = seq.split_first() else {
        return Ok(scalar_map(n, p));
    };
    let b = b_simple(n, s)?;
    let inner = whisker(&[b.clone()], &nested_cups(rest, n, p)?, &[b])?;
    inner.compose(&cup(n, s)?)
}

/// s-coloured loop around a polynomial: f − s·f.
pub fn circle(f: &Poly, s: usize) -> Poly {
    f - &f.swap_vars(s, s + 1)
}

/// Checks (1)–(2) and, unless `skip_end`, computes dim End⁰ of the sandwich.
pub fn sandwich_conditions(j: &ParabolicSet, seq: &[usize], n: usize, skip_end: bool) -> Result<SandwichConditions> {
    let (ls, additive, cell) = layers(j, seq, n)?;
    let end_dim = if skip_end {
        None
    } else {
        let e = sandwich_module(j, seq, n)?;
        Some(hom_dim_reduced(&e, &e, 0)?)
    };
    Ok(SandwichConditions { d: ls.last().unwrap().clone(), length_additive: additive, same_cell: cell, end_dim })
}

fn rainbow_factors(seq: &[usize], n: usize) -> Result<(Vec<Arc<Bimodule>>, Vec<Arc<Bimodule>>)> {
    let right: Vec<Arc<Bimodule>> = seq.iter().map(|&s| b_simple(n, s)).collect::<Result<_>>()?;
    let mut left = right.clone();
    left.reverse();
    Ok((left, right))
}

pub fn sandwich_module(j: &ParabolicSet, seq: &[usize], n: usize) -> Result<Arc<Bimodule>> {
    let (left, right) = rainbow_factors(seq, n)?;
    let mut fs = vec![Bimodule::identity(&InvariantRingId::full(n))];
    fs.extend(left);
    fs.push(crate::bimod::b_parabolic(n, j)?);
    fs.extend(right);
    tensor_all(&fs)
}

/// Builds the sandwich; fails unless conditions (1)–(3) hold.
pub fn sandwich(j: &ParabolicSet, seq: &[usize], n: usize) -> Result<Sandwich> {
    let s = sandwich_unchecked(j, seq, n)?;
    if !s.conditions.all() {
        return Err(Error::Precondition(format!(
            "sandwich conditions: (1) length additive = {}, (2) same cell = {}, (3) End⁰ dimension = {}",
            s.conditions.length_additive,
            s.conditions.same_cell,
            s.conditions.end_dim.map_or("?".into(), |d| d.to_string())
        )));
    }
    Ok(s)
}

/// Builds the sandwich structure maps without requiring the conditions.
pub fn sandwich_unchecked(j: &ParabolicSet, seq: &[usize], n: usize) -> Result<Sandwich> {
    if j.is_empty() {
        return Err(Error::Precondition("the parabolic must be nonempty".into()));
    }
    let mut conditions = sandwich_conditions(j, seq, n, true)?;
    let bj = bj_maps(j, n)?;
    let (left, right) = rainbow_factors(seq, n)?;
    let r = Bimodule::identity(&InvariantRingId::full(n));
    let mut fs = vec![r.clone()];
    fs.extend(left.iter().cloned());
    fs.push(bj.bj.clone());
    fs.extend(right.iter().cloned());
    let e = tensor_all(&fs)?;
    let ee = tensor(&e, &e)?;
    conditions.end_dim = Some(hom_dim_reduced(&e, &e, 0)?);

    let caps = nested_caps(seq, n)?;
    let mut lb = left.clone();
    lb.push(bj.bj.clone());
    let mut br = vec![bj.bj.clone()];
    br.extend(right.iter().cloned());
    let close = whisker(&lb, &caps, &br)?;
    let mu_mid = whisker(&left, &bj.mu, &right)?;
    let mu = mu_mid.compose(&close)?.retarget(&ee, &e)?;

    let cups = nested_cups(seq, n, &Poly::one(n))?;
    let open = whisker(&[bj.bj.clone()], &cups, &[bj.bj.clone()])?;
    let inner = open.compose(&bj.delta)?;
    let delta_unc = whisker(&left, &inner, &right)?.retarget(&e, &ee)?;
    Ok(Sandwich {
        n,
        parabolic: j.clone(),
        sequence: seq.to_vec(),
        conditions,
        left,
        right,
        e,
        mu,
        delta_uncorrected: delta_unc,
        bj,
        caps,
    })
}

impl Sandwich {
    /// ℓ(w_J).
    pub fn degree_l(&self) -> usize {
        self.bj.fm.data.degree_l
    }

    /// δ_P: split B_J with the plain unit, then open the rainbow with P in the
    /// innermost region.
    pub fn delta_with(&self, p: &Poly) -> Result<BimodMap> {
        let n = self.n;
        let cups = nested_cups(&self.sequence, n, p)?;
        let open = whisker(&[self.bj.bj.clone()], &cups, &[self.bj.bj.clone()])?;
        let inner = open.compose(&self.bj.split)?;
        let ee = tensor(&self.e, &self.e)?;
        whisker(&self.left, &inner, &self.right)?.retarget(&self.e, &ee)
    }

    /// The scalar by which μ ∘ δ_P acts, read off from a closed diagram:
    /// ∂_J of P circled by s_k, …, s_1 from the inside out.
    pub fn closed_value(&self, p: &Poly) -> Result<Poly> {
        let mut acc = p.clone();
        for &s in self.sequence.iter().rev() {
            acc = circle(&acc, s);
        }
        demazure_j(&acc, &self.parabolic)
    }

    /// α_J circled by the rainbow s_1 (innermost), …, s_k.
    pub fn circled_alpha(&self) -> Result<Poly> {
        let mut acc = alpha_j(&self.parabolic, self.n)?;
        for &s in &self.sequence {
            acc = circle(&acc, s);
        }
        Ok(acc)
    }

    /// μ ∘ δ_P if it is a scalar multiple of the identity.
    pub fn section_scalar(&self, p: &Poly) -> Result<Option<Rational>> {
        let md = self.mu.compose(&self.delta_with(p)?)?;
        let m = md.matrix();
        let c = m.get_or_zero(0, 0);
        if !c.is_constant() {
            return Ok(None);
        }
        let c = c.constant_term();
        let want = BimodMap::identity(&self.e).scale(&c);
        Ok(md.equals(&want).then_some(c))
    }

    /// Scaled circled α_J making μ ∘ δ_P the identity.
    pub fn rainbow_correction(&self) -> Result<Option<Poly>> {
        let q = self.circled_alpha()?;
        match self.section_scalar(&q)? {
            Some(c) if !c.is_zero() => Ok(Some(q.scale(&c.recip()))),
            _ => Ok(None),
        }
    }

    /// The idempotent with a given section polynomial.
    pub fn two_idem(&self, p: &Poly) -> Result<TwoIdem> {
        Ok(TwoIdem {
            obj: InvariantRingId::full(self.n),
            e: self.e.clone(),
            mu: self.mu.clone(),
            delta: self.delta_with(p)?,
        })
    }

    pub fn uncorrected(&self) -> TwoIdem {
        TwoIdem {
            obj: InvariantRingId::full(self.n),
            e: self.e.clone(),
            mu: self.mu.clone(),
            delta: self.delta_uncorrected.clone(),
        }
    }

    pub(crate) fn bj(&self) -> &BjMaps {
        &self.bj
    }

    pub(crate) fn caps(&self) -> &BimodMap {
        &self.caps
    }
}
