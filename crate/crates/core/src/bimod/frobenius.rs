use std::sync::Arc;

use super::{id_tensor, tensor, tensor_all, tensor_id, BimodMap, Bimodule, PolyMatrix};
use crate::coxeter::ParabolicSet;
use crate::demazure::InvariantRingId;
use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::frobext::{frob, FrobData};

fn rings(n: usize, small: &ParabolicSet, big: &ParabolicSet) -> Result<(InvariantRingId, InvariantRingId)> {
    let y = InvariantRingId::new(n, small.clone())?;
    let x = InvariantRingId::new(n, big.clone())?;
    if !small.is_subset(big) {
        return Err(Error::NotNested(format!("{small} is not contained in {big}")));
    }
    Ok((y, x))
}

/// R^I as an (R^I, R^J)-bimodule for I ⊂ J: rank one, right action by inclusion.
pub fn induction(n: usize, i: &ParabolicSet, j: &ParabolicSet) -> Result<Arc<Bimodule>> {
    let (y, x) = rings(n, i, j)?;
    if i == j {
        return Ok(Bimodule::identity(&y));
    }
    let action = x.generators().iter().map(|g| PolyMatrix::diagonal(g, 1)).collect();
    Bimodule::from_action(y, x, vec![0], action)
}

/// R^I as an (R^J, R^I)-bimodule for I ⊂ J, free on the c-basis and shifted by ℓ.
pub fn restriction(n: usize, i: &ParabolicSet, j: &ParabolicSet) -> Result<Arc<Bimodule>> {
    let (y, x) = rings(n, i, j)?;
    if i == j {
        return Ok(Bimodule::identity(&y));
    }
    let fd = frob(n, i, j)?;
    let l = fd.degree_l as i64;
    let degrees = fd.c_degrees().iter().map(|d| d - l).collect();
    let m = fd.rank();
    let mut action = Vec::new();
    for g in y.generators() {
        let mut cols = Vec::with_capacity(m);
        for c in &fd.c_basis {
            let coeffs = fd.expand(&(c * &g))?;
            cols.push(coeffs.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect());
        }
        action.push(PolyMatrix::from_columns(n, m, cols));
    }
    Bimodule::from_action(x, y, degrees, action)
}

/// B_s = R ⊗_{R^s} R⟨1⟩.
pub fn b_simple(n: usize, s: usize) -> Result<Arc<Bimodule>> {
    b_parabolic(n, &ParabolicSet::new(vec![s]))
}

/// B_J = R ⊗_{R^J} R⟨ℓ(w_J)⟩.
pub fn b_parabolic(n: usize, j: &ParabolicSet) -> Result<Arc<Bimodule>> {
    j.validate(n)?;
    let e = ParabolicSet::empty();
    tensor(&induction(n, &e, j)?, &restriction(n, &e, j)?)
}

/// B_{s_1} ⊗ ⋯ ⊗ B_{s_k}⟨shift⟩; the empty word gives R.
pub fn bott_samelson(word: &[usize], n: usize, shift: i64) -> Result<Arc<Bimodule>> {
    let mut factors = vec![Bimodule::identity(&InvariantRingId::full(n))];
    for &s in word {
        factors.push(b_simple(n, s)?);
    }
    Ok(tensor_all(&factors)?.shift(shift))
}

/// R^{I_0} ⊗_{R^{J_1}} R^{I_1} ⊗_{R^{J_2}} ⋯ for a chain listed as I_0, J_1, I_1, J_2, …, I_k,
/// each I contained in its neighbouring J's.
pub fn singular_bott_samelson(n: usize, chain: &[ParabolicSet]) -> Result<Arc<Bimodule>> {
    if chain.len() % 2 == 0 {
        return Err(Error::Invalid("chain must alternate I, J, …, I".into()));
    }
    let mut factors = vec![Bimodule::identity(&InvariantRingId::new(n, chain[0].clone())?)];
    for k in (1..chain.len()).step_by(2) {
        factors.push(induction(n, &chain[k - 1], &chain[k])?);
        factors.push(restriction(n, &chain[k + 1], &chain[k])?);
    }
    tensor_all(&factors)
}

/// The four adjunction maps for R^J ⊂ R^I (I ⊂ J).
#[derive(Clone, Debug)]
pub struct FrobeniusMaps {
    pub data: Arc<FrobData>,
    pub ind: Arc<Bimodule>,
    pub res: Arc<Bimodule>,
    /// id_{R^J} ⇒ Res ⊗ Ind, 1 ↦ 1.
    pub unit: BimodMap,
    /// Res ⊗ Ind ⇒ id_{R^J}, the relative trace.
    pub trace: BimodMap,
    /// Ind ⊗ Res ⇒ id_{R^I}, multiplication.
    pub mult: BimodMap,
    /// id_{R^I} ⇒ Ind ⊗ Res, 1 ↦ Σ c_i ⊗ d_i.
    pub comult: BimodMap,
}

pub fn frobenius_maps(n: usize, i: &ParabolicSet, j: &ParabolicSet) -> Result<FrobeniusMaps> {
    if i == j {
        return Err(Error::Precondition("trivial extension has no Frobenius maps to build".into()));
    }
    let fd = frob(n, i, j)?;
    let ind = induction(n, i, j)?;
    let res = restriction(n, i, j)?;
    let (y, x) = rings(n, i, j)?;
    let idx = Bimodule::identity(&x);
    let idy = Bimodule::identity(&y);
    let l = fd.degree_l as i64;
    let m = fd.rank();
    let ri = tensor(&res, &ind)?;
    let ir = tensor(&ind, &res)?;

    let one = fd.expand(&Poly::one(n))?;
    let unit_m = PolyMatrix::from_columns(n, m, vec![nonzero(one)]);
    let unit = BimodMap::new(idx.clone(), ri.clone(), -l, unit_m)?;

    let tr: Result<Vec<Poly>> = fd.c_basis.iter().map(|c| fd.trace(c)).collect();
    let trace_m = PolyMatrix::from_dense(n, vec![tr?]);
    let trace = BimodMap::new(ri, idx, -l, trace_m)?;

    let mult_m = PolyMatrix::from_dense(n, vec![fd.c_basis.clone()]);
    let mult = BimodMap::new(ir.clone(), idy.clone(), l, mult_m)?;

    let mut col = vec![Poly::zero(n); m];
    for (c, d) in fd.c_basis.iter().zip(&fd.d_basis) {
        for (k, a) in fd.expand(d)?.iter().enumerate() {
            col[k].add_assign_ref(&(c * a));
        }
    }
    let comult_m = PolyMatrix::from_columns(n, m, vec![nonzero(col)]);
    let comult = BimodMap::new(idy, ir, l, comult_m)?;
    Ok(FrobeniusMaps { data: fd, ind, res, unit, trace, mult, comult })
}

fn nonzero(v: Vec<Poly>) -> Vec<(usize, Poly)> {
    v.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect()
}

impl FrobeniusMaps {
    /// Multiplication by P ∈ R^I on Res ⊗ Ind, as a map of (R^J, R^J)-bimodules.
    pub fn mult_by(&self, p: &Poly) -> Result<BimodMap> {
        let ri = tensor(&self.res, &self.ind)?;
        let m = self.data.rank();
        let mut cols = Vec::with_capacity(m);
        for c in &self.data.c_basis {
            cols.push(nonzero(self.data.expand(&(p * c))?));
        }
        let deg = p.geometric_degree().unwrap_or(0);
        BimodMap::new(ri.clone(), ri, deg, PolyMatrix::from_columns(self.data.n(), m, cols))
    }

    /// (m ⊗ id_Ind) ∘ (id_Ind ⊗ unit) and (id_Res ⊗ m) ∘ (unit ⊗ id_Res), and the
    /// same for the other adjunction; all four should be identities.
    pub fn snake_identities(&self) -> Result<[bool; 4]> {
        let a = tensor_id(&self.mult, &self.ind)?.compose(&id_tensor(&self.ind, &self.unit)?)?;
        let b = id_tensor(&self.res, &self.mult)?.compose(&tensor_id(&self.unit, &self.res)?)?;
        let c = tensor_id(&self.trace, &self.res)?.compose(&id_tensor(&self.res, &self.comult)?)?;
        let d = id_tensor(&self.ind, &self.trace)?.compose(&tensor_id(&self.comult, &self.ind)?)?;
        Ok([
            a.equals(&BimodMap::identity(&self.ind)),
            b.equals(&BimodMap::identity(&self.res)),
            c.equals(&BimodMap::identity(&self.res)),
            d.equals(&BimodMap::identity(&self.ind)),
        ])
    }
}

fn simple_maps(n: usize, s: usize) -> Result<FrobeniusMaps> {
    frobenius_maps(n, &ParabolicSet::empty(), &ParabolicSet::new(vec![s]))
}

/// Degree-zero cap B_s ⊗ B_s ⇒ R, m ∘ (id ⊗ trace ⊗ id).
pub fn cap(n: usize, s: usize) -> Result<BimodMap> {
    let fm = simple_maps(n, s)?;
    let mid = tensor_id(&id_tensor(&fm.ind, &fm.trace)?, &fm.res)?;
    fm.mult.compose(&mid)
}

/// Degree-zero cup R ⇒ B_s ⊗ B_s, (id ⊗ unit ⊗ id) ∘ comult.
pub fn cup(n: usize, s: usize) -> Result<BimodMap> {
    let fm = simple_maps(n, s)?;
    let mid = tensor_id(&id_tensor(&fm.ind, &fm.unit)?, &fm.res)?;
    mid.compose(&fm.comult)
}

/// Multiplication by a polynomial as an endomorphism of the identity bimodule of R.
pub fn scalar_map(n: usize, p: &Poly) -> BimodMap {
    let r = Bimodule::identity(&InvariantRingId::full(n));
    let deg = p.geometric_degree().unwrap_or(0);
    BimodMap::new(r.clone(), r, deg, PolyMatrix::diagonal(p, 1)).expect("identity shapes agree")
}
