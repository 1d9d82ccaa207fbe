use std::sync::Arc;

use serde::Serialize;

use crate::bimod::{
    frobenius_maps, id_tensor, tensor, tensor_id, BimodMap, Bimodule, FrobeniusMaps,
};
use crate::coxeter::ParabolicSet;
use crate::demazure::{alpha_j, group_order, InvariantRingId};
use crate::error::{Error, Result};

/// A 2-categorical idempotent: endo-1-morphism e of `obj` with μ: e∘e ⇒ e and
/// a section δ: e ⇒ e∘e.
#[derive(Clone, Debug)]
pub struct TwoIdem {
    pub obj: InvariantRingId,
    pub e: Arc<Bimodule>,
    pub mu: BimodMap,
    pub delta: BimodMap,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TwoIdemReport {
    pub associative: bool,
    pub coassociative: bool,
    pub bimodule_map: bool,
    pub section: bool,
    pub frobenius_left: bool,
    pub frobenius_right: bool,
    pub mu_degree: i64,
    pub delta_degree: i64,
    /// Nonzero entries of the failing differences, keyed by axiom.
    pub counterexamples: Vec<(String, Vec<String>)>,
}

impl TwoIdemReport {
    pub fn frobenius(&self) -> bool {
        self.frobenius_left && self.frobenius_right
    }

    pub fn all(&self) -> bool {
        self.associative && self.coassociative && self.bimodule_map && self.section && self.frobenius()
    }
}

const COUNTEREXAMPLE_LIMIT: usize = 4;

fn compare(name: &str, a: &BimodMap, b: &BimodMap, out: &mut Vec<(String, Vec<String>)>) -> bool {
    let ok = a.equals(b);
    if !ok {
        out.push((name.to_string(), a.difference(b, COUNTEREXAMPLE_LIMIT)));
    }
    ok
}

/// Checks every axiom as an exact equality of bimodule maps.
pub fn check_two_idem(t: &TwoIdem) -> Result<TwoIdemReport> {
    let e = &t.e;
    let ee = tensor(e, e)?;
    if !t.mu.source().same(&ee) || !t.mu.target().same(e) {
        return Err(Error::SizeMismatch("μ must map e∘e to e".into()));
    }
    if !t.delta.source().same(e) || !t.delta.target().same(&ee) {
        return Err(Error::SizeMismatch("δ must map e to e∘e".into()));
    }
    let ((mu_l, mu_r), (de_l, de_r)) = rayon::join(
        || (tensor_id(&t.mu, e), id_tensor(e, &t.mu)),
        || (tensor_id(&t.delta, e), id_tensor(e, &t.delta)),
    );
    let (mu_l, mu_r, de_l, de_r) = (mu_l?, mu_r?, de_l?, de_r?);
    let mut cex = Vec::new();
    let assoc = compare("associative", &t.mu.compose(&mu_l)?, &t.mu.compose(&mu_r)?, &mut cex);
    let coassoc = compare("coassociative", &de_l.compose(&t.delta)?, &de_r.compose(&t.delta)?, &mut cex);
    let section = compare("section", &t.mu.compose(&t.delta)?, &BimodMap::identity(e), &mut cex);
    let dm = t.delta.compose(&t.mu)?;
    let fl = compare("frobenius_left", &dm, &mu_l.compose(&de_r)?, &mut cex);
    let fr = compare("frobenius_right", &dm, &mu_r.compose(&de_l)?, &mut cex);
    let mut bimodule_map = true;
    for (name, f) in [("mu", &t.mu), ("delta", &t.delta)] {
        if let Err(err) = f.validate() {
            bimodule_map = false;
            cex.push((format!("bimodule_map:{name}"), vec![err.to_string()]));
        }
    }
    Ok(TwoIdemReport {
        associative: assoc,
        coassociative: coassoc,
        bimodule_map,
        section,
        frobenius_left: fl,
        frobenius_right: fr,
        mu_degree: t.mu.degree(),
        delta_degree: t.delta.degree(),
        counterexamples: cex,
    })
}

/// The identity 2-idempotent on R^J with unitors as μ and δ.
pub fn identity_two_idem(obj: &InvariantRingId) -> TwoIdem {
    let e = Bimodule::identity(obj);
    let id = BimodMap::identity(&e);
    TwoIdem { obj: obj.clone(), e, mu: id.clone(), delta: id }
}

/// Manifestly split data: f: c → d, g: d → c with φ: f∘g ⇒ id_d and γ: id_d ⇒ f∘g.
/// As bimodules f is a (d, c)-bimodule, g a (c, d)-bimodule and f∘g = f ⊗ g.
#[derive(Clone, Debug)]
pub struct SplitData {
    pub c: InvariantRingId,
    pub d: InvariantRingId,
    pub f: Arc<Bimodule>,
    pub g: Arc<Bimodule>,
    pub phi: BimodMap,
    pub gamma: BimodMap,
}

pub fn check_split_data(s: &SplitData) -> Result<bool> {
    let fg = tensor(&s.f, &s.g)?;
    if !s.phi.source().same(&fg) || !s.gamma.target().same(&fg) {
        return Err(Error::SizeMismatch("φ, γ must have f∘g as source/target".into()));
    }
    let idd = Bimodule::identity(&s.d);
    Ok(s.phi.compose(&s.gamma)?.equals(&BimodMap::identity(&idd)))
}

/// The idempotent e = g∘f with μ = id_g ∘ φ ∘ id_f and δ = id_g ∘ γ ∘ id_f.
pub fn two_idem_from_split(s: &SplitData) -> Result<TwoIdem> {
    let e = tensor(&s.g, &s.f)?;
    let mu = id_tensor(&s.g, &tensor_id(&s.phi, &s.f)?)?;
    let delta = id_tensor(&s.g, &tensor_id(&s.gamma, &s.f)?)?;
    let ee = tensor(&e, &e)?;
    Ok(TwoIdem { obj: s.c.clone(), mu: mu.retarget(&ee, &e)?, delta: delta.retarget(&e, &ee)?, e })
}

/// Verifies that θ: g∘f ⇒ e intertwines the structure maps:
/// μ_e ∘ (θ ∘ θ) = θ ∘ (id_g φ id_f) and (θ ∘ θ) ∘ (id_g γ id_f) = δ_e ∘ θ.
pub fn check_splitting(t: &TwoIdem, s: &SplitData, theta: &BimodMap) -> Result<bool> {
    if !crate::bimod::is_iso(theta) {
        return Err(Error::NotInvertible("θ is not an isomorphism".into()));
    }
    let split = two_idem_from_split(s)?;
    let tt = crate::bimod::tensor_maps(theta, theta)?;
    let lhs = t.mu.compose(&tt)?;
    let rhs = theta.compose(&split.mu)?;
    if !lhs.equals(&rhs) {
        return Ok(false);
    }
    let lhs = tt.compose(&split.delta)?;
    let rhs = t.delta.compose(theta)?;
    Ok(lhs.equals(&rhs))
}

/// γ_J = multiplication by α_J/|W_J| after the unit, id_{R^J} ⇒ Res ∘ Ind.
pub(crate) fn gamma_j(fm: &FrobeniusMaps, j: &ParabolicSet, scaled: bool) -> Result<BimodMap> {
    let n = fm.data.n();
    let mut a = alpha_j(j, n)?;
    if scaled {
        a = a.scale(&group_order(j, n).recip());
    }
    fm.mult_by(&a)?.compose(&fm.unit)
}

/// Parabolic split data (R, R^J, Res, Ind, ∂_J, ·α_J/|W_J|); `scaled = false`
/// drops the 1/|W_J| factor.
pub fn parabolic_split_data(j: &ParabolicSet, n: usize, scaled: bool) -> Result<SplitData> {
    if j.is_empty() {
        let r = InvariantRingId::full(n);
        let id = Bimodule::identity(&r);
        let m = BimodMap::identity(&id);
        return Ok(SplitData { c: r.clone(), d: r, f: id.clone(), g: id, phi: m.clone(), gamma: m });
    }
    let fm = frobenius_maps(n, &ParabolicSet::empty(), j)?;
    let gamma = gamma_j(&fm, j, scaled)?;
    Ok(SplitData {
        c: InvariantRingId::full(n),
        d: InvariantRingId::new(n, j.clone())?,
        f: fm.res.clone(),
        g: fm.ind.clone(),
        phi: fm.trace.clone(),
        gamma,
    })
}

/// The idempotent (R, B_J, μ, δ) with μ(f⊗g⊗h) = ∂_J(g) f⊗h and δ(f⊗g) = f ⊗ α_J/|W_J| ⊗ g.
pub fn bj_two_idempotent(j: &ParabolicSet, n: usize) -> Result<TwoIdem> {
    if j.is_empty() {
        return Ok(identity_two_idem(&InvariantRingId::full(n)));
    }
    two_idem_from_split(&parabolic_split_data(j, n, true)?)
}

/// μ_J, δ_J and the plain splitting map id_Ind ∘ unit ∘ id_Res for B_J.
pub(crate) struct BjMaps {
    pub fm: FrobeniusMaps,
    pub bj: Arc<Bimodule>,
    pub mu: BimodMap,
    pub delta: BimodMap,
    pub split: BimodMap,
}

pub(crate) fn bj_maps(j: &ParabolicSet, n: usize) -> Result<BjMaps> {
    let t = bj_two_idempotent(j, n)?;
    let fm = frobenius_maps(n, &ParabolicSet::empty(), j)?;
    let split = id_tensor(&fm.ind, &tensor_id(&fm.unit, &fm.res)?)?;
    let bb = tensor(&t.e, &t.e)?;
    let split = split.retarget(&t.e, &bb)?;
    Ok(BjMaps { fm, bj: t.e, mu: t.mu, delta: t.delta, split })
}
