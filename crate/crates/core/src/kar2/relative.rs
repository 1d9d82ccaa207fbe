use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::idem::{bj_two_idempotent, TwoIdem};
use super::sandwich::{nested_cups, Sandwich};
use crate::bimod::{
    hom_basis, id_tensor, inverse, split_idempotent, tensor, tensor_id, whisker, BimodMap, Bimodule, Splitting,
};
use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Rational};

/// A 1-morphism between 2-idempotents: a bimodule m with actions of the left
/// idempotent (e_l ∘ m ⇒ m) and the right one (m ∘ e_r ⇒ m), each with a section.
#[derive(Clone, Debug)]
pub struct IdemBimodule {
    pub m: Arc<Bimodule>,
    pub act_left: BimodMap,
    pub coact_left: BimodMap,
    pub act_right: BimodMap,
    pub coact_right: BimodMap,
}

impl IdemBimodule {
    /// ν ∘ β = id on both sides.
    pub fn check_sections(&self) -> Result<bool> {
        let id = BimodMap::identity(&self.m);
        Ok(self.act_left.compose(&self.coact_left)?.equals(&id) && self.act_right.compose(&self.coact_right)?.equals(&id))
    }
}

/// e as a bimodule over itself, with μ and δ on both sides.
pub fn self_bimodule(t: &TwoIdem) -> IdemBimodule {
    IdemBimodule {
        m: t.e.clone(),
        act_left: t.mu.clone(),
        coact_left: t.delta.clone(),
        act_right: t.mu.clone(),
        coact_right: t.delta.clone(),
    }
}

#[derive(Clone, Debug)]
pub struct RelativeTensor {
    pub phi: BimodMap,
    pub splitting: Splitting,
}

/// x ∘_{e} y: the image of φ = (ν_x^r ∘ id_y) · (id_x ∘ β_y^l) on x ⊗ y.
pub fn relative_tensor(x: &IdemBimodule, y: &IdemBimodule) -> Result<RelativeTensor> {
    let xy = tensor(&x.m, &y.m)?;
    let lift = id_tensor(&x.m, &y.coact_left)?;
    let act = tensor_id(&x.act_right, &y.m)?;
    let phi = act.compose(&lift)?.retarget(&xy, &xy)?;
    if !phi.compose(&phi)?.equals(&phi) {
        return Err(Error::NotIdempotent("φ ∘ φ ≠ φ; the bimodule data is invalid".into()));
    }
    let splitting = split_idempotent(&phi)?;
    Ok(RelativeTensor { phi, splitting })
}

/// An isomorphism a ≅ b of some degree, found among the solved morphisms.
pub fn find_iso(a: &Arc<Bimodule>, b: &Arc<Bimodule>, seed: u64) -> Result<Option<BimodMap>> {
    if a.rank() != b.rank() || a.left() != b.left() || a.right() != b.right() {
        return Ok(None);
    }
    if a.rank() == 0 {
        return Ok(Some(BimodMap::identity(a).retarget(a, a)?));
    }
    let mut da = a.degrees().to_vec();
    let mut db = b.degrees().to_vec();
    da.sort_unstable();
    db.sort_unstable();
    let d = db[0] - da[0];
    if da.iter().zip(&db).any(|(x, y)| x + d != *y) {
        return Ok(None);
    }
    let basis = hom_basis(a, b, d)?;
    for f in &basis {
        if inverse(f).is_ok() {
            return Ok(Some(f.clone()));
        }
    }
    if basis.len() > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..4 {
            let mut acc = BimodMap::zero(a, b, d);
            for f in &basis {
                acc = acc.add(&f.scale(&Rational::from_int(rng.gen_range(-7..=7))))?;
            }
            if inverse(&acc).is_ok() {
                return Ok(Some(acc));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct MoritaReport {
    pub fg_rank: usize,
    pub gf_rank: usize,
    /// Degree of the comparison isomorphism f ∘_{t2} g ≅ e_1, if found.
    pub fg_iso_degree: Option<i64>,
    /// Degree of the comparison isomorphism g ∘_{t1} f ≅ e_2, if found.
    pub gf_iso_degree: Option<i64>,
    pub sections_ok: bool,
    pub ok: bool,
}

/// f: bimodule over (t1, t2), g: bimodule over (t2, t1). Checks
/// f ∘_{t2} g ≅ e_1 and g ∘_{t1} f ≅ e_2.
pub fn morita_verify(t1: &TwoIdem, t2: &TwoIdem, f: &IdemBimodule, g: &IdemBimodule) -> Result<MoritaReport> {
    let sections_ok = f.check_sections()? && g.check_sections()?;
    let fg = relative_tensor(f, g)?;
    let gf = relative_tensor(g, f)?;
    let a = find_iso(&fg.splitting.summand, &t1.e, 1)?;
    let b = find_iso(&gf.splitting.summand, &t2.e, 2)?;
    let (fg_deg, gf_deg) = (a.map(|m| m.degree()), b.map(|m| m.degree()));
    Ok(MoritaReport {
        fg_rank: fg.splitting.summand.rank(),
        gf_rank: gf.splitting.summand.rank(),
        fg_iso_degree: fg_deg,
        gf_iso_degree: gf_deg,
        sections_ok,
        ok: sections_ok && fg_deg.is_some() && gf_deg.is_some(),
    })
}

/// Morita data between the corrected sandwich idempotent (t1, on e = L B_J R) and
/// B_J (t2): f = L B_J and g = B_J R, acting by caps and μ_J, coacting by the
/// corrected cups and δ_J.
pub fn sandwich_morita(s: &Sandwich, p: &Poly) -> Result<(TwoIdem, TwoIdem, IdemBimodule, IdemBimodule)> {
    let n = s.n;
    let t1 = s.two_idem(p)?;
    let t2 = bj_two_idempotent(&s.parabolic, n)?;
    let bjm = s.bj();
    let bj = bjm.bj.clone();
    let (left, right) = (&s.left, &s.right);
    let cups = nested_cups(&s.sequence, n, p)?;
    let open = whisker(&[bj.clone()], &cups, &[bj.clone()])?.compose(&bjm.split)?;

    let mut lb = left.clone();
    lb.push(bj.clone());
    let f_m = crate::bimod::tensor_all(&lb)?;
    let mut br = vec![bj.clone()];
    br.extend(right.iter().cloned());
    let g_m = crate::bimod::tensor_all(&br)?;

    let e1f = tensor(&t1.e, &f_m)?;
    let f_e2 = tensor(&f_m, &t2.e)?;
    let f_act_l = whisker(left, &bjm.mu, &[])?.compose(&whisker(&lb, s.caps(), &[bj.clone()])?)?;
    let f = IdemBimodule {
        act_left: f_act_l.retarget(&e1f, &f_m)?,
        coact_left: whisker(left, &open, &[])?.retarget(&f_m, &e1f)?,
        act_right: whisker(left, &bjm.mu, &[])?.retarget(&f_e2, &f_m)?,
        coact_right: whisker(left, &bjm.delta, &[])?.retarget(&f_m, &f_e2)?,
        m: f_m.clone(),
    };

    let e2g = tensor(&t2.e, &g_m)?;
    let g_e1 = tensor(&g_m, &t1.e)?;
    let mut br_full = vec![bj.clone()];
    br_full.extend(right.iter().cloned());
    let g_act_r = whisker(&[], &bjm.mu, right)?.compose(&whisker(&[bj.clone()], s.caps(), &br_full)?)?;
    let g = IdemBimodule {
        act_left: whisker(&[], &bjm.mu, right)?.retarget(&e2g, &g_m)?,
        coact_left: whisker(&[], &bjm.delta, right)?.retarget(&g_m, &e2g)?,
        act_right: g_act_r.retarget(&g_e1, &g_m)?,
        coact_right: whisker(&[], &open, right)?.retarget(&g_m, &g_e1)?,
        m: g_m,
    };
    Ok((t1, t2, f, g))
}
