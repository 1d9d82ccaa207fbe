use super::*;
use crate::bimod::BimodMap;
use crate::coxeter::ParabolicSet;
use crate::demazure::InvariantRingId;
use crate::exactpoly::{parse_poly, Poly, Rational};

fn ps(v: &[usize]) -> ParabolicSet {
    ParabolicSet::new(v.to_vec())
}

#[test]
fn identity_idempotent_passes() {
    let t = identity_two_idem(&InvariantRingId::full(3));
    assert!(check_two_idem(&t).unwrap().all());
}

#[test]
fn bj_idempotents_pass() {
    let t = bj_two_idempotent(&ps(&[1]), 2).unwrap();
    let rep = check_two_idem(&t).unwrap();
    assert!(rep.all(), "{rep:?}");
    assert_eq!((rep.mu_degree, rep.delta_degree), (-1, 1));
    let t = bj_two_idempotent(&ps(&[1, 2]), 3).unwrap();
    assert_eq!(t.e.rank(), 6);
    assert!(check_two_idem(&t).unwrap().all());
    assert!(bj_two_idempotent(&ps(&[]), 3).unwrap().e.is_identity());
}

#[test]
fn parabolic_split_data_all_j() {
    for j in ParabolicSet::all(4) {
        assert!(check_split_data(&parabolic_split_data(&j, 4, true).unwrap()).unwrap(), "{j}");
        if !j.is_empty() {
            assert!(!check_split_data(&parabolic_split_data(&j, 4, false).unwrap()).unwrap(), "{j}");
        }
    }
}

#[test]
fn splitting_theta() {
    for j in [ps(&[1]), ps(&[1, 2])] {
        let t = bj_two_idempotent(&j, 3).unwrap();
        let s = parabolic_split_data(&j, 3, true).unwrap();
        let theta = BimodMap::identity(&t.e);
        assert!(check_splitting(&t, &s, &theta).unwrap());
        assert!(!check_splitting(&t, &s, &theta.scale(&Rational::from_int(2))).unwrap());
    }
    let r = InvariantRingId::full(2);
    let t = identity_two_idem(&r);
    let s = parabolic_split_data(&ps(&[]), 2, true).unwrap();
    assert!(check_split_data(&s).unwrap());
    assert!(check_splitting(&t, &s, &BimodMap::identity(&t.e)).unwrap());
}

#[test]
fn tsut_sandwich() {
    let s = sandwich(&ps(&[1, 3]), &[2], 4).unwrap();
    assert_eq!(s.e.rank(), 16);
    let p = s.rainbow_correction().unwrap().unwrap();
    let expected = parse_poly("x1*x3 - x1*x4 - x2*x3 + x2*x4 - x1*x2 + x1*x4 + x3*x2 - x3*x4", 4).unwrap();
    assert_eq!(p, expected.scale(&Rational::new(1, 4)));
    let rep = check_two_idem(&s.two_idem(&p).unwrap()).unwrap();
    assert!(rep.all(), "{rep:?}");
    let unc = check_two_idem(&s.uncorrected()).unwrap();
    assert!(!unc.section);
}

#[test]
fn ustsu_sandwich() {
    let s = sandwich(&ps(&[1, 2]), &[3], 4).unwrap();
    assert_eq!(s.e.rank(), 24);
    let md = s.mu.compose(&s.delta_uncorrected).unwrap();
    assert!(md.is_zero());
    let q = s.circled_alpha().unwrap();
    let p = s.rainbow_correction().unwrap().unwrap();
    assert_eq!(s.section_scalar(&q).unwrap(), Some(Rational::from_int(8)));
    assert_eq!(s.closed_value(&p).unwrap(), Poly::one(4));
    let rep = check_two_idem(&s.two_idem(&p).unwrap()).unwrap();
    assert!(rep.all(), "{rep:?}");
}

#[test]
fn s5_sandwich_fails_indecomposability() {
    let c = sandwich_conditions(&ps(&[1, 2, 4]), &[3, 2], 5, false).unwrap();
    assert!(c.length_additive && c.same_cell);
    // Five summands: B_d, B_{w_0(s,t,u)}, a pair of mutually inverse length-6
    // elements, and B_stsv, each once without shift.
    assert_eq!(c.end_dim, Some(5));
    assert!(sandwich(&ps(&[1, 2, 4]), &[3, 2], 5).is_err());
}

#[test]
fn section_search_small() {
    let t = bj_two_idempotent(&ps(&[1]), 2).unwrap();
    let found = find_section(&t.e, &t.mu).unwrap();
    assert!(found.family_contains(&t.delta).unwrap());
    assert!(!found.sections.is_empty());
    let r = identity_two_idem(&InvariantRingId::full(2));
    let found = find_section(&r.e, &r.mu).unwrap();
    assert_eq!(found.sections.len(), 1);
    assert!(found.sections[0].equals(&r.delta));
}

#[test]
fn tsut_section_search_contains_correction() {
    let s = sandwich(&ps(&[1, 3]), &[2], 4).unwrap();
    let res = find_section_sandwich(&s).unwrap();
    let p = s.rainbow_correction().unwrap().unwrap();
    assert!(res.in_family(&s, &p).unwrap());
    assert!(res.sections().contains(&&p));
    assert_eq!(res.kernel_dim, 9);
}

#[test]
fn relative_tensor_and_morita() {
    let t = bj_two_idempotent(&ps(&[1]), 2).unwrap();
    let e = self_bimodule(&t);
    let rt = relative_tensor(&e, &e).unwrap();
    assert_eq!(rt.splitting.summand.rank(), 2);
    let rep = morita_verify(&t, &t, &e, &e).unwrap();
    assert!(rep.ok, "{rep:?}");

    let s = sandwich(&ps(&[1, 3]), &[2], 4).unwrap();
    let p = s.rainbow_correction().unwrap().unwrap();
    let (t1, t2, f, g) = sandwich_morita(&s, &p).unwrap();
    let rep = morita_verify(&t1, &t2, &f, &g).unwrap();
    assert!(rep.ok, "{rep:?}");
    assert_eq!((rep.fg_rank, rep.gf_rank), (16, 4));
}
