use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use kar2_core::bimod::{bott_samelson, frobenius_maps, hom_dim, hom_dim_reduced};
use kar2_core::coxeter::cell_preserving_descents;
use kar2_core::grasscohom::{
    binomial, build, check_idempotents, component_dims, end_ring, idempotents, multisubsets, tensor_align_check_with,
};
use kar2_core::kar2::{
    bj_two_idempotent, check_split_data, check_two_idem, find_section_sandwich, morita_verify, parabolic_split_data,
    sandwich, sandwich_conditions, sandwich_morita, self_bimodule,
};
use kar2_core::webfoam::{decomposition_counts, enumerate_admissible, split_object, Slice, Web, WebObject};
use kar2_core::{
    alpha_j, demazure_j, demazure_simple, demazure_word, frob, parse_poly, rainbow_search, Monomial, ParabolicSet, Perm, Poly, Rational, Result,
};

use crate::{Config, Job};

pub const SUITES: [&str; 7] = ["frobenius", "parabolic-idem", "s4-examples", "morita", "rainbow", "grass", "colourings"];

/// The S₉ word as printed: 27 letters, but its product is not an involution.
pub const S9_WORD: [usize; 27] = [5, 4, 3, 1, 8, 7, 6, 5, 4, 3, 2, 8, 7, 6, 5, 4, 3, 7, 6, 5, 4, 7, 6, 5, 8, 7, 8];

/// The same word with s_2 restored in the leading run s_5 s_4 s_3 s_2 s_1: a reduced
/// involution of length 28 whose length-decreasing conjugations all leave its cell.
pub const S9_WORD_RESTORED: [usize; 28] =
    [5, 4, 3, 2, 1, 8, 7, 6, 5, 4, 3, 2, 8, 7, 6, 5, 4, 3, 7, 6, 5, 4, 7, 6, 5, 8, 7, 8];

/// Cell-obstruction data for an element of S₉ given by a word.
pub fn s9_obstruction(word: &[usize], k: usize) -> Result<(bool, serde_json::Value)> {
    let d = Perm::from_word(word, 9)?;
    let desc = cell_preserving_descents(&d);
    let involution = d.is_involution();
    let rainbows = if involution { Some(rainbow_search(&d, k.max(1))?.len()) } else { None };
    let ok = involution && d.length() == word.len() && desc.is_empty() && rainbows == Some(0);
    Ok((ok, json!({
        "letters": word.len(),
        "element": d.to_string(),
        "length": d.length(),
        "involution": involution,
        "cell_preserving_descents": desc,
        "rainbows": rainbows,
    })))
}

pub(crate) fn jobs(suite: &str, cfg: &Config) -> Result<Vec<Job>> {
    Ok(match suite {
        "frobenius" => frobenius(cfg),
        "parabolic-idem" => parabolic_idem(cfg),
        "s4-examples" => s4_examples(),
        "morita" => morita(cfg),
        "rainbow" => rainbow(cfg),
        "grass" => grass(cfg)?,
        "colourings" => colourings(cfg)?,
        _ => unreachable!("suite names are checked by the caller"),
    })
}

fn ps(v: &[usize]) -> ParabolicSet {
    ParabolicSet::new(v.to_vec())
}

fn strs<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn frobenius(cfg: &Config) -> Vec<Job> {
    let mut jobs = Vec::new();
    for n in 2..=cfg.n {
        jobs.push(Job::new(format!("dual-bases-simple n={n}"), move || {
            let mut ok = true;
            let mut bad = Vec::new();
            for i in 1..n {
                let c = [Poly::one(n), Poly::var(n, i)];
                let d = [-Poly::var(n, i + 1), Poly::one(n)];
                for (a, ca) in c.iter().enumerate() {
                    for (b, db) in d.iter().enumerate() {
                        let v = demazure_simple(&(ca * db), i);
                        let want = if a == b { Poly::one(n) } else { Poly::zero(n) };
                        if v != want {
                            ok = false;
                            bad.push(format!("s{i}: ({a},{b}) -> {v}"));
                        }
                    }
                }
                let fd = frob(n, &ParabolicSet::empty(), &ps(&[i]))?;
                if fd.c_basis != c || fd.d_basis != d {
                    ok = false;
                    bad.push(format!("s{i}: computed bases {:?} / {:?}", strs(&fd.c_basis), strs(&fd.d_basis)));
                }
            }
            Ok((ok, json!({ "mismatches": bad })))
        }));
    }
    let m = cfg.n.min(4);
    jobs.push(Job::new(format!("frobenius-pairs n={m}"), move || {
        let all = ParabolicSet::all(m);
        let mut pairs = 0;
        let mut bad = Vec::new();
        for j in &all {
            for i in all.iter().filter(|i| i.is_subset(j)) {
                let fd = frob(m, i, j)?;
                pairs += 1;
                for (a, c) in fd.c_basis.iter().enumerate() {
                    for (b, d) in fd.d_basis.iter().enumerate() {
                        let v = fd.trace(&(c * d))?;
                        if v != if a == b { Poly::one(m) } else { Poly::zero(m) } {
                            bad.push(format!("{i}⊂{j}: trace(c{a} d{b}) = {v}"));
                        }
                    }
                }
                for deg in [0, 2, 4] {
                    for f in fd.outer.graded_basis(deg)? {
                        let coeffs = fd.expand(&f)?;
                        let back = coeffs.iter().zip(&fd.c_basis).fold(Poly::zero(m), |acc, (a, c)| &acc + &(a * c));
                        if back != f {
                            bad.push(format!("{i}⊂{j}: expansion of {f}"));
                        }
                    }
                }
            }
        }
        Ok((bad.is_empty(), json!({ "pairs": pairs, "failures": bad })))
    }));
    let m = cfg.n.min(3);
    jobs.push(Job::new(format!("snake-identities n={m}"), move || {
        let all = ParabolicSet::all(m);
        let mut results = Vec::new();
        let mut ok = true;
        for j in &all {
            for i in all.iter().filter(|i| i.is_subset(j) && *i != j) {
                let fm = frobenius_maps(m, i, j)?;
                let s = fm.snake_identities()?;
                ok &= s.iter().all(|&b| b);
                results.push(json!({ "pair": format!("{i}⊂{j}"), "snakes": s }));
            }
        }
        Ok((ok, json!(results)))
    }));
    let (n, seed) = (cfg.n, cfg.seed);
    jobs.push(Job::new(format!("seeded-demazure-relations n={n}"), move || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bad = Vec::new();
        for t in 0..64 {
            let terms = (0..4)
                .map(|_| {
                    let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
                    (Monomial::from_exponents(&e), Rational::from_int(rng.gen_range(-4..=4)))
                })
                .collect();
            let f = Poly::from_terms(n, terms);
            let i = rng.gen_range(1..n);
            let mut ok = demazure_simple(&demazure_simple(&f, i), i).is_zero();
            if i + 1 < n {
                ok &= demazure_word(&f, &[i, i + 1, i]) == demazure_word(&f, &[i + 1, i, i + 1]);
            }
            if !ok {
                bad.push(t);
            }
        }
        Ok((bad.is_empty(), json!({ "seed": seed, "instances": 64, "failures": bad })))
    }));
    let slack = cfg.degree_slack as i64;
    jobs.push(Job::new("hom-dimensions reduced-vs-direct n=3", move || {
        let mut rows = Vec::new();
        let mut ok = true;
        for word in [vec![1, 1], vec![1, 2, 1], vec![2, 1, 2, 1]] {
            let m = bott_samelson(&word, 3, 0)?;
            for d in (0..=slack).step_by(2) {
                let a = hom_dim(&m, &m, d)?;
                let b = hom_dim_reduced(&m, &m, d)?;
                ok &= a == b;
                rows.push(json!({ "word": word, "degree": d, "direct": a, "reduced": b }));
            }
        }
        Ok((ok, json!(rows)))
    }));
    jobs
}

fn parabolic_idem(cfg: &Config) -> Vec<Job> {
    let n = cfg.n;
    let mut jobs = Vec::new();
    jobs.push(Job::new(format!("trace-of-alpha n={n}"), move || {
        let mut rows = Vec::new();
        let mut ok = true;
        for j in ParabolicSet::all(n) {
            let v = demazure_j(&alpha_j(&j, n)?, &j)?;
            let want = Poly::constant(n, Rational::from(j.group_order(n) as i64));
            ok &= v == want;
            rows.push(json!({ "J": j.to_string(), "value": v.to_string() }));
        }
        Ok((ok, json!(rows)))
    }));
    for j in ParabolicSet::all(n) {
        let order = j.group_order(n);
        let long = order > 6 && !cfg.extended;
        let name = format!("split-data J={j} n={n}");
        if long && order > 24 {
            jobs.push(Job::skipped(name, "needs --extended"));
        } else {
            let jj = j.clone();
            jobs.push(Job::new(name, move || {
                let ok = check_split_data(&parabolic_split_data(&jj, n, true)?)?;
                Ok((ok, json!({ "order": order })))
            }));
        }
        let name = format!("two-idempotent J={j} n={n}");
        if long {
            jobs.push(Job::skipped(name, "needs --extended"));
        } else {
            jobs.push(Job::new(name, move || {
                let rep = check_two_idem(&bj_two_idempotent(&j, n)?)?;
                Ok((rep.all(), serde_json::to_value(&rep).unwrap_or_default()))
            }));
        }
    }
    jobs
}

fn tsut_correction() -> Result<Poly> {
    Ok(parse_poly("x1*x3 - x1*x4 - x2*x3 + x2*x4 - x1*x2 + x1*x4 + x3*x2 - x3*x4", 4)?.scale(&Rational::new(1, 4)))
}

fn s4_examples() -> Vec<Job> {
    vec![
        Job::new("tsut corrected idempotent", || {
            let s = sandwich(&ps(&[1, 3]), &[2], 4)?;
            let p = s.rainbow_correction()?.unwrap_or_else(|| Poly::zero(4));
            let expected = tsut_correction()?;
            let rep = check_two_idem(&s.two_idem(&expected)?)?;
            let unc = check_two_idem(&s.uncorrected())?;
            let ok = p == expected && rep.all() && !unc.section;
            Ok((ok, json!({
                "rank": s.e.rank(),
                "correction": p.to_string(),
                "report": rep,
                "uncorrected_section": unc.section,
            })))
        }),
        Job::new("tsut section search", || {
            let s = sandwich(&ps(&[1, 3]), &[2], 4)?;
            let res = find_section_sandwich(&s)?;
            let passing: Vec<String> = res.sections().iter().map(|p| p.to_string()).collect();
            let contains = res.in_family(&s, &tsut_correction()?)?;
            Ok((!passing.is_empty() && contains, json!({
                "family_dim": res.kernel_dim,
                "passing_sections": passing,
                "contains_rainbow_correction": contains,
            })))
        }),
        Job::new("ustsu zero composite and correction", || {
            let s = sandwich(&ps(&[1, 2]), &[3], 4)?;
            let zero = s.mu.compose(&s.delta_uncorrected)?.is_zero();
            let q = s.circled_alpha()?;
            let scalar = s.section_scalar(&q)?;
            let p = s.rainbow_correction()?;
            let rep = match &p {
                Some(p) => Some(check_two_idem(&s.two_idem(p)?)?),
                None => None,
            };
            let ok = zero && rep.as_ref().is_some_and(|r| r.all());
            Ok((ok, json!({
                "uncorrected_composite_zero": zero,
                "loop_scalar": scalar.map(|c| c.to_string()),
                "correction": p.map(|p| p.to_string()),
                "report": rep,
            })))
        }),
    ]
}

fn morita(cfg: &Config) -> Vec<Job> {
    let mut jobs = vec![Job::new("self-equivalence B_s n=2", || {
        let t = bj_two_idempotent(&ps(&[1]), 2)?;
        let e = self_bimodule(&t);
        let rep = morita_verify(&t, &t, &e, &e)?;
        Ok((rep.ok, serde_json::to_value(&rep).unwrap_or_default()))
    })];
    let name = "tsut with B_su via B_tsu, B_sut";
    if cfg.extended {
        jobs.push(Job::new(name, || {
            let s = sandwich(&ps(&[1, 3]), &[2], 4)?;
            let p = tsut_correction()?;
            let (t1, t2, f, g) = sandwich_morita(&s, &p)?;
            let rep = morita_verify(&t1, &t2, &f, &g)?;
            Ok((rep.ok, serde_json::to_value(&rep).unwrap_or_default()))
        }));
    } else {
        jobs.push(Job::skipped(name, "needs --extended"));
    }
    jobs
}

fn rainbow(cfg: &Config) -> Vec<Job> {
    let k = cfg.max_rainbow;
    let found = |word: &'static [usize], n: usize, j: &'static [usize], seq: &'static [usize]| {
        move || {
            let d = Perm::from_word(word, n)?;
            let all = rainbow_search(&d, k)?;
            let hit = all.iter().any(|r| r.parabolic == ps(j) && r.sequence == seq);
            let rows: Vec<_> = all.iter().map(|r| json!({ "J": r.parabolic.to_string(), "sequence": r.sequence })).collect();
            Ok((hit, json!({ "element": d.to_string(), "rainbows": rows })))
        }
    };
    vec![
        Job::new("tsut rainbow", found(&[2, 1, 3, 2], 4, &[1, 3], &[2])),
        Job::new("ustsu rainbow", found(&[3, 2, 1, 2, 3], 4, &[1, 2], &[3])),
        Job::new("S5 tustsvut condition (3) fails", || {
            let c = sandwich_conditions(&ps(&[1, 2, 4]), &[3, 2], 5, false)?;
            // End⁰ counts the summands of the sandwich; a value above 1 means it decomposes.
            let fails = c.length_additive && c.same_cell && c.end_dim.is_some_and(|d| d > 1);
            Ok((fails, serde_json::to_value(&c).unwrap_or_default()))
        }),
        Job::new("S9 cell obstruction, printed 27-letter word", move || s9_obstruction(&S9_WORD, k)),
        Job::new("S9 cell obstruction, 28-letter word", move || s9_obstruction(&S9_WORD_RESTORED, k)),
    ]
}

fn grass(cfg: &Config) -> Result<Vec<Job>> {
    let sigma = cfg.sigma_values()?;
    let ks: Vec<usize> = match cfg.k {
        Some(k) => vec![k],
        None => (0..=sigma.len()).collect(),
    };
    let mut jobs = Vec::new();
    for k in ks {
        let sigma = sigma.clone();
        jobs.push(Job::new(format!("H_{k} sigma={}", strs(&sigma).join(",")), move || {
            let alg = build(&sigma, k)?;
            let idems = idempotents(&alg)?;
            let idem_rep = check_idempotents(&alg, &idems);
            let dims = component_dims(&alg, &idems);
            let dims_ok = dims.iter().all(|d| d.dim == d.expected);
            let mut align_ok = true;
            for e in &idems {
                align_ok &= tensor_align_check_with(&alg, &e.colour, &idems)?.ok;
            }
            let ok = alg.dim() == binomial(sigma.len(), k)
                && alg.is_associative()
                && idem_rep.all()
                && idems.len() == multisubsets(&sigma, k).len()
                && dims_ok
                && align_ok;
            Ok((ok, json!({
                "dim": alg.dim(),
                "idempotents": idem_rep,
                "component_dims": dims.iter().map(|d| json!({
                    "colour": strs(&d.colour),
                    "dim": d.dim,
                    "expected": d.expected,
                })).collect::<Vec<_>>(),
                "aligned": align_ok,
            })))
        }));
    }
    jobs.push(Job::new("lee end-ring dimensions", || {
        let lee = [Rational::from_int(1), Rational::from_int(-1)];
        let dims: Vec<usize> = (0..=6).map(|l| end_ring(&vec![1; l], &lee).map(|t| t.dim())).collect::<Result<_>>()?;
        let ok = dims.iter().enumerate().all(|(l, &d)| d == 1 << l);
        Ok((ok, json!({ "dims": dims })))
    }));
    if cfg.extended {
        jobs.push(Job::new("sweep N<=5 roots -2..2", || {
            let mut count = 0;
            let mut bad = Vec::new();
            for sigma in small_multisets(5) {
                for k in 0..=sigma.len() {
                    let alg = build(&sigma, k)?;
                    let idems = idempotents(&alg)?;
                    let ok = check_idempotents(&alg, &idems).all()
                        && component_dims(&alg, &idems).iter().all(|d| d.dim == d.expected);
                    if !ok {
                        bad.push(format!("{:?} k={k}", strs(&sigma)));
                    }
                    count += 1;
                }
            }
            Ok((bad.is_empty(), json!({ "algebras": count, "failures": bad })))
        }));
    }
    Ok(jobs)
}

/// Multisets of size ≤ `max_n` with entries in {−2, …, 2}.
pub fn small_multisets(max_n: usize) -> Vec<Vec<Rational>> {
    let vals: Vec<Rational> = (-2..=2).map(Rational::from_int).collect();
    let mut out = Vec::new();
    for n in 0..=max_n {
        let pool: Vec<Rational> = vals.iter().flat_map(|v| std::iter::repeat(v.clone()).take(n)).collect();
        out.extend(multisubsets(&pool, n));
    }
    out
}

fn colourings(cfg: &Config) -> Result<Vec<Job>> {
    let sigma = Arc::new(cfg.sigma_values()?);
    let mut jobs = Vec::new();
    let s = sigma.clone();
    jobs.push(Job::new("identity webs", move || {
        let mut rows = Vec::new();
        let mut ok = true;
        for k in 0..=s.len() {
            let c = enumerate_admissible(&Web::identity(WebObject::new([k])), &s)?.len();
            let want = multisubsets(&s, k).len();
            let idems = idempotents(&build(&s, k)?)?.len();
            ok &= c == want && c == idems;
            rows.push(json!({ "k": k, "colourings": c, "multisubsets": want, "idempotents": idems }));
        }
        Ok((ok, json!(rows)))
    }));
    jobs.push(Job::new("single split webs", || {
        let q = |v: &[i64]| v.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>();
        let split = Web { source: WebObject::new([2]), slices: vec![Slice::split(1, 1, 1)] };
        let lee = enumerate_admissible(&Web::identity(WebObject::new([1])), &q(&[1, -1]))?.len();
        let distinct = enumerate_admissible(&split, &q(&[1, 2]))?.len();
        let equal = enumerate_admissible(&split, &q(&[3, 3]))?.len();
        let bubble = Web { source: WebObject::new([2]), slices: vec![Slice::split(1, 1, 1), Slice::merge(1, 1, 1)] };
        let ok = (lee, distinct, equal) == (2, 2, 1);
        let per_sigma: Vec<_> = small_multisets(4)
            .into_iter()
            .filter(|s| s.len() >= 2)
            .map(|s| -> Result<bool> {
                Ok(enumerate_admissible(&split, &s)?.len()
                    == multisubsets(&s, 2).iter().map(|c| multisubsets(c, 1).len()).sum::<usize>()
                    && enumerate_admissible(&bubble, &s)?.len() >= enumerate_admissible(&split, &s)?.len())
            })
            .collect::<Result<_>>()?;
        let all = per_sigma.iter().all(|&b| b);
        Ok((ok && all, json!({ "lee": lee, "distinct": distinct, "equal": equal, "sweep_ok": all })))
    }));
    jobs.push(Job::new("decomposition counts", move || {
        let mut bad = Vec::new();
        let mut checked = 0;
        for s in small_multisets(6) {
            for k in 0..=s.len() {
                let r = decomposition_counts(k, &s)?;
                checked += 1;
                if !r.vandermonde {
                    bad.push(format!("{:?} k={k}", strs(&s)));
                }
            }
        }
        let own: Vec<_> = (0..=sigma.len())
            .map(|k| -> Result<_> {
                let r = decomposition_counts(k, &sigma)?;
                let pts = split_object(k, &sigma)?;
                Ok(json!({ "k": k, "summands": r.summands.len(), "total": r.total, "points": pts.len() }))
            })
            .collect::<Result<_>>()?;
        Ok((bad.is_empty(), json!({ "checked": checked, "failures": bad, "sigma": own })))
    }));
    Ok(jobs)
}
