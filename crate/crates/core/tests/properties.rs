use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use kar2_core::bimod::frobenius_maps;
use kar2_core::grasscohom::build;
use kar2_core::webfoam::{boundary_colourings, insert_bubble, refine_object, validate_web, Slice, Web, WebObject};
use kar2_core::{demazure_j, demazure_simple, demazure_word, frob, longest, Monomial, ParabolicSet, Poly, Rational};

fn cfg(seed: u64) -> Config {
    Config { cases: 128, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

fn poly(n: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -4i64..=4), 0..6).prop_map(move |terms| {
        Poly::from_terms(
            n,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exponents(&e), Rational::from_int(c)))
                .collect(),
        )
    })
}

fn sized_poly(max_n: usize, max_deg: u32) -> impl Strategy<Value = (usize, Poly)> {
    (2..=max_n).prop_flat_map(move |n| (Just(n), poly(n, max_deg)))
}

/// A random reduced word of w_J, built by peeling random right descents.
fn random_reduced_word(j: &ParabolicSet, n: usize, picks: &[usize]) -> Vec<usize> {
    let mut w = longest(j, n).unwrap();
    let mut word = Vec::new();
    let mut t = 0;
    while !w.is_identity() {
        let desc: Vec<usize> = (1..n).filter(|&i| w.has_right_descent(i)).collect();
        let s = desc[picks[t % picks.len()] % desc.len()];
        t += 1;
        word.push(s);
        w = w.right_mul_simple(s);
    }
    word.reverse();
    word
}

fn pair(max_n: usize) -> impl Strategy<Value = (usize, ParabolicSet, ParabolicSet)> {
    (2..=max_n, any::<u32>(), any::<u32>()).prop_map(|(n, a, b)| {
        let gens = (n - 1) as u32;
        let outer_mask = a % (1 << gens);
        let inner_mask = outer_mask & (b % (1 << gens));
        let set = |m: u32| ParabolicSet::new((1..n).filter(|i| m & (1 << (i - 1)) != 0).collect());
        (n, set(inner_mask), set(outer_mask))
    })
}

proptest! {
    #![proptest_config(cfg(11))]

    #[test]
    fn demazure_nilpotent((n, f) in sized_poly(5, 4), i in 1usize..5) {
        let i = 1 + (i - 1) % (n - 1);
        prop_assert!(demazure_simple(&demazure_simple(&f, i), i).is_zero());
    }

    #[test]
    fn demazure_braid((n, f) in sized_poly(5, 3), i in 1usize..5, j in 1usize..5) {
        prop_assume!(n >= 3);
        let i = 1 + (i - 1) % (n - 2);
        let a = demazure_word(&f, &[i, i + 1, i]);
        let b = demazure_word(&f, &[i + 1, i, i + 1]);
        prop_assert_eq!(a, b);
        let j = 1 + (j - 1) % (n - 1);
        if i.abs_diff(j) > 1 {
            prop_assert_eq!(demazure_word(&f, &[i, j]), demazure_word(&f, &[j, i]));
        }
    }

    #[test]
    fn demazure_leibniz((n, f) in sized_poly(4, 3), g_seed in poly(4, 3), i in 1usize..4) {
        let i = 1 + (i - 1) % (n - 1);
        let g = g_seed.with_n_vars(4).unwrap();
        let f4 = f.with_n_vars(4).unwrap();
        let lhs = demazure_simple(&(&f4 * &g), i);
        let rhs = &(&demazure_simple(&f4, i) * &g) + &(&f4.swap_vars(i, i + 1) * &demazure_simple(&g, i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parabolic_demazure_word_independent((n, _i, j) in pair(5), f in poly(5, 3),
                                           p in prop::collection::vec(any::<usize>(), 1..8),
                                           q in prop::collection::vec(any::<usize>(), 1..8)) {
        let f = Poly::from_terms(n, f.terms().iter().filter(|(m, _)| m.exponents(5)[n..].iter().all(|&e| e == 0)).cloned().collect());
        let w1 = random_reduced_word(&j, n, &p);
        let w2 = random_reduced_word(&j, n, &q);
        prop_assert_eq!(w1.len(), j.longest_length(n));
        let a = demazure_word(&f, &w1);
        prop_assert_eq!(&a, &demazure_word(&f, &w2));
        prop_assert_eq!(a, demazure_j(&f, &j).unwrap());
    }

    #[test]
    fn frobenius_expansion_round_trip((n, i, j) in pair(4), coeffs in prop::collection::vec(-3i64..=3, 12), d in 0i64..4) {
        let fd = frob(n, &i, &j).unwrap();
        let basis = fd.outer.graded_basis(2 * d).unwrap();
        let f = basis.iter().zip(coeffs.iter().cycle()).fold(Poly::zero(n), |acc, (b, &c)| &acc + &b.scale(&Rational::from_int(c)));
        let a = fd.expand(&f).unwrap();
        prop_assert!(a.iter().all(|x| fd.inner.contains(x)));
        let back = a.iter().zip(&fd.c_basis).fold(Poly::zero(n), |acc, (x, c)| &acc + &(x * c));
        prop_assert_eq!(back, f);
    }
}

proptest! {
    #![proptest_config(cfg(23))]

    #[test]
    fn snake_identities_hold((n, i, j) in pair(3)) {
        prop_assume!(i != j);
        let fm = frobenius_maps(n, &i, &j).unwrap();
        prop_assert_eq!(fm.snake_identities().unwrap(), [true; 4]);
    }

    #[test]
    fn reduce_is_multiplicative(roots in prop::collection::vec(-2i64..=2, 1..=5), k in 0usize..=5,
                                p in prop::collection::vec((prop::collection::vec(0u32..=2, 5), -3i64..=3), 1..4),
                                q in prop::collection::vec((prop::collection::vec(0u32..=2, 5), -3i64..=3), 1..4)) {
        let sigma: Vec<Rational> = roots.iter().map(|&r| Rational::from_int(r)).collect();
        let k = k % (sigma.len() + 1);
        let alg = build(&sigma, k).unwrap();
        // Symmetric polynomials as combinations of products of elementary ones, degree ≤ 8.
        let e: Vec<Poly> = (0..=k).map(|i| alg.elementary(i)).collect();
        let sym = |spec: &[(Vec<u32>, i64)]| {
            spec.iter().fold(Poly::zero(k), |acc, (exps, c)| {
                let mut m = Poly::one(k);
                let mut deg = 0;
                for (i, &x) in exps.iter().enumerate().take(k) {
                    if deg + (i + 1) as u32 * x <= 4 {
                        m = &m * &e[i + 1].pow(x);
                        deg += (i + 1) as u32 * x;
                    }
                }
                &acc + &m.scale(&Rational::from_int(*c))
            })
        };
        let (p, q) = (sym(&p), sym(&q));
        let lhs = alg.reduce(&(&p * &q)).unwrap();
        let rhs = alg.mul(&alg.reduce(&p).unwrap(), &alg.reduce(&q).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bubbles_preserve_boundary_colourings(roots in prop::collection::vec(-1i64..=1, 2..=4), a in 1usize..=3, pos in 0usize..3) {
        let sigma: Vec<Rational> = roots.iter().map(|&r| Rational::from_int(r)).collect();
        let top = a.min(sigma.len() - 1);
        let w = Web { source: WebObject::new([top, 1]), slices: vec![Slice::merge(1, top, 1)] };
        let after = pos % 2;
        let label = if after == 0 { top } else { top + 1 };
        prop_assume!(label >= 2);
        let b = insert_bubble(&w, after, 1, 1 + pos % (label - 1)).unwrap();
        prop_assert_eq!(boundary_colourings(&w, &sigma).unwrap(), boundary_colourings(&b, &sigma).unwrap());
    }

    #[test]
    fn refine_round_trip(colour in prop::collection::vec(-3i64..=3, 1..=8)) {
        let colour: Vec<Rational> = colour.iter().map(|&r| Rational::from_int(r)).collect();
        let r = refine_object(colour.len(), &colour).unwrap();
        let mut sorted = colour.clone();
        sorted.sort();
        let merged: Vec<Rational> = r.points.iter().flat_map(|p| p.colour.clone()).collect();
        prop_assert_eq!(merged, sorted);
        prop_assert_eq!(r.split_web.slices.len(), r.points.len() - 1);
        prop_assert_eq!(validate_web(&r.split_web).unwrap(), r.merge_web.source.clone());
        prop_assert_eq!(validate_web(&r.merge_web).unwrap(), WebObject::new([colour.len()]));
    }
}
