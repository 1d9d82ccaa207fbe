use kar2_core::grasscohom::{
    binomial, build, check_idempotents, component_dims, idempotents, multisubsets, tensor_align_check_with,
};
use kar2_core::Rational;

/// Every multiset of size ≤ `max_n` drawn from the integer range.
fn root_multisets(lo: i64, hi: i64, max_n: usize) -> Vec<Vec<Rational>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![(Vec::<i64>::new(), lo)];
    for _ in 0..max_n {
        let mut next = Vec::new();
        for (s, min) in frontier {
            for x in min..=hi {
                let mut t = s.clone();
                t.push(x);
                out.push(t.iter().map(|&v| Rational::from(v)).collect());
                next.push((t, x));
            }
        }
        frontier = next;
    }
    out
}

#[test]
fn deformed_decomposition_sweep() {
    let all = root_multisets(-2, 2, 5);
    assert_eq!(all.len(), 252);
    for sigma in &all {
        for k in 0..=sigma.len() {
            let alg = build(sigma, k).unwrap();
            assert_eq!(alg.dim(), binomial(sigma.len(), k));
            let idems = idempotents(&alg).unwrap();
            assert_eq!(idems.len(), multisubsets(sigma, k).len());
            assert!(check_idempotents(&alg, &idems).all());
            for d in component_dims(&alg, &idems) {
                assert_eq!(d.dim, d.expected, "Σ={sigma:?} k={k} A={:?}", d.colour);
            }
            for e in &idems {
                let r = tensor_align_check_with(&alg, &e.colour, &idems).unwrap();
                assert!(r.ok, "Σ={sigma:?} k={k} {r:?}");
            }
        }
    }
}
