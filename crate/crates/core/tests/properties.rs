//! Randomized invariants: field axioms, weight multiplicities against
//! Freudenthal's formula, Weyl invariance, Bruhat order and rewriting.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qpv::cartan::{build_root_datum, parabolic, RootDatum, Series};
use qpv::decalculus::build_calculus;
use qpv::repmod::{simple_module, Ambient};
use qpv::scalar::{Poly, QContext, Scalar};
use qpv::weyl::{bruhat_graph, gauge_between, generate, random_sign_assignment, sign_assignment, DEFAULT_CAP};
use std::collections::BTreeMap;

fn scalar() -> impl Strategy<Value = Scalar> {
    (
        prop::collection::vec(-4i64..=4, 1..4),
        prop::collection::vec(-3i64..=3, 1..3),
        -3i64..=3,
    )
        .prop_map(|(num, den, shift)| {
            let den = if den.iter().all(|&c| c == 0) { vec![1] } else { den };
            &Scalar::from_poly(Poly::from_i64s(&num), shift) / &Scalar::from_poly(Poly::from_i64s(&den), 0)
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }
}

/// Freudenthal's recursion for the weight multiplicities of `L(λ)`.
fn freudenthal(datum: &RootDatum, lambda: &[i64]) -> BTreeMap<Vec<i64>, usize> {
    let roots: Vec<Vec<i64>> = datum.positive_roots().iter().map(|b| datum.root_to_weight(b)).collect();
    let rho: Vec<i64> = vec![1; datum.rank];
    let add = |a: &[i64], b: &[i64], k: i64| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + k * y).collect() };
    let norm = |a: &[i64]| datum.inner(a, a);
    let top = norm(&add(lambda, &rho, 1));
    let mut mult: BTreeMap<Vec<i64>, usize> = BTreeMap::from([(lambda.to_vec(), 1)]);
    // weights λ − Σ c_i α_i by increasing depth
    let simple: Vec<Vec<i64>> = (0..datum.rank).map(|j| datum.simple_root(j)).collect();
    let mut level = vec![lambda.to_vec()];
    loop {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for mu in &level {
            for a in &simple {
                let nu = add(mu, a, -1);
                if !next.contains(&nu) {
                    next.push(nu);
                }
            }
        }
        let mut found = Vec::new();
        for mu in next {
            let denom = &top - norm(&add(&mu, &rho, 1));
            if denom <= BigRational::from_integer(BigInt::from(0)) {
                continue;
            }
            let mut sum = BigRational::from_integer(BigInt::from(0));
            for beta in &roots {
                let mut k = 1;
                loop {
                    let w = add(&mu, beta, k);
                    match mult.get(&w) {
                        Some(&m) => sum += datum.inner(&w, beta) * BigRational::from_integer(BigInt::from(m)),
                        None if k > 64 => break,
                        None => {}
                    }
                    if k > 64 {
                        break;
                    }
                    k += 1;
                }
            }
            let m = BigRational::from_integer(BigInt::from(2)) * sum / denom;
            assert!(m.is_integer());
            let m: usize = m.to_integer().try_into().unwrap();
            if m > 0 {
                mult.insert(mu.clone(), m);
                found.push(mu);
            }
        }
        if found.is_empty() {
            break;
        }
        level = found;
    }
    mult
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn characters_match_freudenthal(case in 0usize..3, a in 0i64..=2, b in 0i64..=2, c in 0i64..=1) {
        let (datum, lambda) = match case {
            0 => (build_root_datum(Series::A, 2).unwrap(), vec![a, b]),
            1 => (build_root_datum(Series::C, 2).unwrap(), vec![a, b.min(1)]),
            _ => (build_root_datum(Series::A, 3).unwrap(), vec![a.min(1), c, b.min(1)]),
        };
        let m = simple_module(&Ambient::full(&datum), &lambda, QContext::new(2)).unwrap();
        prop_assert_eq!(m.character(), freudenthal(&datum, &lambda));
    }

    #[test]
    fn weyl_group_preserves_the_form(w_seed in 0usize..48, l in prop::collection::vec(-3i64..=3, 3), m in prop::collection::vec(-3i64..=3, 3)) {
        let datum = build_root_datum(Series::B, 3).unwrap();
        let g = generate(&datum, DEFAULT_CAP).unwrap();
        let w = w_seed % g.len();
        prop_assert_eq!(datum.inner(&g.act(w, &l), &g.act(w, &m)), datum.inner(&l, &m));
        let u = (w_seed * 7 + 3) % g.len();
        prop_assert_eq!(g.affine_action(w, &g.affine_action(u, &l)), g.affine_action(g.mul(w, u), &l));
    }

    #[test]
    fn normal_forms_are_idempotent(word in prop::collection::vec(0u8..8, 0..6)) {
        let par = parabolic(&build_root_datum(Series::A, 3).unwrap(), 2).unwrap();
        let cp = build_calculus(&par).unwrap();
        let nf = cp.calculus.system.normal_form(&word);
        prop_assert!(nf.keys().all(|w| cp.calculus.system.is_normal(w)));
        prop_assert_eq!(cp.calculus.system.normal_form_lin(&nf), nf);
    }

    #[test]
    fn sign_solutions_are_gauge_equivalent(seed in any::<u64>()) {
        let g = generate(&build_root_datum(Series::A, 3).unwrap(), DEFAULT_CAP).unwrap();
        let all: Vec<usize> = (0..g.len()).collect();
        let graph = bruhat_graph(&g, &all);
        let squares = graph.squares(&g).unwrap();
        let e = sign_assignment(&graph, &squares).unwrap();
        let f = random_sign_assignment(&graph, &squares, seed).unwrap();
        prop_assert!(gauge_between(&graph, &e, &f).is_some());
    }
}

#[test]
fn subword_order_equals_reflection_reachability() {
    for (s, r) in [(Series::A, 3), (Series::B, 3), (Series::C, 2)] {
        let g = generate(&build_root_datum(s, r).unwrap(), DEFAULT_CAP).unwrap();
        let all: Vec<usize> = (0..g.len()).collect();
        let graph = bruhat_graph(&g, &all);
        let reach = graph.reachability();
        for (a, &u) in graph.vertices.iter().enumerate() {
            for (b, &w) in graph.vertices.iter().enumerate() {
                assert_eq!(g.bruhat_leq(u, w), reach[a][b], "{} vs {}", g.word_string(u), g.word_string(w));
            }
        }
    }
}
