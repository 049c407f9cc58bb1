mod common;

use fiberlab_core::grammar::{print_ideal, print_monomial};
use fiberlab_core::monomial::{monomial_divides, monomial_lcm, monomials_of_degree};
use fiberlab_core::{parse_monomial, Definitions, Monomial};
use proptest::prelude::*;

#[test]
fn divisibility_is_a_partial_order() {
    let all: Vec<Monomial> = (0..=3).flat_map(|d| monomials_of_degree(3, d)).collect();
    for u in &all {
        assert!(monomial_divides(u, u).unwrap());
        for v in &all {
            let (uv, vu) = (monomial_divides(u, v).unwrap(), monomial_divides(v, u).unwrap());
            if uv && vu {
                assert_eq!(u, v);
            }
            for w in &all {
                if uv && monomial_divides(v, w).unwrap() {
                    assert!(monomial_divides(u, w).unwrap());
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn lcm_laws(
        (u, v, w) in (1usize..5).prop_flat_map(|n| (common::monomial(n, 4), common::monomial(n, 4), common::monomial(n, 4)))
    ) {
        let l = |a: &Monomial, b: &Monomial| monomial_lcm(a, b).unwrap();
        prop_assert_eq!(l(&l(&u, &v), &w), l(&u, &l(&v, &w)));
        prop_assert_eq!(l(&u, &v), l(&v, &u));
        prop_assert_eq!(l(&u, &u), u.clone());
        prop_assert!(monomial_divides(&u, &l(&u, &v)).unwrap());
    }

    #[test]
    fn monomial_print_parse((n, m) in (1usize..5).prop_flat_map(|n| (Just(n), common::monomial(n, 5)))) {
        let r = common::ring(n);
        prop_assert_eq!(parse_monomial(&r, &print_monomial(&r, &m)).unwrap(), m);
    }

    #[test]
    fn ideal_print_parse(a in common::ideal(4, 6, 5)) {
        let text = format!("ring R = [{}];\n{}\n", a.ring().variables().join(", "), print_ideal("A", &a));
        let defs = Definitions::parse(&text).unwrap();
        prop_assert_eq!(defs.ideal("A").unwrap(), &a);
    }
}

#[test]
fn mismatched_lengths_rejected() {
    assert!(monomial_divides(&Monomial::one(2), &Monomial::one(3)).is_err());
}
