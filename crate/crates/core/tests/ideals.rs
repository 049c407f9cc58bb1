mod common;

use fiberlab_core::monomial::monomials_of_degree;
use fiberlab_core::MonomialIdeal;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_distributes_over_sum((a, b) in common::ideal_pair(3, 4, 3)) {
        let p = a.product(&a.sum(&b).unwrap()).unwrap();
        let q = a.product(&a).unwrap().sum(&a.product(&b).unwrap()).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn powers_multiply(a in common::ideal(3, 4, 3), s in 0u32..3, t in 0u32..3) {
        prop_assert_eq!(a.power(s).product(&a.power(t)).unwrap(), a.power(s + t));
    }

    #[test]
    fn colon_by_monomial_is_adjoint(a in common::ideal(3, 4, 3), m in common::monomial(3, 2)) {
        let n = a.ring().nvars();
        let m = m.restrict(0..n);
        let c = a.colon_monomial(&m).unwrap();
        for d in 0..=5 {
            for u in monomials_of_degree(n, d) {
                prop_assert_eq!(c.member(&u), a.member(&u.mul(&m)));
            }
        }
    }

    #[test]
    fn lattice_laws((a, b) in common::ideal_pair(4, 4, 4)) {
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert!(s.contains(&a).unwrap() && s.contains(&b).unwrap());
        prop_assert!(a.contains(&i).unwrap() && b.contains(&i).unwrap());
        prop_assert!(i.contains(&a.product(&b).unwrap()).unwrap());
        prop_assert!(a.contains(&a.colon(&b).unwrap().product(&b).unwrap()).unwrap());
    }

    #[test]
    fn disjoint_blocks_intersect_as_product((a, b) in common::disjoint_pair(3, 3, 3)) {
        prop_assert_eq!(a.intersect(&b).unwrap(), a.product(&b).unwrap());
    }

    #[test]
    fn star_derivative_certificates(i in common::ideal_in_square(3, 3, 3), s in 1u32..=3) {
        let m = MonomialIdeal::maximal(i.ring());
        for t in 1..=s {
            let source = m.power(s - t).product(&i.power(t)).unwrap();
            let target = m.power(s - t + 1).product(&i.power(t - 1)).unwrap();
            prop_assert!(target.contains(&source.star_derivative().unwrap()).unwrap());
        }
    }
}

#[test]
fn component_and_membership() {
    let r = common::ring(2);
    let a = MonomialIdeal::from_exponents(&r, &[&[2, 0], &[0, 3]]).unwrap();
    assert_eq!(a.component(3).unwrap().format_gens(), "x1^3, x1^2*x2, x2^3");
    assert!(a.component(1).unwrap().is_zero());
}
