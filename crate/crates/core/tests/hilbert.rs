mod common;

use fiberlab_core::hilbert::{hilbert_enumerate, hilbert_function, hilbert_inclusion_exclusion, hilbert_vector};
use fiberlab_core::MonomialIdeal;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_paths_agree(a in common::ideal(5, 6, 4), d in 0u32..=12) {
        let e = hilbert_enumerate(&a, d);
        prop_assert_eq!(hilbert_inclusion_exclusion(&a, d), e);
        prop_assert_eq!(hilbert_vector(&a, d).unwrap()[d as usize], e);
        prop_assert_eq!(hilbert_function(&a, d).unwrap(), e);
    }

    #[test]
    fn additivity((a, b) in common::ideal_pair(4, 5, 4)) {
        let s = hilbert_vector(&a.sum(&b).unwrap(), 10).unwrap();
        let i = hilbert_vector(&a.intersect(&b).unwrap(), 10).unwrap();
        let (ha, hb) = (hilbert_vector(&a, 10).unwrap(), hilbert_vector(&b, 10).unwrap());
        for d in 0..=10 {
            prop_assert_eq!(s[d] + i[d], ha[d] + hb[d]);
        }
    }

    #[test]
    fn monotone_under_containment((a, b) in common::ideal_pair(4, 5, 4)) {
        let s = a.sum(&b).unwrap();
        let (hs, ha) = (hilbert_vector(&s, 10).unwrap(), hilbert_vector(&a, 10).unwrap());
        prop_assert!(hs.iter().zip(&ha).all(|(x, y)| x >= y));
    }
}

#[test]
fn many_generators_use_recursion() {
    let r = common::ring(3);
    let a = MonomialIdeal::maximal(&r).power(5);
    assert!(a.ngens() > 16);
    for d in 0..=9 {
        assert_eq!(hilbert_function(&a, d).unwrap(), hilbert_enumerate(&a, d));
    }
}
