mod common;

use fiberlab_core::koszul::{tor_map, tor_vanishing};
use fiberlab_core::{Field, MonomialIdeal};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

type Matrix = Vec<Vec<BigRational>>;

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][c]))
                .collect()
        })
        .collect()
}

fn is_zero(m: &Matrix) -> bool {
    m.iter().flatten().all(Zero::is_zero)
}

fn triple() -> impl Strategy<Value = (MonomialIdeal, MonomialIdeal, MonomialIdeal)> {
    (1usize..=3).prop_flat_map(|n| {
        let r = common::ring(n);
        (
            common::ideal_in(r.clone(), 3, 3),
            common::ideal_in(r.clone(), 3, 3),
            common::ideal_in(r, 3, 3),
        )
            .prop_map(|(c, d, e)| {
                let b = c.intersect(&d).unwrap();
                let a = b.intersect(&e).unwrap();
                (a, b, c)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_derivative_certifies_vanishing((a, d) in common::ideal_pair(3, 3, 3)) {
        let b = a.star_derivative().unwrap().sum(&d).unwrap();
        prop_assert!(tor_vanishing(&a, &b, Field::Rational).unwrap());
        prop_assert!(tor_vanishing(&a, &b, Field::Prime(32003)).unwrap());
    }

    #[test]
    fn identity_is_not_vanishing(a in common::ideal(3, 3, 3)) {
        prop_assert!(!tor_vanishing(&a, &a, Field::Rational).unwrap());
    }

    #[test]
    fn induced_maps_compose((a, b, c) in triple()) {
        let ab = tor_map(&a, &b, Field::Rational, None).unwrap();
        let bc = tor_map(&b, &c, Field::Rational, None).unwrap();
        let ac = tor_map(&a, &c, Field::Rational, None).unwrap();
        let mut keys: Vec<_> = ab.blocks().keys().chain(bc.blocks().keys()).chain(ac.blocks().keys()).collect();
        keys.sort();
        keys.dedup();
        for key in keys {
            let composite = match (ab.blocks().get(key), bc.blocks().get(key)) {
                (Some(x), Some(y)) => Some(mul(y, x)),
                _ => None,
            };
            match (ac.blocks().get(key), composite) {
                (Some(direct), Some(comp)) => prop_assert_eq!(direct, &comp),
                (Some(direct), None) => prop_assert!(is_zero(direct)),
                (None, Some(comp)) => prop_assert!(is_zero(&comp)),
                (None, None) => {}
            }
        }
    }
}

#[test]
fn rejects_non_inclusions() {
    let r = common::ring(2);
    let x = MonomialIdeal::variables(&r, &[0]);
    let y = MonomialIdeal::variables(&r, &[1]);
    assert!(tor_map(&x, &y, Field::Rational, None).is_err());
}
