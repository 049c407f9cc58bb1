mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use fiberlab_core::koszul::tor_dimensions;
use fiberlab_core::simplicial::{betti_at, betti_table_with, lcm_lattice, upper_koszul, BettiOptions};
use fiberlab_core::{betti_table, Definitions, Field, Monomial, MonomialIdeal, Multidegree};
use proptest::prelude::*;

const FIELDS: [Field; 2] = [Field::Rational, Field::Prime(32003)];

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Signed count of generator subsets by lcm: the numerator of the Hilbert
/// series of the ideal.
fn numerator(a: &MonomialIdeal) -> BTreeMap<Multidegree, i64> {
    let gens = a.gens();
    let mut out = BTreeMap::new();
    for mask in 1u32..1 << gens.len() {
        let mut l = Monomial::one(a.ring().nvars());
        for (k, g) in gens.iter().enumerate() {
            if mask >> k & 1 == 1 {
                l = l.lcm(g);
            }
        }
        let sign = if mask.count_ones() % 2 == 1 { 1 } else { -1 };
        *out.entry(l).or_insert(0) += sign;
    }
    out.retain(|_, v| *v != 0);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_characteristic(a in common::ideal(4, 6, 4)) {
        let t = betti_table(&a, Field::Rational).unwrap();
        let mut chi: BTreeMap<Multidegree, i64> = BTreeMap::new();
        for (i, b, d) in t.multigraded() {
            *chi.entry(b.clone()).or_insert(0) += if i % 2 == 0 { d as i64 } else { -(d as i64) };
        }
        chi.retain(|_, v| *v != 0);
        prop_assert_eq!(chi, numerator(&a));
    }

    #[test]
    fn zero_off_the_lattice(a in common::ideal(4, 5, 3), probe in common::monomial(4, 3)) {
        let n = a.ring().nvars();
        let b = probe.restrict(0..n);
        let lattice = lcm_lattice(&a).unwrap();
        let t = betti_table(&a, Field::Rational).unwrap();
        prop_assert!(t.multigraded().all(|(_, b, _)| lattice.contains(b)));
        let at = betti_at(&a, &b, Field::Rational).unwrap();
        if !lattice.contains(&b) {
            prop_assert!(at.iter().all(|&d| d == 0));
        }
        let direct = upper_koszul(&a, &b).unwrap().reduced_homology(Field::Rational);
        prop_assert_eq!(trim(at), trim(direct));
    }

    #[test]
    fn engines_agree(a in common::ideal(4, 5, 3)) {
        for field in FIELDS {
            let t = betti_table(&a, field).unwrap();
            let k = tor_dimensions(&a, field, None).unwrap();
            prop_assert_eq!(&t.coarse(), k.entries());
            let multi: BTreeMap<(usize, Multidegree), u64> =
                t.multigraded().map(|(i, b, d)| ((i, b.clone()), d)).collect();
            prop_assert_eq!(&multi, k.multigraded());
        }
    }

    #[test]
    fn product_splitting_matches_direct((a, b) in common::disjoint_pair(3, 3, 3)) {
        let p = a.product(&b).unwrap();
        let split = betti_table_with(&p, &BettiOptions::new(Field::Rational)).unwrap();
        let mut opts = BettiOptions::new(Field::Rational);
        opts.split_products = false;
        prop_assert_eq!(split, betti_table_with(&p, &opts).unwrap());
    }
}

#[test]
fn worked_examples_are_characteristic_free() {
    let defs = Definitions::parse(
        "ring R = [a, b, c];
         m = maxideal(R);
         I55 = (a^4, a^3*b, a*b^3, b^4, a^2*b^2*c^4);
         I56 = (a^3, a*b^2, a*c^2, a^2*b*c);
         ring T = [p, q, x1, x2];
         I59 = (p^4, p^3*q, p*q^3, q^4)*(x1, x2)^2 + p^2*q^2*(x1^2, x2^2);
         ring U = [a1, b1, c1, d1, x, y, z, t];
         IA = (a1^2, b1^2, c1^2, d1^2, a1*b1*x, c1*d1*x, a1*c1*y, b1*d1*y, a1*d1*z, b1*c1*z, c1*d1*y*z*t);",
    )
    .unwrap();
    for expr in ["I55", "I55^2", "m*I55", "I56", "m^2*I56", "I59", "I59^2", "IA", "IA^2"] {
        let a = defs.eval(expr).unwrap();
        let q = betti_table(&a, Field::Rational).unwrap();
        let p = betti_table(&a, Field::Prime(32003)).unwrap();
        assert_eq!(q.coarse(), p.coarse(), "{expr}");
        assert!(q.multigraded().eq(p.multigraded()), "{expr}");
    }
}

#[test]
fn torsion_makes_characteristic_matter() {
    // Stanley-Reisner ideal of the six-vertex real projective plane.
    let r = Arc::new(fiberlab_core::Ring::indexed("R", "x", 6).unwrap());
    let faces = [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
        [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
    ];
    let mut gens = Vec::new();
    for mask in 1u32..64 {
        let set: Vec<usize> = (0..6).filter(|v| mask >> v & 1 == 1).collect();
        let is_face = faces.iter().any(|f| set.iter().all(|v| f.contains(v)));
        if !is_face {
            gens.push(Monomial::new((0..6).map(|v| mask >> v & 1)));
        }
    }
    let a = MonomialIdeal::new(&r, gens).unwrap();
    let q = betti_table(&a, Field::Rational).unwrap();
    let p = betti_table(&a, Field::Prime(2)).unwrap();
    assert_ne!(q.coarse(), p.coarse());
}
