mod common;

use fiberlab_core::hilbert::finite_length_reg;
use fiberlab_core::invariants::reg_bound_linear_forms;
use fiberlab_core::koszul::tor_dimensions;
use fiberlab_core::simplicial::{betti_table_with, BettiOptions};
use fiberlab_core::{invariants_of, Definitions, Field, Monomial, MonomialIdeal};
use proptest::prelude::*;

const FIELDS: [Field; 2] = [Field::Rational, Field::Prime(2)];

fn equigenerated(max_vars: usize, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_vars, 1u32..=3).prop_flat_map(move |(n, d)| {
        let gen = proptest::collection::vec(0..n, d as usize).prop_map(move |vars| {
            let mut m = Monomial::one(n);
            for v in vars {
                m.set_exponent(v, m.exponent(v) + 1);
            }
            m
        });
        let r = common::ring(n);
        proptest::collection::vec(gen, 1..=max_gens).prop_map(move |g| MonomialIdeal::new(&r, g).unwrap())
    })
}

fn times_maximal(a: &MonomialIdeal) -> MonomialIdeal {
    MonomialIdeal::maximal(a.ring()).product(a).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn engines_agree_on_reg_and_pdim(a in common::ideal(3, 4, 3)) {
        for field in FIELDS {
            let inv = invariants_of(&a, field).unwrap();
            let tor = tor_dimensions(&a, field, None).unwrap();
            let pdim = tor.entries().keys().map(|&(i, _)| i).max().unwrap();
            let reg = tor.entries().keys().map(|&(i, j)| j as i64 - i as i64).max().unwrap();
            prop_assert_eq!((inv.reg, inv.pdim), (reg, pdim));
            prop_assert_eq!(inv.depth + inv.pdim, a.ring().nvars());
        }
    }

    #[test]
    fn tensor_product_is_additive((a, b) in common::disjoint_pair(2, 3, 3)) {
        let opts = BettiOptions { split_products: false, ..BettiOptions::new(Field::Rational) };
        let ab = a.product(&b).unwrap();
        let table = betti_table_with(&ab, &opts).unwrap();
        let (ia, ib) = (invariants_of(&a, Field::Rational).unwrap(), invariants_of(&b, Field::Rational).unwrap());
        prop_assert_eq!(table.reg().unwrap(), ia.reg + ib.reg);
        prop_assert_eq!(table.pdim().unwrap(), ia.pdim + ib.pdim);
        let n = ab.ring().nvars();
        // Both factors are measured in the tensor ring.
        prop_assert_eq!(n - table.pdim().unwrap() + n, ia.depth + ib.depth);
    }

    #[test]
    fn maximal_times_equigenerated(a in equigenerated(3, 4)) {
        let reg = invariants_of(&times_maximal(&a), Field::Rational).unwrap().reg;
        let ra = invariants_of(&a, Field::Rational).unwrap().reg;
        prop_assert_eq!(reg, ra.max(1 + a.t0().unwrap() as i64));
    }

    #[test]
    fn maximal_times_general(a in common::ideal(3, 4, 3)) {
        let ma = times_maximal(&a);
        let reg = invariants_of(&ma, Field::Rational).unwrap().reg;
        let ra = invariants_of(&a, Field::Rational).unwrap().reg;
        let top = finite_length_reg(&a, &ma).unwrap().unwrap();
        prop_assert_eq!(top, a.t0().unwrap());
        prop_assert!(reg <= ra.max(1 + top as i64));
        prop_assert!(reg > a.indeg().unwrap() as i64);
    }

    #[test]
    fn depth_of_maximal_multiple(a in common::ideal(4, 4, 3)) {
        prop_assert!(invariants_of(&a, Field::Rational).unwrap().depth >= 1);
        prop_assert_eq!(invariants_of(&times_maximal(&a), Field::Rational).unwrap().depth, 1);
    }

    #[test]
    fn linear_forms_bound_dominates(a in common::ideal(3, 4, 3), mask in 0u8..8) {
        let vars: Vec<usize> = (0..a.ring().nvars()).filter(|v| mask & (1 << v) != 0).collect();
        let reg = invariants_of(&a, Field::Rational).unwrap().reg;
        prop_assert!(reg_bound_linear_forms(&a, &vars, Field::Rational).unwrap() >= reg);
    }
}

#[test]
fn maximal_square_times_ideal_beats_bound() {
    let defs = Definitions::parse(include_str!("../../cli/defs/remark56.fl")).unwrap();
    let i = defs.ideal("I").unwrap();
    let m2i = defs.eval("m^2 * I").unwrap();
    let reg = invariants_of(&m2i, Field::Rational).unwrap().reg;
    let reg_i = invariants_of(i, Field::Rational).unwrap().reg;
    let top = finite_length_reg(i, &m2i).unwrap().unwrap() as i64;
    assert_eq!(reg, 5);
    assert_eq!(reg_i.max(2 + i.t0().unwrap() as i64), 6);
    assert_eq!(top, 4);
    assert_eq!(reg_i.max(top + 1), reg);
}
