use std::sync::Arc;

use fiberlab_core::{Field, Monomial, MonomialIdeal, Ring};
use fiberlab_verify::formulas::{check_fiber_invariants, reg_formula};
use fiberlab_verify::{check_betti_splitting, filtration, Engine, FiberSetup};
use proptest::prelude::*;

/// Monomial of degree `2..=max_deg` in `n` variables.
fn square_monomial(n: usize, max_deg: usize) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..n, 2..=max_deg).prop_map(move |vars| {
        let mut m = Monomial::one(n);
        for v in vars {
            m.set_exponent(v, m.exponent(v) + 1);
        }
        m
    })
}

fn factor(name: &'static str, prefix: &'static str) -> impl Strategy<Value = MonomialIdeal> {
    (1usize..=2).prop_flat_map(move |n| {
        let r = Arc::new(Ring::indexed(name, prefix, n).unwrap());
        proptest::collection::vec(square_monomial(n, 3), 1..=3)
            .prop_map(move |g| MonomialIdeal::new(&r, g).unwrap())
    })
}

fn setup() -> impl Strategy<Value = FiberSetup> {
    (factor("R", "a"), factor("S", "b")).prop_map(|(i, j)| FiberSetup::new(&i, &j).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn filtration_reaches_power(st in setup(), s in 1u32..=3) {
        let f = filtration(&st, s).unwrap();
        prop_assert!(f.reaches_power);
        prop_assert!(f.holds());
    }

    #[test]
    fn fiber_splits(st in setup()) {
        let engine = Engine::new(Field::Rational);
        prop_assert_eq!(st.h.intersect(&st.jt).unwrap(), st.m.product(&st.jt).unwrap());
        let c = check_betti_splitting(&st.f, &st.h, &st.jt, &engine).unwrap();
        prop_assert!(c.mismatches.is_empty());
        prop_assert!(c.injective);
    }

    #[test]
    fn fiber_reg_is_max_of_factors(st in setup()) {
        let engine = Engine::new(Field::Rational);
        let reg = engine.reg(&st.f).unwrap();
        prop_assert_eq!(reg, engine.reg(&st.i).unwrap().max(engine.reg(&st.j).unwrap()));
        let report = check_fiber_invariants(&st, &engine);
        prop_assert!(report.passed(), "{}", report.to_json(false));
    }

    #[test]
    fn power_regs_increase(st in setup()) {
        let engine = Engine::new(Field::Rational);
        let regs: Vec<i64> = (1..=3).map(|s| engine.reg(&st.f.power(s)).unwrap()).collect();
        prop_assert!(regs.windows(2).all(|w| w[0] < w[1]), "{:?}", regs);
    }

    #[test]
    fn power_reg_matches_formula(st in setup(), s in 1u32..=3) {
        let engine = Engine::new(Field::Rational);
        let v = reg_formula(&st, s, &engine).unwrap();
        prop_assert_eq!(v.direct, v.general);
        if v.hypothesis {
            prop_assert_eq!(v.direct, v.equigenerated);
        }
    }

    #[test]
    fn power_depth_is_one(st in setup(), s in 2u32..=3) {
        let engine = Engine::new(Field::Prime(32003));
        prop_assert_eq!(engine.depth(&st.f.power(s)).unwrap(), 1);
    }
}
