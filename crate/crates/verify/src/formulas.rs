//! Regularity, depth and linearity statements about fiber products.

use std::time::Instant;

use fiberlab_core::{MonomialIdeal, Result};
use serde_json::json;

use crate::engine::Engine;
use crate::fiber::{filtration, FiberSetup};
use crate::report::{Provenance, Report};
use crate::splitting::check_betti_splitting;

fn run(claim: &str, f: impl FnOnce(&mut Report) -> Result<()>, mut r: Report) -> Report {
    let started = Instant::now();
    match f(&mut r) {
        Ok(()) => r.settle(started),
        Err(e) => Report::error(claim, &e, started),
    }
}

fn base(claim: &str, setup: &FiberSetup, s: u32, engine: &Engine, provenance: Provenance) -> Report {
    Report::new(claim, provenance)
        .param("I", setup.i.format_gens())
        .param("J", setup.j.format_gens())
        .param("s", s)
        .param("char", engine.field().characteristic())
}

/// `max_{i ∈ [1, s]} reg(ideal_i) + s - i` over the nonzero ideals produced by
/// `term(i)`; `None` if all are zero.
fn max_terms(s: u32, engine: &Engine, term: impl Fn(u32) -> Result<MonomialIdeal>) -> Result<Option<i64>> {
    let mut best = None;
    for i in 1..=s {
        let a = term(i)?;
        if !a.is_zero() {
            let v = engine.reg(&a)? + (s - i) as i64;
            best = best.max(Some(v));
        }
    }
    Ok(best)
}

/// Right-hand sides of the regularity formulas for `reg F^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegFormula {
    pub direct: i64,
    /// Terms `reg(m^{s-i} I^i) + s - i` and the `J` analogues.
    pub general: i64,
    /// Terms `reg I^i + s - i` and the `J` analogues.
    pub equigenerated: i64,
    /// Both nonzero factors are generated in a single degree.
    pub hypothesis: bool,
}

pub fn reg_formula(setup: &FiberSetup, s: u32, engine: &Engine) -> Result<RegFormula> {
    let direct = engine.reg(&setup.f.power(s))?;
    // reg (mn)^s = 2s enters whenever a factor is zero.
    let floor = (setup.i.is_zero() || setup.j.is_zero()).then_some(2 * s as i64);
    let side = |a: &MonomialIdeal, general: bool| -> Result<Option<i64>> {
        let m = MonomialIdeal::maximal(a.ring());
        max_terms(s, engine, |i| {
            if general {
                m.power(s - i).product(&a.power(i))
            } else {
                Ok(a.power(i))
            }
        })
    };
    let general = [side(&setup.i, true)?, side(&setup.j, true)?, floor].into_iter().flatten().max();
    let equigenerated = [side(&setup.i, false)?, side(&setup.j, false)?, floor].into_iter().flatten().max();
    let equi = |a: &MonomialIdeal| -> Result<bool> { Ok(a.is_zero() || a.is_equigenerated()?) };
    Ok(RegFormula {
        direct,
        general: general.expect("a zero factor contributes 2s"),
        equigenerated: equigenerated.expect("a zero factor contributes 2s"),
        hypothesis: equi(&setup.i)? && equi(&setup.j)?,
    })
}

/// `reg F^s` against the general formula, and against the equigenerated
/// formula when its hypothesis holds.
pub fn check_reg_formula(setup: &FiberSetup, s: u32, engine: &Engine) -> Report {
    let r = base("thm-5.1", setup, s, engine, Provenance::Formula);
    run(
        "thm-5.1",
        |r| {
            let v = reg_formula(setup, s, engine)?;
            r.compare("regFs", v.direct, v.general);
            if v.hypothesis {
                r.compare("regFsEquigenerated", v.direct, v.equigenerated);
            }
            Ok(())
        },
        r,
    )
}

/// `reg F^s` against the equigenerated formula regardless of its hypothesis.
pub fn check_reg_equigenerated(setup: &FiberSetup, s: u32, engine: &Engine) -> Report {
    let r = base("cor-5.2", setup, s, engine, Provenance::Formula);
    run(
        "cor-5.2",
        |r| {
            let v = reg_formula(setup, s, engine)?;
            r.computed("hypothesisHolds", v.hypothesis);
            r.compare("regFs", v.direct, v.equigenerated);
            Ok(())
        },
        r,
    )
}

/// Depth and regularity of `F` itself from those of the factors.
pub fn check_fiber_invariants(setup: &FiberSetup, engine: &Engine) -> Report {
    let r = base("prop-3.4", setup, 1, engine, Provenance::Formula);
    run(
        "prop-3.4",
        |r| {
            let inv = engine.invariants(&setup.f)?;
            let mut depth = 2usize;
            let mut depth_quotient = 1usize;
            let mut reg = None;
            for a in [&setup.i, &setup.j] {
                if a.is_zero() {
                    depth_quotient = depth_quotient.min(a.ring().nvars());
                } else {
                    let ia = engine.invariants(a)?;
                    depth = depth.min(ia.depth);
                    depth_quotient = depth_quotient.min(ia.depth_quotient);
                    reg = reg.max(Some(ia.reg));
                }
            }
            r.compare("depthF", inv.depth, depth);
            r.compare("depthQuotient", inv.depth_quotient, depth_quotient);
            r.compare("regF", inv.reg, reg.unwrap_or(2));
            Ok(())
        },
        r,
    )
}

/// `depth F^s = 1` for `s ≥ 2`, or additivity for `mn` when both factors are
/// zero; at `s = 1` the fiber invariants check.
pub fn check_depth_formula(setup: &FiberSetup, s: u32, engine: &Engine) -> Report {
    if s <= 1 {
        return check_fiber_invariants(setup, engine);
    }
    let r = base("thm-6.1", setup, s, engine, Provenance::Literature);
    run(
        "thm-6.1",
        |r| {
            let d = engine.depth(&setup.f.power(s))?;
            if setup.i.is_zero() && setup.j.is_zero() {
                let dm = engine.depth(&MonomialIdeal::maximal(setup.i.ring()).power(s))?;
                let dn = engine.depth(&MonomialIdeal::maximal(setup.j.ring()).power(s))?;
                r.compare("depthFs", d, dm + dn);
            } else {
                r.compare("depthFs", d, 1);
            }
            Ok(())
        },
        r,
    )
}

/// `I^i, J^i` componentwise linear if and only if `F^i` is, for `i = 1..=s`.
pub fn check_componentwise(setup: &FiberSetup, s: u32, engine: &Engine) -> Report {
    let r = base("cor-7.2", setup, s, engine, Provenance::Literature);
    run(
        "cor-7.2",
        |r| {
            let mut factors = Vec::new();
            let mut fiber = Vec::new();
            for i in 1..=s {
                factors.push(
                    engine.componentwise_linear(&setup.i.power(i))?
                        && engine.componentwise_linear(&setup.j.power(i))?,
                );
                fiber.push(engine.componentwise_linear(&setup.f.power(i))?);
            }
            r.computed("factorsLinear", json!(factors));
            r.computed("fiberLinear", json!(fiber));
            r.compare("biconditional", factors == fiber, true);
            Ok(())
        },
        r,
    )
}

/// `F = H + J` is a Betti splitting, with `H ∩ J = mJ`.
pub fn check_fiber_splitting(setup: &FiberSetup, engine: &Engine) -> Report {
    let r = base("thm-3.6", setup, 1, engine, Provenance::Literature);
    run(
        "thm-3.6",
        |r| {
            r.compare("intersection", setup.h.intersect(&setup.jt)? == setup.m.product(&setup.jt)?, true);
            if setup.jt.is_zero() {
                r.computed("splitting", "trivial");
            } else {
                let c = check_betti_splitting(&setup.f, &setup.h, &setup.jt, engine)?;
                r.compare("mismatches", c.mismatches.len(), 0);
                r.compare("injective", c.injective, true);
            }
            Ok(())
        },
        r,
    )
}

/// The filtration `G_0 ⊆ … ⊆ G_s = F^s`: intersection identities and a
/// Betti splitting at every step with a nonzero summand.
pub fn check_filtration(setup: &FiberSetup, s: u32, engine: &Engine) -> Report {
    let r = base("prop-4.2", setup, s, engine, Provenance::Literature);
    run(
        "prop-4.2",
        |r| {
            let fl = filtration(setup, s)?;
            r.compare("reachesPower", fl.reaches_power, true);
            let intersections: Vec<bool> = fl.steps.iter().map(|st| st.intersection_holds).collect();
            r.compare("intersections", json!(intersections), json!(vec![true; s as usize]));
            let mut splits = Vec::new();
            let mut injective = true;
            for st in &fl.steps {
                if st.added.is_zero() {
                    splits.push(json!(null));
                    continue;
                }
                let c = check_betti_splitting(&st.g, &st.previous, &st.added, engine)?;
                injective &= c.injective;
                splits.push(json!(c.mismatches.len()));
            }
            let bad = splits.iter().filter(|v| v.as_u64().is_some_and(|n| n > 0)).count();
            r.computed("splittingMismatches", json!(splits));
            r.compare("failedSplittings", bad, 0);
            r.compare("injective", injective, true);
            Ok(())
        },
        r,
    )
}

/// `reg F^s < reg F^{s+1}` for `s < s_cap`.
pub fn check_reg_increasing_setup(setup: &FiberSetup, s_cap: u32, engine: &Engine) -> Report {
    let r = base("cor-8.1", setup, s_cap, engine, Provenance::Literature);
    run(
        "cor-8.1",
        |r| {
            let regs = (1..=s_cap).map(|s| engine.reg(&setup.f.power(s))).collect::<Result<Vec<_>>>()?;
            r.compare("strictlyIncreasing", regs.windows(2).all(|w| w[0] < w[1]), true);
            r.computed("regs", json!(regs));
            Ok(())
        },
        r,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use fiberlab_core::{Field, Ring};
    use std::sync::Arc;

    fn setup(i: &[&[u32]], ri: &[&str], j: &[&[u32]], rj: &[&str]) -> FiberSetup {
        let r = Arc::new(Ring::new("R", ri.iter().copied()).unwrap());
        let s = Arc::new(Ring::new("S", rj.iter().copied()).unwrap());
        let i = MonomialIdeal::from_exponents(&r, i).unwrap();
        let j = MonomialIdeal::from_exponents(&s, j).unwrap();
        FiberSetup::new(&i, &j).unwrap()
    }

    #[test]
    fn squares_of_single_variables() {
        let st = setup(&[&[2]], &["x"], &[&[2]], &["y"]);
        let e = Engine::new(Field::Rational);
        let v = reg_formula(&st, 2, &e).unwrap();
        assert_eq!((v.direct, v.general, v.equigenerated), (4, 4, 4));
        for s in 1..=3 {
            assert!(check_reg_formula(&st, s, &e).passed());
            assert!(check_depth_formula(&st, s, &e).passed());
            assert!(check_componentwise(&st, s, &e).passed());
            assert!(check_filtration(&st, s, &e).passed());
        }
        assert!(check_fiber_splitting(&st, &e).passed());
        assert!(check_reg_increasing_setup(&st, 3, &e).passed());
    }

    #[test]
    fn zero_factors() {
        let r = Arc::new(Ring::new("R", ["x", "y"]).unwrap());
        let s = Arc::new(Ring::new("S", ["u"]).unwrap());
        let st = FiberSetup::new(&MonomialIdeal::zero(&r), &MonomialIdeal::zero(&s)).unwrap();
        let e = Engine::new(Field::Rational);
        for s in 1..=2 {
            assert!(check_reg_formula(&st, s, &e).passed());
            assert!(check_depth_formula(&st, s, &e).passed());
        }
        assert_eq!(e.depth(&st.f.power(2)).unwrap(), 2);
    }

    #[test]
    fn non_linear_factor() {
        let st = setup(&[&[2, 0], &[0, 2]], &["x", "y"], &[&[2]], &["u"]);
        let e = Engine::new(Field::Rational);
        let r = check_componentwise(&st, 2, &e);
        assert!(r.passed());
        assert_eq!(r.computed["fiberLinear"], json!([false, false]));
    }
}
