//! Scripted checks of worked examples, run as named scenarios.

use std::sync::Arc;
use std::time::Instant;

use fiberlab_core::hilbert::finite_length_reg;
use fiberlab_core::invariants::reg_bound_linear_forms;
use fiberlab_core::{Definitions, Error, Field, MonomialIdeal, Result, Ring};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::engine::Engine;
use crate::fiber::FiberSetup;
use crate::formulas::{check_filtration, check_fiber_splitting, reg_formula};
use crate::report::{Provenance, Report, Verdict};
use crate::samples::{equigenerated_pairs, random_ideals, PAIR_SEED};

pub const SCENARIOS: &[&str] = &[
    "appendix-A1",
    "lemma-A3",
    "lemma-A4",
    "lemma-A5",
    "remark-5.5",
    "remark-5.6",
    "remark-5.9",
    "lemma-5.4",
    "thm-3.6-splitting",
];

/// Ideals of the eight-variable example.
pub const APPENDIX_DEFS: &str = "\
ring R = [a, b, c, d, x, y, z, t];
m = maxideal(R);
q = (a, b, c, d);
H = (a^2, b^2, c^2, d^2);
I = (a^2, b^2, c^2, d^2, a*b*x, c*d*x, a*c*y, b*d*y, a*d*z, b*c*z, c*d*y*z*t);
K = (a^2, b^2, c^2, d^2, a*b*x, c*d*x);
L = (a^2, b^2, c^2, d^2, a*b, c*d);
V1 = H^2 + H*(a, b)*(c, d) + a*b*(c^2, d^2) + (a^2, b^2)*c*d;
V2 = H^2 + H*(a, c)*(b, d) + a*c*(b^2, d^2) + (a^2, c^2)*b*d;
";

/// Reports of one scenario in declaration order.
#[derive(Debug, Clone)]
pub struct ScenarioRun {
    pub name: String,
    pub field: Field,
    pub reports: Vec<Report>,
}

impl ScenarioRun {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(Report::passed)
    }

    /// One report counting passing sub-checks.
    pub fn aggregate(&self) -> Report {
        let mut r = Report::new(self.name.clone(), Provenance::Literature)
            .param("char", self.field.characteristic());
        let passed = self.reports.iter().filter(|r| r.passed()).count();
        r.compare("passed", passed, self.reports.len());
        r.computed("errors", self.reports.iter().filter(|r| r.verdict == Verdict::Error).count());
        r.verdict = if passed == self.reports.len() { Verdict::Pass } else { Verdict::Fail };
        r.elapsed_ms = self.reports.iter().map(|r| r.elapsed_ms).sum();
        r
    }
}

type Check = Box<dyn Fn() -> Report + Send + Sync>;

fn check(claim: &str, provenance: Provenance, f: impl Fn(&mut Report) -> Result<()> + Send + Sync + 'static) -> Check {
    let claim = claim.to_string();
    Box::new(move || {
        let started = Instant::now();
        let mut r = Report::new(claim.clone(), provenance);
        match f(&mut r) {
            Ok(()) => r.settle(started),
            Err(e) => Report::error(claim.clone(), &e, started),
        }
    })
}

fn run_checks(checks: Vec<Check>) -> Vec<Report> {
    checks.par_iter().map(|c| c()).collect()
}

/// Splits `remark-5.9(8)` into name and parameter.
fn parse_name(name: &str) -> Result<(&str, Option<u32>)> {
    let bad = || Error::InvalidArgument(format!("unknown scenario {name:?}"));
    let (base, arg) = match name.split_once('(') {
        Some((b, rest)) => {
            let n = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            (b, Some(n))
        }
        None => (name, None),
    };
    if !SCENARIOS.contains(&base) || (arg.is_some() && base != "remark-5.9") {
        return Err(bad());
    }
    Ok((base, arg))
}

/// Field used when none is requested.
pub fn default_field(name: &str) -> Field {
    if name == "appendix-A1" {
        Field::Prime(32003)
    } else {
        Field::Rational
    }
}

/// Runs a named scenario; `field` overrides the scenario default.
pub fn run_scenario(name: &str, field: Option<Field>) -> Result<ScenarioRun> {
    let (base, arg) = parse_name(name)?;
    let field = field.unwrap_or_else(|| default_field(base));
    let engine = Arc::new(Engine::new(field));
    let checks = match base {
        "appendix-A1" => appendix_a1(&engine)?,
        "lemma-A3" => lemma_a3()?,
        "lemma-A4" => lemma_a4()?,
        "lemma-A5" => lemma_a5(&engine)?,
        "remark-5.5" => remark_5_5(&engine)?,
        "remark-5.6" => remark_5_6(&engine)?,
        "remark-5.9" => match arg {
            Some(n) => remark_5_9(&engine, n)?,
            None => {
                let mut c = remark_5_9(&engine, 2)?;
                c.extend(remark_5_9(&engine, 8)?);
                c
            }
        },
        "lemma-5.4" => lemma_5_4(&engine)?,
        "thm-3.6-splitting" => thm_3_6(&engine)?,
        _ => unreachable!("checked by parse_name"),
    };
    Ok(ScenarioRun {
        name: name.to_string(),
        field,
        reports: run_checks(checks),
    })
}

fn appendix() -> Result<Arc<Definitions>> {
    Ok(Arc::new(Definitions::parse(APPENDIX_DEFS)?))
}

/// Equality of two expressions over the appendix definitions.
fn identity(defs: &Arc<Definitions>, claim: &str, s: Option<u32>, lhs: String, rhs: String) -> Check {
    let defs = defs.clone();
    check(claim, Provenance::Literature, move |r| {
        let (a, b) = (defs.eval(&lhs)?, defs.eval(&rhs)?);
        r.params.insert("lhs".into(), Value::from(lhs.clone()));
        r.params.insert("rhs".into(), Value::from(rhs.clone()));
        if let Some(s) = s {
            r.params.insert("s".into(), Value::from(s));
        }
        r.computed("lhsGens", a.ngens());
        r.compare("equal", a == b, true);
        Ok(())
    })
}

/// Containment `small ⊆ big`.
fn containment(defs: &Arc<Definitions>, claim: &str, s: Option<u32>, small: String, big: String) -> Check {
    let defs = defs.clone();
    check(claim, Provenance::Literature, move |r| {
        let (a, b) = (defs.eval(&small)?, defs.eval(&big)?);
        r.params.insert("sub".into(), Value::from(small.clone()));
        r.params.insert("sup".into(), Value::from(big.clone()));
        if let Some(s) = s {
            r.params.insert("s".into(), Value::from(s));
        }
        r.compare("contained", b.contains(&a)?, true);
        Ok(())
    })
}

fn reg_check(engine: &Arc<Engine>, claim: &str, key: &str, ideal: MonomialIdeal, expected: i64, provenance: Provenance) -> Check {
    let engine = engine.clone();
    let key = key.to_string();
    check(claim, provenance, move |r| {
        r.params.insert("char".into(), Value::from(engine.field().characteristic()));
        r.compare(&key, engine.reg(&ideal)?, expected);
        Ok(())
    })
}

fn lemma_a3() -> Result<Vec<Check>> {
    let d = appendix()?;
    let mut c = vec![
        identity(&d, "lemma-A3(i)", None, "I^4".into(), "H*I^3".into()),
        identity(&d, "lemma-A3(ii)", None, "I^3 : (x*y*z)".into(), "q^6".into()),
        identity(&d, "lemma-A3(iii)", None, "K^3 : x^2".into(), "L^3".into()),
        identity(&d, "lemma-A3(iv)", None, "K^3 : x + x".into(), "H^2*L + x".into()),
    ];
    for s in 1..=3 {
        c.push(containment(&d, "lemma-A3(v)", Some(s), format!("q^{}", 2 * s + 1), format!("L^{s}")));
    }
    Ok(c)
}

fn w(s: u32) -> String {
    format!("(H^{}*a*b*c*d*(y, z) + t*c*d*(c^2, d^2)^{})", s + 1, s + 2)
}

fn lemma_a4() -> Result<Vec<Check>> {
    let d = appendix()?;
    let mut c = vec![
        containment(&d, "lemma-A4(i)", None, "q^5".into(), "V1".into()),
        identity(&d, "lemma-A4(ii)", None, "(I^3 + x) : (y*z)".into(), format!("x + H*V1 + {}", w(0))),
        identity(&d, "lemma-A4(iii)", None, "(I^3 + y) : (x*z)".into(), "y + H*V2 + H*a*b*c*d*(x, z)".into()),
    ];
    for s in 0..=3 {
        let hs = |k: u32| if k == 0 { "1".to_string() } else { format!("H^{k}") };
        let big = format!("H^{}*a*b*c*d*(y, z)", s + 1);
        let tail = format!("t*c*d*(c^2, d^2)^{}", s + 2);
        let ws = w(s);
        c.push(identity(
            &d,
            "lemma-A4(iv)",
            Some(s),
            format!("({}*I^3 + x) : (y*z)", hs(s)),
            format!("x + H^{}*V1 + {ws}", s + 1),
        ));
        c.push(identity(&d, "lemma-A4(v)", Some(s), format!("H^{}*V1 & {big}", s + 1), format!("q*{big}")));
        c.push(identity(&d, "lemma-A4(vi)", Some(s), format!("H^{}*V1 & {ws}", s + 1), format!("q*{ws}")));
        c.push(identity(
            &d,
            "lemma-A4(vii)",
            Some(s),
            format!("{big} & {tail}"),
            format!("a*b*c*d*(y, z)*t*(c^2, d^2)^{}", s + 2),
        ));
        c.push(containment(&d, "lemma-A4(vii)", Some(s), format!("{big} & {tail}"), format!("q*{ws}")));
        c.push(identity(&d, "lemma-A4(vii)", Some(s), format!("{big} & q*{ws}"), format!("q*{big}")));
        c.push(identity(&d, "lemma-A4(vii)", Some(s), format!("{tail} & q*{ws}"), format!("q*{tail}")));
    }
    Ok(c)
}

fn lemma_a5(engine: &Arc<Engine>) -> Result<Vec<Check>> {
    let d = appendix()?;
    let mut c = Vec::new();
    for s in 1..=2u32 {
        for i in 0..=5u32 {
            let ideal = d.eval(&format!("H^{s}*q^{i}"))?;
            let expected = (2 * s + 3).max(2 * s + i) as i64;
            let e = engine.clone();
            c.push(check("lemma-A5(i)", Provenance::Literature, move |r| {
                r.params.insert("s".into(), json!(s));
                r.params.insert("i".into(), json!(i));
                r.compare("reg", e.reg(&ideal)?, expected);
                Ok(())
            }));
        }
        let bounds = (0..=2u32)
            .map(|i| (format!("H^{s}*L^{}", i + 1), (2 * s + 2 * i + 3) as i64, "lemma-A5(ii)", Some(i)))
            .chain([(format!("H^{s}*V1"), (2 * s + 5) as i64, "lemma-A5(iii)", None)]);
        for (expr, bound, claim, i) in bounds {
            let ideal = d.eval(&expr)?;
            let e = engine.clone();
            c.push(check(claim, Provenance::Literature, move |r| {
                r.params.insert("s".into(), json!(s));
                if let Some(i) = i {
                    r.params.insert("i".into(), json!(i));
                }
                let reg = e.reg(&ideal)?;
                r.computed("reg", reg);
                r.compare("withinBound", reg <= bound, true);
                Ok(())
            }));
        }
    }
    Ok(c)
}

fn appendix_a1(engine: &Arc<Engine>) -> Result<Vec<Check>> {
    let d = appendix()?;
    let i = d.ideal("I")?.clone();
    let m = d.ideal("m")?.clone();
    let mut c = vec![reg_check(engine, "thm-A1", "regI3", i.power(3), 9, Provenance::Literature)];
    for s in 0..=2u32 {
        let e = engine.clone();
        let ideal = m.power(s).product(&i.power(2))?;
        let next = m.power(s + 1).product(&i.power(2))?;
        let f = fiberlab_core::parse_monomial(i.ring(), &format!("a*b*c*d*x*y*z*t^{}", s + 1))?;
        c.push(check("thm-A1", Provenance::Literature, move |r| {
            r.params.insert("s".into(), json!(s));
            r.params.insert("char".into(), json!(e.field().characteristic()));
            r.compare("witness", ideal.member(&f) && !next.member(&f), true);
            r.compare("regMsI2", e.reg(&ideal)?, s as i64 + 8);
            Ok(())
        }));
    }
    // Characteristic agreement on I^2.
    let e = engine.clone();
    let i2 = i.power(2);
    c.push(check("thm-A1", Provenance::Oracle, move |r| {
        r.params.insert("s".into(), json!(0));
        let rational = Engine::new(Field::Rational).reg(&i2)?;
        r.computed("regOverQ", rational);
        r.compare("charAgreement", rational == e.reg(&i2)?, true);
        Ok(())
    }));
    let i3 = i.power(3);
    let f1 = fiberlab_core::parse_monomial(i.ring(), "c^5*d*y*z*t")?;
    let mi3 = m.product(&i3)?;
    let vars: Vec<usize> = ["x", "y", "z"].iter().map(|v| i.ring().var_index(v).expect("declared")).collect();
    let field = engine.field();
    c.push(check("lemma-A2", Provenance::Literature, move |r| {
        r.params.insert("s".into(), json!(0));
        r.compare("witness", i3.member(&f1) && !mi3.member(&f1), true);
        r.compare("eightTermBound", reg_bound_linear_forms(&i3, &vars, field)?, 9);
        Ok(())
    }));
    Ok(c)
}

fn ring(name: &str, vars: &[&str]) -> Result<Arc<Ring>> {
    Ok(Arc::new(Ring::new(name, vars.iter().copied())?))
}

/// The pair of the regularity counterexample for the equigenerated formula.
pub fn remark_5_5_setup() -> Result<FiberSetup> {
    let r = ring("R", &["a", "b", "c"])?;
    let s = ring("S", &["x"])?;
    let i = MonomialIdeal::from_exponents(&r, &[&[4, 0, 0], &[3, 1, 0], &[1, 3, 0], &[0, 4, 0], &[2, 2, 4]])?;
    let j = MonomialIdeal::from_exponents(&s, &[&[4]])?;
    FiberSetup::new(&i, &j)
}

fn remark_5_5(engine: &Arc<Engine>) -> Result<Vec<Check>> {
    let st = remark_5_5_setup()?;
    let m = MonomialIdeal::maximal(st.i.ring());
    let mut c = vec![
        reg_check(engine, "remark-5.5", "regI", st.i.clone(), 8, Provenance::Literature),
        reg_check(engine, "remark-5.5", "regI2", st.i.power(2), 8, Provenance::Literature),
        reg_check(engine, "remark-5.5", "regMI", m.product(&st.i)?, 9, Provenance::Literature),
    ];
    let gens = st.f.ngens();
    c.push(check("remark-5.5", Provenance::Literature, move |r| {
        r.compare("fiberGens", gens, 9);
        Ok(())
    }));
    let e = engine.clone();
    c.push(check("remark-5.5", Provenance::Literature, move |r| {
        let v = reg_formula(&st, 2, &e)?;
        r.params.insert("s".into(), json!(2));
        r.compare("regF2", v.direct, 10);
        r.compare("generalFormula", v.general, 10);
        r.compare("equigeneratedFormula", v.equigenerated, 9);
        r.compare("equigeneratedFormulaFails", v.direct != v.equigenerated, true);
        Ok(())
    }));
    Ok(c)
}

fn remark_5_6(engine: &Arc<Engine>) -> Result<Vec<Check>> {
    let r = ring("R", &["a", "b", "c"])?;
    let i = MonomialIdeal::from_exponents(&r, &[&[3, 0, 0], &[1, 2, 0], &[1, 0, 2], &[2, 1, 1]])?;
    let m2i = MonomialIdeal::maximal(&r).power(2).product(&i)?;
    let e = engine.clone();
    Ok(vec![check("remark-5.6", Provenance::Literature, move |r| {
        let reg = e.reg(&m2i)?;
        let other = e.reg(&i)?.max(2 + i.t0()? as i64);
        r.compare("regM2I", reg, 5);
        r.compare("maxRegT0", other, 6);
        r.compare("strictlyBelow", reg < other, true);
        Ok(())
    })])
}

/// `I = (a^4, a^3 b, a b^3, b^4)(x)^2 + a^2 b^2 (x_i^2)` over `k[a, b, x1..xn]`.
pub fn remark_5_9_ideal(n: u32) -> Result<MonomialIdeal> {
    let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let defs = Definitions::parse(&format!(
        "ring R = [a, b, {vars}];\nX = ({vars});\nI = (a^4, a^3*b, a*b^3, b^4)*X^2 + a^2*b^2*({squares});\n",
        vars = xs.join(", "),
        squares = xs.iter().map(|x| format!("{x}^2")).collect::<Vec<_>>().join(", ")
    ))?;
    Ok(defs.ideal("I")?.clone())
}

fn remark_5_9(engine: &Arc<Engine>, n: u32) -> Result<Vec<Check>> {
    if n == 0 {
        return Err(Error::InvalidArgument("remark-5.9 needs n >= 1".into()));
    }
    let i = remark_5_9_ideal(n)?;
    let r = i.ring().clone();
    let claim = format!("remark-5.9({n})");
    let mut c = vec![
        reg_check(engine, &claim, "regI", i.clone(), n as i64 + 5, Provenance::Literature),
        reg_check(engine, &claim, "regI2", i.power(2), 12, Provenance::Literature),
    ];
    // (a,b)^{4s} (x)^{2s}
    let ab = MonomialIdeal::variables(&r, &[0, 1]);
    let x = MonomialIdeal::variables(&r, &(2..2 + n as usize).collect::<Vec<_>>());
    let s_max = if n <= 4 { 3 } else { 2 };
    for s in 2..=s_max {
        let power = i.power(s);
        let expected = ab.power(4 * s).product(&x.power(2 * s))?;
        c.push(check(&claim, Provenance::Literature, move |r| {
            r.params.insert("s".into(), json!(s));
            r.compare("powerFactors", power == expected, true);
            Ok(())
        }));
    }
    if s_max >= 3 {
        c.push(reg_check(engine, &claim, "regI3", i.power(3), 18, Provenance::Literature));
    }
    if n >= 8 {
        let (e, i) = (engine.clone(), i.clone());
        c.push(check(&claim, Provenance::Literature, move |r| {
            r.compare("regDrops", e.reg(&i)? > e.reg(&i.power(2))?, true);
            Ok(())
        }));
    }
    if n <= 3 {
        let s_ring = ring("S", &["y"])?;
        let j = MonomialIdeal::from_exponents(&s_ring, &[&[6]])?;
        let st = Arc::new(FiberSetup::new(&i, &j)?);
        for s in 1..=3u32 {
            let (e, st) = (engine.clone(), st.clone());
            let expected = (n as i64 + 4 + s as i64).max(6 * s as i64);
            c.push(check(&claim, Provenance::Literature, move |r| {
                r.params.insert("s".into(), json!(s));
                let v = reg_formula(&st, s, &e)?;
                r.compare("regFs", v.direct, expected);
                r.compare("generalFormula", v.general, expected);
                Ok(())
            }));
        }
    }
    Ok(c)
}

fn lemma_5_4(engine: &Arc<Engine>) -> Result<Vec<Check>> {
    let r = ring("R", &["a", "b", "c"])?;
    let mut ideals = vec![
        MonomialIdeal::from_exponents(&r, &[&[3, 0, 0], &[1, 2, 0], &[1, 0, 2], &[2, 1, 1]])?,
        MonomialIdeal::from_exponents(&r, &[&[2, 0, 0], &[0, 2, 0]])?,
        remark_5_5_setup()?.i,
    ];
    ideals.extend(random_ideals(0x5eed_0005, 5, 3, 4, 3, engine.field()));
    let mut c = Vec::new();
    for ideal in ideals {
        for i in 1..=3u32 {
            let (e, a) = (engine.clone(), ideal.clone());
            c.push(check("lemma-5.4", Provenance::Formula, move |r| {
                r.params.insert("M".into(), json!(a.format_gens()));
                r.params.insert("i".into(), json!(i));
                let mi = MonomialIdeal::maximal(a.ring()).power(i).product(&a)?;
                let reg_m = e.reg(&a)?;
                let direct = e.reg(&mi)?;
                let quotient = finite_length_reg(&a, &mi)?.expect("m^i M is strictly smaller") as i64;
                r.compare("regMiM", direct, reg_m.max(quotient + 1));
                if a.is_equigenerated()? {
                    let t0 = a.t0()? as i64;
                    r.compare("regMiMEquigenerated", direct, reg_m.max(i as i64 + t0));
                    if i as i64 >= reg_m - t0 {
                        r.compare("linear", e.linear(&mi)?, true);
                    }
                }
                Ok(())
            }));
        }
    }
    Ok(c)
}

fn thm_3_6(engine: &Arc<Engine>) -> Result<Vec<Check>> {
    let mut setups = vec![remark_5_5_setup()?];
    setups.extend(equigenerated_pairs(PAIR_SEED, 5, engine.field()));
    let mut c: Vec<Check> = Vec::new();
    for st in setups {
        let st = Arc::new(st);
        let (e, s1) = (engine.clone(), st.clone());
        c.push(Box::new(move || check_fiber_splitting(&s1, &e)));
        let e = engine.clone();
        c.push(Box::new(move || check_filtration(&st, 2, &e)));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(parse_name("remark-5.9(8)").unwrap(), ("remark-5.9", Some(8)));
        assert_eq!(parse_name("lemma-A3").unwrap(), ("lemma-A3", None));
        assert!(parse_name("lemma-A3(2)").is_err());
        assert!(parse_name("nope").is_err());
        assert_eq!(default_field("appendix-A1"), Field::Prime(32003));
    }

    #[test]
    fn small_scenarios() {
        for name in ["remark-5.6", "lemma-A3"] {
            let run = run_scenario(name, None).unwrap();
            assert!(run.passed(), "{:?}", run.reports);
            assert!(run.aggregate().passed());
        }
    }
}
