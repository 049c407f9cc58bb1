//! The acceptance criteria as runnable report batches.

use std::sync::Arc;
use std::time::Instant;

use fiberlab_core::koszul::tor_dimensions;
use fiberlab_core::{betti_table, Definitions, Field, MonomialIdeal, Result, Ring};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::engine::Engine;
use crate::fiber::FiberSetup;
use crate::formulas::{
    check_componentwise, check_depth_formula, check_fiber_splitting, check_filtration, check_reg_formula,
};
use crate::graphs::{check_reg_increasing, detect_bipartite_join, has_join_brute_force, is_join};
use crate::report::{Provenance, Report};
use crate::samples::{
    componentwise_pairs, equigenerated_pairs, join_graphs, random_graphs, random_ideals, GRAPH_SEED, IDEAL_SEED,
    JOIN_SEED, PAIR_SEED,
};
use crate::scenarios::{run_scenario, APPENDIX_DEFS};
use crate::torlemma::{verify_tor_vanishing_lemma, TorMode};

pub const CRITERIA: u8 = 15;

pub const TITLES: [&str; CRITERIA as usize] = [
    "Koszul baseline",
    "engine agreement",
    "regularity of H^s q^i",
    "appendix ideal identities",
    "appendix regularities",
    "regularity counterexample for the equigenerated formula",
    "strict regularity drop for m^2 I",
    "powers of the two-parameter family",
    "regularity formulas on random pairs",
    "depth formulas on random pairs",
    "Betti splittings of fiber products",
    "Tor-vanishing certificates",
    "componentwise-linear biconditional",
    "edge ideals of joins",
    "determinism across thread counts",
];

#[derive(Debug, Clone)]
pub struct CriterionRun {
    pub id: u8,
    pub reports: Vec<Report>,
}

impl CriterionRun {
    pub fn passed(&self) -> bool {
        !self.reports.is_empty() && self.reports.iter().all(Report::passed)
    }

    pub fn title(&self) -> &'static str {
        TITLES[self.id as usize - 1]
    }

    /// Reports as JSON lines without timings.
    pub fn canonical_json(&self) -> String {
        self.reports.iter().map(|r| format!("{}\n", r.to_json(false))).collect()
    }
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: u8) -> Result<CriterionRun> {
    let reports = match id {
        1 => koszul_baseline()?,
        2 => engine_agreement(),
        3 => scenario_claims("lemma-A5", None, |c| c == "lemma-A5(i)")?,
        4 => {
            let mut r = scenario_claims("lemma-A3", None, |_| true)?;
            r.extend(scenario_claims("lemma-A4", None, |_| true)?);
            r
        }
        5 => scenario_claims("appendix-A1", None, |_| true)?,
        6 => scenario_claims("remark-5.5", None, |_| true)?,
        7 => scenario_claims("remark-5.6", None, |_| true)?,
        8 => scenario_claims("remark-5.9", None, |_| true)?,
        9 => pair_checks(|st, e| (1..=3).map(|s| check_reg_formula(st, s, e)).collect()),
        10 => pair_checks(|st, e| (1..=3).map(|s| check_depth_formula(st, s, e)).collect()),
        11 => pair_checks(|st, e| {
            let mut v = vec![check_fiber_splitting(st, e)];
            v.extend((1..=3).map(|s| check_filtration(st, s, e)));
            v
        }),
        12 => tor_vanishing()?,
        13 => {
            let e = Engine::new(Field::Rational);
            componentwise_pairs(Field::Rational)?
                .par_iter()
                .map(|st| check_componentwise(st, 2, &e))
                .collect()
        }
        14 => edge_ideals()?,
        15 => determinism()?,
        _ => return Err(fiberlab_core::Error::InvalidArgument(format!("no criterion {id}"))),
    };
    Ok(CriterionRun { id, reports })
}

fn scenario_claims(name: &str, field: Option<Field>, keep: impl Fn(&str) -> bool) -> Result<Vec<Report>> {
    Ok(run_scenario(name, field)?.reports.into_iter().filter(|r| keep(&r.claim)).collect())
}

fn koszul_baseline() -> Result<Vec<Report>> {
    let started = Instant::now();
    let r = Arc::new(Ring::new("R", ["x", "y", "z"])?);
    let m = MonomialIdeal::maximal(&r);
    let expected = json!([[0, 1, 3], [1, 2, 3], [2, 3, 1]]);
    let rows = |t: Vec<((usize, u32), u64)>| json!(t.into_iter().map(|((i, j), d)| json!([i, j, d])).collect::<Vec<_>>());
    let mut rep = Report::new("koszul-baseline", Provenance::Formula);
    rep.compare("simplicial", rows(betti_table(&m, Field::Rational)?.coarse().into_iter().collect()), expected.clone());
    rep.compare(
        "koszul",
        rows(tor_dimensions(&m, Field::Rational, None)?.entries().iter().map(|(k, v)| (*k, *v)).collect()),
        expected,
    );
    let e = Engine::new(Field::Rational);
    let regs = (1..=4).map(|s| e.reg(&m.power(s))).collect::<Result<Vec<_>>>()?;
    rep.compare("regPowers", json!(regs), json!([1, 2, 3, 4]));
    Ok(vec![rep.settle(started)])
}

fn engine_agreement() -> Vec<Report> {
    [Field::Rational, Field::Prime(32003)]
        .into_iter()
        .flat_map(|field| {
            random_ideals(IDEAL_SEED, 100, 5, 6, 4, field)
                .into_par_iter()
                .map(move |a| {
                    let started = Instant::now();
                    let run = || -> Result<Report> {
                        let t = betti_table(&a, field)?;
                        let k = tor_dimensions(&a, field, None)?;
                        let mut r = Report::new("engine-agreement", Provenance::Oracle)
                            .param("ideal", a.format_gens())
                            .param("char", field.characteristic());
                        let coarse: Vec<Value> = t.coarse().into_iter().map(|((i, j), d)| json!([i, j, d])).collect();
                        let kcoarse: Vec<Value> = k.entries().iter().map(|((i, j), d)| json!([i, j, d])).collect();
                        r.compare("coarse", json!(coarse), json!(kcoarse));
                        let multi_agree = t.multigraded().count() == k.multigraded().len()
                            && t.multigraded().all(|(i, b, d)| k.multigraded().get(&(i, b.clone())) == Some(&d));
                        r.compare("multigraded", multi_agree, true);
                        Ok(r.settle(started))
                    };
                    run().unwrap_or_else(|e| Report::error("engine-agreement", &e, started))
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn pair_checks(f: impl Fn(&FiberSetup, &Engine) -> Vec<Report> + Sync) -> Vec<Report> {
    let e = Engine::new(Field::Rational);
    equigenerated_pairs(PAIR_SEED, 25, Field::Rational)
        .par_iter()
        .flat_map_iter(|st| f(st, &e))
        .collect()
}

fn tor_vanishing() -> Result<Vec<Report>> {
    let pairs = equigenerated_pairs(PAIR_SEED, 25, Field::Rational);
    let mut out: Vec<Report> = pairs
        .par_iter()
        .flat_map_iter(|st| {
            [&st.i, &st.j]
                .into_iter()
                .flat_map(|a| (1..=3).map(move |s| verify_tor_vanishing_lemma(a, s, TorMode::Both, Field::Rational)))
                .collect::<Vec<_>>()
        })
        .collect();
    let defs = Definitions::parse(APPENDIX_DEFS)?;
    out.push(verify_tor_vanishing_lemma(defs.ideal("I")?, 2, TorMode::Certificate, Field::Rational));
    Ok(out)
}

fn edge_ideals() -> Result<Vec<Report>> {
    let mut out: Vec<Report> = random_graphs(GRAPH_SEED, 20, 7, 0.6)
        .into_iter()
        .map(|g| {
            let started = Instant::now();
            let found = detect_bipartite_join(&g);
            let mut r = Report::new("join-detection", Provenance::Oracle).param("graph", g.format());
            r.compare("hasJoin", found.is_some(), has_join_brute_force(&g));
            if let Some((v1, v2)) = &found {
                r.compare("validJoin", is_join(&g, v1, v2), true);
                r.compare("firstPartHasVertex1", v1.contains(&0), true);
            }
            r.settle(started)
        })
        .collect();
    let e = Engine::new(Field::Rational);
    out.extend(join_graphs(JOIN_SEED, 5).par_iter().map(|g| check_reg_increasing(g, 3, &e)).collect::<Vec<_>>());
    Ok(out)
}

/// Criteria whose output is compared between a one-thread and a
/// many-thread pool.
pub const DETERMINISM_SUBJECTS: [u8; 5] = [1, 6, 9, 13, 14];

fn determinism() -> Result<Vec<Report>> {
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get()).max(2);
    let run_in = |n: usize| -> Result<Vec<String>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| fiberlab_core::Error::InvalidArgument(e.to_string()))?;
        pool.install(|| {
            DETERMINISM_SUBJECTS
                .iter()
                .map(|&id| Ok(run_criterion(id)?.canonical_json()))
                .collect()
        })
    };
    let single = run_in(1)?;
    let many = run_in(threads)?;
    Ok(DETERMINISM_SUBJECTS
        .iter()
        .zip(single.iter().zip(&many))
        .map(|(id, (a, b))| {
            let mut r = Report::new("determinism", Provenance::Oracle)
                .param("criterion", *id)
                .param("threads", threads);
            r.computed("bytes", a.len());
            r.compare("identical", a == b, true);
            r.settle(Instant::now())
        })
        .collect())
}
