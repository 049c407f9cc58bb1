//! Betti splittings `P = A + B`.

use std::collections::BTreeSet;
use std::time::Instant;

use fiberlab_core::{Error, MonomialIdeal, Multidegree, Result};
use serde_json::json;

use crate::engine::Engine;
use crate::report::{Provenance, Report};

/// Outcome of comparing `β(P)` with `β(A) + β(B) + β_{i-1}(A ∩ B)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingCheck {
    /// Multidegrees `(i, b)` where the equality fails.
    pub mismatches: Vec<(usize, Multidegree)>,
    /// Coarse `β_{i,j}(A) ≤ β_{i,j}(P)` and the same for `B`.
    pub injective: bool,
    pub positions: usize,
}

impl SplittingCheck {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && self.injective
    }
}

pub fn check_betti_splitting(
    p: &MonomialIdeal,
    a: &MonomialIdeal,
    b: &MonomialIdeal,
    engine: &Engine,
) -> Result<SplittingCheck> {
    if &a.sum(b)? != p {
        return Err(Error::InvalidArgument("the ideal is not the sum of the two parts".into()));
    }
    let c = a.intersect(b)?;
    let (tp, ta, tb, tc) = (engine.table(p)?, engine.table(a)?, engine.table(b)?, engine.table(&c)?);
    let mut keys: BTreeSet<(usize, Multidegree)> = BTreeSet::new();
    for t in [&tp, &ta, &tb] {
        keys.extend(t.entries().into_iter().map(|(i, b, _)| (i, b)));
    }
    keys.extend(tc.entries().into_iter().map(|(i, b, _)| (i + 1, b)));
    let mismatches: Vec<_> = keys
        .iter()
        .filter(|(i, deg)| {
            let shifted = if *i == 0 { 0 } else { tc.get(i - 1, deg) };
            tp.get(*i, deg) != ta.get(*i, deg) + tb.get(*i, deg) + shifted
        })
        .cloned()
        .collect();
    let coarse_p = tp.coarse();
    let injective = [ta.coarse(), tb.coarse()]
        .iter()
        .all(|t| t.iter().all(|(k, v)| coarse_p.get(k).copied().unwrap_or(0) >= *v));
    Ok(SplittingCheck {
        mismatches,
        injective,
        positions: keys.len(),
    })
}

/// Report form of [`check_betti_splitting`].
pub fn verify_betti_splitting(
    claim: &str,
    p: &MonomialIdeal,
    a: &MonomialIdeal,
    b: &MonomialIdeal,
    engine: &Engine,
) -> Report {
    let started = Instant::now();
    match check_betti_splitting(p, a, b, engine) {
        Ok(c) => {
            let mut r = Report::new(claim, Provenance::Literature)
                .param("P", p.format_gens())
                .param("A", a.format_gens())
                .param("B", b.format_gens());
            r.computed("positions", c.positions);
            r.compare("mismatches", json!(c.mismatches.len()), 0);
            r.compare("injective", c.injective, true);
            r.settle(started)
        }
        Err(e) => Report::error(claim, &e, started),
    }
}
