//! Regularity, projective dimension, depth and linearity tests.

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::ring::Field;
use crate::simplicial::{betti_table, BettiTable};

/// Homological invariants of a nonzero proper monomial ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Invariants {
    pub reg: i64,
    pub pdim: usize,
    pub depth: usize,
    pub t0: u32,
    pub indeg: u32,
    /// Regularity of the quotient ring by the ideal.
    pub reg_quotient: i64,
    /// Depth of the quotient ring by the ideal.
    pub depth_quotient: usize,
    pub field: Field,
}

fn check_proper(a: &MonomialIdeal) -> Result<()> {
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if a.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(())
}

pub fn invariants_of(a: &MonomialIdeal, field: Field) -> Result<Invariants> {
    check_proper(a)?;
    invariants_from_table(a, &betti_table(a, field)?)
}

/// Invariants read off an already computed Betti table of `a`.
pub fn invariants_from_table(a: &MonomialIdeal, table: &BettiTable) -> Result<Invariants> {
    check_proper(a)?;
    let reg = table.reg().ok_or(Error::ZeroIdeal)?;
    let pdim = table.pdim().ok_or(Error::ZeroIdeal)?;
    let n = a.ring().nvars();
    let depth = n - pdim;
    Ok(Invariants {
        reg,
        pdim,
        depth,
        t0: a.t0()?,
        indeg: a.indeg()?,
        reg_quotient: reg - 1,
        depth_quotient: depth - 1,
        field: table.field(),
    })
}

pub fn regularity(a: &MonomialIdeal, field: Field) -> Result<i64> {
    Ok(invariants_of(a, field)?.reg)
}

pub fn depth(a: &MonomialIdeal, field: Field) -> Result<usize> {
    Ok(invariants_of(a, field)?.depth)
}

/// Generated in a single degree `d` with regularity `d`.
pub fn has_linear_resolution(a: &MonomialIdeal, field: Field) -> Result<bool> {
    check_proper(a)?;
    if !a.is_equigenerated()? {
        return Ok(false);
    }
    Ok(regularity(a, field)? == a.t0()? as i64)
}

/// Every degree-`d` component has a linear resolution; degrees from the
/// initial degree up to the regularity are tested.
pub fn is_componentwise_linear(a: &MonomialIdeal, field: Field) -> Result<bool> {
    let inv = invariants_of(a, field)?;
    for d in inv.indeg..=inv.reg as u32 {
        if !has_linear_resolution(&a.component(d)?, field)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Upper bound for `reg a` from `reg M ≤ max{reg (M, x), reg (M : x) + 1}`
/// applied to each variable of `vars` in turn. Branches where the colon is
/// the unit ideal are dropped: there `x ∈ M`, so `(M, x) = M`.
pub fn reg_bound_linear_forms(a: &MonomialIdeal, vars: &[usize], field: Field) -> Result<i64> {
    check_proper(a)?;
    let n = a.ring().nvars();
    let mut seen = vec![false; n];
    for &v in vars {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidArgument(format!("bad or repeated variable index {v}")));
        }
    }
    Ok(bound_terms(a, vars, field)?.into_iter().map(|t| t.value).max().expect("at least one term"))
}

/// One term of the expanded bound: `reg((a + x_added) : Π x_colon) + |colon|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundTerm {
    pub added: Vec<usize>,
    pub colon: Vec<usize>,
    pub value: i64,
}

/// All surviving terms of the bound, in branch order (add before colon).
pub fn bound_terms(a: &MonomialIdeal, vars: &[usize], field: Field) -> Result<Vec<BoundTerm>> {
    fn walk(
        m: &MonomialIdeal,
        rest: &[usize],
        added: &mut Vec<usize>,
        colon: &mut Vec<usize>,
        field: Field,
        out: &mut Vec<BoundTerm>,
    ) -> Result<()> {
        let Some((&x, tail)) = rest.split_first() else {
            out.push(BoundTerm {
                added: added.clone(),
                colon: colon.clone(),
                value: regularity(m, field)? + colon.len() as i64,
            });
            return Ok(());
        };
        let var = MonomialIdeal::variables(m.ring(), &[x]);
        added.push(x);
        walk(&m.sum(&var)?, tail, added, colon, field, out)?;
        added.pop();
        let c = m.colon(&var)?;
        if !c.is_unit() {
            colon.push(x);
            walk(&c, tail, added, colon, field, out)?;
            colon.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(a, vars, &mut Vec::new(), &mut Vec::new(), field, &mut out)?;
    Ok(out)
}

/// Regularities of `a^s` for `s = 1..=s_cap` and the least exponent from
/// which they follow a single line. A candidate only: nothing beyond
/// `s_cap` is examined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RstabCandidate {
    pub regs: Vec<i64>,
    pub candidate: usize,
    pub slope: i64,
    pub intercept: i64,
    pub certified: bool,
}

pub fn rstab_search(a: &MonomialIdeal, s_cap: u32, field: Field) -> Result<RstabCandidate> {
    if s_cap < 2 {
        return Err(Error::InvalidArgument("rstab search needs s_cap >= 2".into()));
    }
    let regs = (1..=s_cap)
        .map(|s| regularity(&a.power(s), field))
        .collect::<Result<Vec<_>>>()?;
    Ok(rstab_from_regs(regs))
}

/// Candidate stabilization index for a given regularity sequence
/// (`regs[k]` is the value at exponent `k + 1`).
pub fn rstab_from_regs(regs: Vec<i64>) -> RstabCandidate {
    let last = regs.len();
    let slope = regs[last - 1] - regs[last - 2];
    let mut start = last - 1;
    while start > 1 && regs[start - 1] - regs[start - 2] == slope {
        start -= 1;
    }
    // `start` is the 1-based exponent where the linear tail begins.
    let intercept = regs[start - 1] - slope * start as i64;
    RstabCandidate {
        regs,
        candidate: start,
        slope,
        intercept,
        certified: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use std::sync::Arc;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Arc::new(Ring::new("R", vars.iter().copied()).unwrap())
    }

    #[test]
    fn maximal_ideal() {
        let r = ring(&["x", "y", "z"]);
        let inv = invariants_of(&MonomialIdeal::maximal(&r), Field::Rational).unwrap();
        assert_eq!((inv.reg, inv.pdim, inv.depth, inv.depth_quotient), (1, 2, 1, 0));
        assert!(matches!(invariants_of(&MonomialIdeal::unit(&r), Field::Rational), Err(Error::UnitIdeal)));
        assert!(matches!(invariants_of(&MonomialIdeal::zero(&r), Field::Rational), Err(Error::ZeroIdeal)));
    }

    #[test]
    fn linearity() {
        let r = ring(&["x", "y"]);
        let m = MonomialIdeal::maximal(&r);
        for s in 1..4 {
            assert!(has_linear_resolution(&m.power(s), Field::Rational).unwrap());
            assert!(is_componentwise_linear(&m.power(s), Field::Rational).unwrap());
        }
        let ci = MonomialIdeal::from_exponents(&r, &[&[2, 0], &[0, 2]]).unwrap();
        assert!(!has_linear_resolution(&ci, Field::Rational).unwrap());
        assert!(!is_componentwise_linear(&ci, Field::Rational).unwrap());
        let st = MonomialIdeal::from_exponents(&r, &[&[2, 0], &[1, 1]]).unwrap();
        assert!(is_componentwise_linear(&st, Field::Rational).unwrap());
    }

    #[test]
    fn linear_forms_bound() {
        let r = ring(&["x", "y"]);
        let a = MonomialIdeal::from_exponents(&r, &[&[2, 0], &[1, 1]]).unwrap();
        assert_eq!(reg_bound_linear_forms(&a, &[0], Field::Rational).unwrap(), 2);
        assert!(reg_bound_linear_forms(&a, &[0, 0], Field::Rational).is_err());
    }

    #[test]
    fn rstab() {
        let r = ring(&["x", "y"]);
        let c = rstab_search(&MonomialIdeal::maximal(&r).power(2), 3, Field::Rational).unwrap();
        assert_eq!((c.candidate, c.slope, c.intercept, c.certified), (1, 2, 0, false));
        let c = rstab_from_regs(vec![7, 12, 18]);
        assert_eq!((c.candidate, c.slope, c.intercept), (2, 6, 0));
        let c = rstab_from_regs(vec![7, 8, 9, 11]);
        assert_eq!((c.candidate, c.slope, c.intercept), (3, 2, 3));
    }
}
