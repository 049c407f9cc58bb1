//! Graded dimension counts of monomial ideals.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ideal::{minimal_generators, MonomialIdeal};
use crate::monomial::{count_monomials, monomials_of_degree, Monomial};

/// Above this many generators inclusion–exclusion gives way to the
/// variable-splitting recursion.
const INCLUSION_EXCLUSION_MAX_GENS: usize = 16;

/// A single value of the Hilbert function of an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSlice {
    pub degree: u32,
    pub dimension: u128,
}

/// Number of degree-`d` monomials lying in `a`.
pub fn hilbert_function(a: &MonomialIdeal, d: u32) -> Result<u128> {
    check_degree(d, &Caps::global())?;
    if a.ngens() <= INCLUSION_EXCLUSION_MAX_GENS {
        Ok(hilbert_inclusion_exclusion(a, d))
    } else {
        Ok(hilbert_vector(a, d)?[d as usize])
    }
}

/// Hilbert function values for degrees `0..=dmax`.
pub fn hilbert_vector(a: &MonomialIdeal, dmax: u32) -> Result<Vec<u128>> {
    check_degree(dmax, &Caps::global())?;
    let n = a.ring().nvars();
    let outside = standard_counts(n, a.gens().to_vec(), dmax as usize);
    Ok((0..=dmax)
        .zip(outside)
        .map(|(d, s)| count_monomials(n, d) - s)
        .collect())
}

pub fn hilbert_slice(a: &MonomialIdeal, d: u32) -> Result<HilbertSlice> {
    Ok(HilbertSlice {
        degree: d,
        dimension: hilbert_function(a, d)?,
    })
}

fn check_degree(d: u32, caps: &Caps) -> Result<()> {
    Caps::check("degree", d as usize, caps.degree as usize)
}

/// Signed sum over generator subsets whose lcm has degree at most `d`.
pub fn hilbert_inclusion_exclusion(a: &MonomialIdeal, d: u32) -> u128 {
    fn walk(gens: &[Monomial], start: usize, lcm: &Monomial, size: usize, n: usize, d: u32, acc: &mut i128) {
        for k in start..gens.len() {
            let l = lcm.lcm(&gens[k]);
            let deg = l.total_degree();
            if deg > d {
                continue;
            }
            let term = count_monomials(n, d - deg) as i128;
            if size.is_multiple_of(2) {
                *acc += term;
            } else {
                *acc -= term;
            }
            walk(gens, k + 1, &l, size + 1, n, d, acc);
        }
    }
    let n = a.ring().nvars();
    let mut acc = 0i128;
    walk(a.gens(), 0, &Monomial::one(n), 0, n, d, &mut acc);
    debug_assert!(acc >= 0);
    acc as u128
}

/// Direct count by testing every degree-`d` monomial for membership.
pub fn hilbert_enumerate(a: &MonomialIdeal, d: u32) -> u128 {
    monomials_of_degree(a.ring().nvars(), d)
        .iter()
        .filter(|m| a.member(m))
        .count() as u128
}

/// Counts of monomials outside `(gens)` in degrees `0..=dmax`, splitting on
/// the exponent of the last variable.
fn standard_counts(n: usize, gens: Vec<Monomial>, dmax: usize) -> Vec<u128> {
    if gens.iter().any(Monomial::is_one) {
        return vec![0; dmax + 1];
    }
    if gens.is_empty() {
        return (0..=dmax).map(|d| count_monomials(n, d as u32)).collect();
    }
    let v = n - 1;
    let top = gens.iter().map(|g| g.exponent(v)).max().unwrap_or(0) as usize;
    let slice = |e: usize| -> Vec<Monomial> {
        minimal_generators(
            gens.iter()
                .filter(|g| g.exponent(v) as usize <= e)
                .map(|g| g.restrict(0..v))
                .collect(),
        )
    };
    let mut out = vec![0u128; dmax + 1];
    if v == 0 {
        // One variable: the ideal is (x^top).
        for (d, o) in out.iter_mut().enumerate() {
            *o = u128::from(d < top);
        }
        return out;
    }
    for e in 0..top.min(dmax + 1) {
        let sub = standard_counts(v, slice(e), dmax - e);
        for (k, c) in sub.into_iter().enumerate() {
            out[k + e] += c;
        }
    }
    if top <= dmax {
        // For e >= top the slice is constant; accumulate prefix sums.
        let sub = standard_counts(v, slice(top), dmax - top);
        let mut run = 0u128;
        for (k, c) in sub.into_iter().enumerate() {
            run += c;
            out[k + top] += run;
        }
    }
    out
}

/// Largest degree in which `a / b` is nonzero, for `b ⊆ a` with `a / b` of
/// finite length. `None` when `a == b`.
pub fn finite_length_reg(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<Option<u32>> {
    if !a.contains(b)? {
        return Err(Error::NotContained("second ideal is not inside the first".into()));
    }
    if a == b {
        return Ok(None);
    }
    let n = a.ring().nvars();
    let c = b.colon(a)?;
    // Every monomial of a outside b is g*w with g a generator of a and w
    // below the pure powers of c, which bounds its degree.
    let mut bound = a.t0()?;
    for v in 0..n {
        let e = c
            .gens()
            .iter()
            .filter(|g| g.support().iter().all(|&i| i == v))
            .map(|g| g.exponent(v))
            .min()
            .ok_or(Error::NotFiniteLength)?;
        bound += e.saturating_sub(1);
    }
    let ha = hilbert_vector(a, bound)?;
    let hb = hilbert_vector(b, bound)?;
    Ok((0..=bound).rev().find(|&d| ha[d as usize] > hb[d as usize]))
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
    fn small_values() {
        let r = ring(&["x", "y"]);
        let a = MonomialIdeal::from_exponents(&r, &[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(hilbert_function(&a, 2).unwrap(), 2);
        assert_eq!(hilbert_function(&a, 3).unwrap(), 4);
        let r3 = ring(&["x", "y", "z"]);
        assert_eq!(hilbert_function(&MonomialIdeal::maximal(&r3), 5).unwrap(), 21);
        assert_eq!(hilbert_vector(&a, 4).unwrap(), vec![0, 0, 2, 4, 5]);
    }

    #[test]
    fn finite_length() {
        let r = ring(&["x", "y"]);
        let m = MonomialIdeal::maximal(&r);
        assert_eq!(finite_length_reg(&m, &m.power(2)).unwrap(), Some(1));
        let x = MonomialIdeal::variables(&r, &[0]);
        assert_eq!(finite_length_reg(&x, &x).unwrap(), None);
        assert_eq!(finite_length_reg(&m, &x), Err(Error::NotFiniteLength));
        assert!(matches!(finite_length_reg(&x, &m), Err(Error::NotContained(_))));
        // Socle far above max degree + variable count + 2.
        let b = MonomialIdeal::from_exponents(&r, &[&[10, 0], &[0, 10]]).unwrap();
        assert_eq!(finite_length_reg(&MonomialIdeal::unit(&r), &b).unwrap(), Some(18));
    }

    #[test]
    fn degree_cap() {
        let r = ring(&["x"]);
        let a = MonomialIdeal::maximal(&r);
        assert!(hilbert_function(&a, 1000).unwrap_err().is_cap());
    }
}
