//! Monomials, identified with their exponent vectors.

use std::cmp::Ordering;
use std::fmt::Write as _;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Exponent vector of a monomial. Coefficients never matter for monomial
/// ideals, so the vector *is* the monomial.
///
/// The `Ord` instance is the canonical listing order: descending total
/// degree, ties broken by descending lexicographic order of the exponent
/// vectors (so `x^2 < x*y < y^2` in `k[x,y]`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: SmallVec<[u32; 10]>,
}

/// A monomial viewed as a point of `N^n`.
pub type Multidegree = Monomial;

impl Monomial {
    pub fn new(exps: impl IntoIterator<Item = u32>) -> Monomial {
        Monomial {
            exps: exps.into_iter().collect(),
        }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn var(i: usize, nvars: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn set_exponent(&mut self, i: usize, e: u32) {
        self.exps[i] = e;
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Indices of the variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    /// Support folded into 64 bits (variable `i` sets bit `i % 64`). A
    /// divisor's mask is always a submask of the multiple's mask.
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << (i % 64);
            }
        }
        mask
    }

    /// `self | other`. Lengths must agree (unchecked in release builds).
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(other.exps.iter()).map(|(&a, &b)| a.max(b)).collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(other.exps.iter()).map(|(&a, &b)| a.min(b)).collect(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(other.exps.iter()).map(|(&a, &b)| a + b).collect(),
        }
    }

    /// `self / gcd(self, other)`, the generator of `(self) : other`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(self.colon(other))
        } else {
            None
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&a| a * k).collect(),
        }
    }

    /// Re-index into a larger ring, placing `self` at `offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[offset..offset + self.exps.len()].copy_from_slice(&self.exps);
        m
    }

    /// Restriction to a range of variables, other exponents dropped.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Monomial {
        Monomial {
            exps: self.exps[range].iter().copied().collect(),
        }
    }

    /// Formats as `x^2*y`, or `1` for the unit monomial.
    pub fn format(&self, ring: &Ring) -> String {
        let mut out = String::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(ring.variable(i));
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .total_degree()
            .cmp(&self.total_degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_same(u: &Monomial, v: &Monomial) -> Result<()> {
    if u.nvars() != v.nvars() {
        return Err(Error::RingMismatch(format!(
            "monomials in {} and {} variables",
            u.nvars(),
            v.nvars()
        )));
    }
    Ok(())
}

/// Checked divisibility test.
pub fn monomial_divides(u: &Monomial, v: &Monomial) -> Result<bool> {
    check_same(u, v)?;
    Ok(u.divides(v))
}

/// Checked least common multiple.
pub fn monomial_lcm(u: &Monomial, v: &Monomial) -> Result<Monomial> {
    check_same(u, v)?;
    Ok(u.lcm(v))
}

/// All exponent vectors of total degree `d` in `n` variables, in canonical
/// (descending lexicographic) order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::new(cur.iter().copied()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::new([]));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Binomial coefficient as `u128`; saturates rather than overflowing.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Number of monomials of degree `d` in `n` variables.
pub fn count_monomials(n: usize, d: u32) -> u128 {
    if n == 0 {
        return u128::from(d == 0);
    }
    binomial(d as u64 + n as u64 - 1, n as u64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.iter().copied())
    }

    #[test]
    fn divisibility_examples() {
        assert!(monomial_divides(&m(&[1, 0]), &m(&[2, 1])).unwrap());
        assert!(!monomial_divides(&m(&[2, 0]), &m(&[1, 3])).unwrap());
        assert!(monomial_divides(&m(&[3, 4]), &m(&[3, 4])).unwrap());
        assert!(monomial_divides(&m(&[1]), &m(&[1, 0])).is_err());
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(monomial_lcm(&m(&[2, 0]), &m(&[1, 1])).unwrap(), m(&[2, 1]));
        assert_eq!(monomial_lcm(&m(&[2, 5]), &m(&[0, 0])).unwrap(), m(&[2, 5]));
        assert_eq!(
            monomial_lcm(&m(&[1, 1, 0, 0]), &m(&[0, 0, 1, 1])).unwrap(),
            m(&[1, 1, 1, 1])
        );
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![m(&[0, 2]), m(&[1, 1]), m(&[3, 0]), m(&[2, 0])];
        v.sort();
        assert_eq!(v, vec![m(&[3, 0]), m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 5).len(), 21);
        assert_eq!(count_monomials(3, 5), 21);
        assert_eq!(count_monomials(4, 9), 220);
        let v = monomials_of_degree(2, 2);
        assert_eq!(v, vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
    }

    #[test]
    fn colon_and_support() {
        assert_eq!(m(&[2, 1, 0]).colon(&m(&[1, 3, 1])), m(&[1, 0, 0]));
        assert_eq!(m(&[0, 2, 1]).support(), vec![1, 2]);
        assert_eq!(m(&[0, 2, 1]).support_mask(), 0b110);
    }
}
