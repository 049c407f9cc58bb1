//! Exact monomial-ideal arithmetic on canonical minimal generating sets.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::ring::Ring;

/// Work threshold (candidate pairs) above which loops go parallel.
const PAR_THRESHOLD: usize = 4096;

/// A monomial ideal stored by its minimal generators in canonical order.
///
/// The zero ideal has no generators; the unit ideal has the single
/// generator `1`. Equality of ideals is equality of generator lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: Arc<Ring>,
    gens: Vec<Monomial>,
}

/// Reduces `gens` to the divisibility-minimal subset, canonically sorted.
pub fn minimalize(ring: &Arc<Ring>, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
    if let Some(bad) = gens.iter().find(|g| g.nvars() != ring.nvars()) {
        return Err(Error::RingMismatch(format!(
            "monomial in {} variables for a ring with {}",
            bad.nvars(),
            ring.nvars()
        )));
    }
    Ok(MonomialIdeal {
        ring: ring.clone(),
        gens: minimal_generators(gens),
    })
}

/// Keeps the minimal elements under divisibility. Candidates are processed
/// in layers of equal total degree: distinct monomials of the same degree
/// never divide each other, so each layer only needs testing against the
/// survivors of lower layers.
pub(crate) fn minimal_generators(mut v: Vec<Monomial>) -> Vec<Monomial> {
    v.sort_unstable_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| a.exponents().cmp(b.exponents()))
    });
    v.dedup();
    let mut kept: Vec<(u64, Monomial)> = Vec::new();
    let mut start = 0;
    while start < v.len() {
        let d = v[start].total_degree();
        let mut end = start;
        while end < v.len() && v[end].total_degree() == d {
            end += 1;
        }
        let layer = &v[start..end];
        let is_new = |g: &Monomial| {
            let mask = g.support_mask();
            !kept.iter().any(|(hm, h)| hm & !mask == 0 && h.divides(g))
        };
        let survivors: Vec<Monomial> = if layer.len() * kept.len().max(1) > PAR_THRESHOLD * 16 {
            layer.par_iter().filter(|g| is_new(g)).cloned().collect()
        } else {
            layer.iter().filter(|g| is_new(g)).cloned().collect()
        };
        kept.extend(survivors.into_iter().map(|g| (g.support_mask(), g)));
        start = end;
    }
    let mut out: Vec<Monomial> = kept.into_iter().map(|(_, g)| g).collect();
    out.sort();
    out
}

impl MonomialIdeal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
        minimalize(ring, gens)
    }

    /// Builds an ideal from raw exponent rows.
    pub fn from_exponents(ring: &Arc<Ring>, rows: &[&[u32]]) -> Result<MonomialIdeal> {
        minimalize(ring, rows.iter().map(|r| Monomial::new(r.iter().copied())).collect())
    }

    pub fn zero(ring: &Arc<Ring>) -> MonomialIdeal {
        MonomialIdeal {
            ring: ring.clone(),
            gens: Vec::new(),
        }
    }

    pub fn unit(ring: &Arc<Ring>) -> MonomialIdeal {
        MonomialIdeal {
            ring: ring.clone(),
            gens: vec![Monomial::one(ring.nvars())],
        }
    }

    pub fn principal(ring: &Arc<Ring>, m: Monomial) -> Result<MonomialIdeal> {
        minimalize(ring, vec![m])
    }

    /// The ideal generated by the given variables.
    pub fn variables(ring: &Arc<Ring>, vars: &[usize]) -> MonomialIdeal {
        let n = ring.nvars();
        let gens = vars.iter().map(|&i| Monomial::var(i, n)).collect();
        MonomialIdeal {
            ring: ring.clone(),
            gens: minimal_generators(gens),
        }
    }

    /// Graded maximal ideal of the whole ring.
    pub fn maximal(ring: &Arc<Ring>) -> MonomialIdeal {
        let all: Vec<usize> = (0..ring.nvars()).collect();
        MonomialIdeal::variables(ring, &all)
    }

    /// `s`-th power of the maximal ideal of a block (or of the whole ring
    /// when `block` is `None` or names the ring itself).
    pub fn maxideal_power(ring: &Arc<Ring>, block: Option<&str>, s: u32) -> Result<MonomialIdeal> {
        let range = match block {
            None => 0..ring.nvars(),
            Some(name) => ring.block_range(name)?,
        };
        let n = ring.nvars();
        let gens = monomials_of_degree(range.len(), s)
            .into_iter()
            .map(|m| m.embed(n, range.start))
            .collect();
        minimalize(ring, gens)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    fn same_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "ideals over `{}` and `{}`",
                self.ring.name(),
                other.ring.name()
            )));
        }
        Ok(())
    }

    fn check_monomial(&self, m: &Monomial) -> Result<()> {
        if m.nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch(format!(
                "monomial in {} variables for a ring with {}",
                m.nvars(),
                self.ring.nvars()
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let gens = self.gens.iter().chain(other.gens.iter()).cloned().collect();
        Ok(MonomialIdeal {
            ring: self.ring.clone(),
            gens: minimal_generators(gens),
        })
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.product_capped(other, &Caps::global())
    }

    pub fn product_capped(&self, other: &MonomialIdeal, caps: &Caps) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let pairs = self.gens.len() * other.gens.len();
        Caps::check("product candidates", pairs, caps.products)?;
        let gens: Vec<Monomial> = if pairs > PAR_THRESHOLD {
            self.gens
                .par_iter()
                .flat_map_iter(|g| other.gens.iter().map(move |h| g.mul(h)))
                .collect()
        } else {
            self.gens
                .iter()
                .flat_map(|g| other.gens.iter().map(move |h| g.mul(h)))
                .collect()
        };
        Ok(MonomialIdeal {
            ring: self.ring.clone(),
            gens: minimal_generators(gens),
        })
    }

    /// `self^s` by repeated multiplication, minimalizing after every step.
    /// `self^0` is the unit ideal.
    pub fn power(&self, s: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(&self.ring);
        for _ in 0..s {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<MonomialIdeal> {
        self.check_monomial(m)?;
        Ok(MonomialIdeal {
            ring: self.ring.clone(),
            gens: minimal_generators(self.gens.iter().map(|g| g.mul(m)).collect()),
        })
    }

    /// Intersection via pairwise lcms of generators.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let pairs = self.gens.len() * other.gens.len();
        let gens: Vec<Monomial> = if pairs > PAR_THRESHOLD {
            self.gens
                .par_iter()
                .flat_map_iter(|g| other.gens.iter().map(move |h| g.lcm(h)))
                .collect()
        } else {
            self.gens
                .iter()
                .flat_map(|g| other.gens.iter().map(move |h| g.lcm(h)))
                .collect()
        };
        Ok(MonomialIdeal {
            ring: self.ring.clone(),
            gens: minimal_generators(gens),
        })
    }

    /// `self : m` for a monomial `m`.
    pub fn colon_monomial(&self, m: &Monomial) -> Result<MonomialIdeal> {
        self.check_monomial(m)?;
        Ok(MonomialIdeal {
            ring: self.ring.clone(),
            gens: minimal_generators(self.gens.iter().map(|g| g.colon(m)).collect()),
        })
    }

    /// `self : other`, the intersection of the colons by each generator.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let mut gens = other.gens.iter();
        let first = gens.next().ok_or(Error::ZeroIdeal)?;
        let mut acc = self.colon_monomial(first)?;
        for g in gens {
            acc = acc.intersect(&self.colon_monomial(g)?)?;
        }
        Ok(acc)
    }

    /// Membership: some generator divides `m`.
    pub fn member(&self, m: &Monomial) -> bool {
        debug_assert_eq!(m.nvars(), self.ring.nvars());
        let mask = m.support_mask();
        self.gens.iter().any(|g| g.support_mask() & !mask == 0 && g.divides(m))
    }

    pub fn checked_member(&self, m: &Monomial) -> Result<bool> {
        self.check_monomial(m)?;
        Ok(self.member(m))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &MonomialIdeal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(other.gens.iter().all(|g| self.member(g)))
    }

    /// The ideal generated by `f / x_i` over minimal generators `f` and
    /// variables `x_i` in the support of `f`.
    pub fn star_derivative(&self) -> Result<MonomialIdeal> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let n = self.ring.nvars();
        let gens = self
            .gens
            .iter()
            .flat_map(|g| {
                g.support().into_iter().map(move |i| {
                    let mut q = g.clone();
                    q.set_exponent(i, g.exponent(i) - 1);
                    q
                })
            })
            .collect::<Vec<_>>();
        debug_assert!(gens.iter().all(|g| g.nvars() == n));
        Ok(MonomialIdeal {
            ring: self.ring.clone(),
            gens: minimal_generators(gens),
        })
    }

    /// The ideal generated by the degree-`d` monomials of `self`.
    pub fn component(&self, d: u32) -> Result<MonomialIdeal> {
        self.component_capped(d, &Caps::global())
    }

    pub fn component_capped(&self, d: u32, caps: &Caps) -> Result<MonomialIdeal> {
        if d > caps.degree {
            return Err(Error::CapExceeded {
                what: "degree",
                value: d as u64,
                limit: caps.degree as u64,
            });
        }
        let n = self.ring.nvars();
        let mut gens = Vec::new();
        for g in &self.gens {
            let e = g.total_degree();
            if e > d {
                continue;
            }
            for u in monomials_of_degree(n, d - e) {
                gens.push(g.mul(&u));
            }
        }
        Ok(MonomialIdeal {
            ring: self.ring.clone(),
            gens: minimal_generators(gens),
        })
    }

    /// Extension of `self` to a ring containing `self.ring()` as a block.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<MonomialIdeal> {
        let block = target.block_of(&self.ring)?;
        let (n, off) = (target.nvars(), block.start);
        Ok(MonomialIdeal {
            ring: target.clone(),
            gens: self.gens.iter().map(|g| g.embed(n, off)).collect(),
        })
    }

    /// Variable indices dividing some minimal generator.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.nvars()];
        for g in &self.gens {
            for i in g.support() {
                seen[i] = true;
            }
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i).collect()
    }

    /// Maximal degree of a minimal generator.
    pub fn t0(&self) -> Result<u32> {
        self.gens.iter().map(Monomial::total_degree).max().ok_or(Error::ZeroIdeal)
    }

    /// Minimal degree of a minimal generator.
    pub fn indeg(&self) -> Result<u32> {
        self.gens.iter().map(Monomial::total_degree).min().ok_or(Error::ZeroIdeal)
    }

    pub fn is_equigenerated(&self) -> Result<bool> {
        Ok(self.t0()? == self.indeg()?)
    }

    /// lcm of all generators: the top of the lcm lattice.
    pub fn top(&self) -> Result<Monomial> {
        let mut it = self.gens.iter();
        let first = it.next().ok_or(Error::ZeroIdeal)?.clone();
        Ok(it.fold(first, |acc, g| acc.lcm(g)))
    }

    /// Canonical textual form of the generator list.
    pub fn format_gens(&self) -> String {
        if self.gens.is_empty() {
            return "0".to_string();
        }
        self.gens.iter().map(|g| g.format(&self.ring)).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_gens())
    }
}

/// Free-function spellings of the ideal operations.
pub fn sum(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.sum(b)
}

pub fn product(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.product(b)
}

pub fn power(a: &MonomialIdeal, s: u32) -> MonomialIdeal {
    a.power(s)
}

pub fn intersect(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.intersect(b)
}

pub fn colon(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.colon(b)
}

pub fn contains(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<bool> {
    a.contains(b)
}

pub fn star_derivative(a: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.star_derivative()
}

pub fn component_ideal(a: &MonomialIdeal, d: u32) -> Result<MonomialIdeal> {
    a.component(d)
}

pub fn tensor_embed(a: &MonomialIdeal, target: &Arc<Ring>) -> Result<MonomialIdeal> {
    a.embed(target)
}

/// Fiber-product ideal `I + J + mn` in `tensor`, where `m` and `n` are the
/// maximal ideals of the two factors. Requires `I` in `m^2` and `J` in `n^2`.
pub fn fiber_product(i: &MonomialIdeal, j: &MonomialIdeal, tensor: &Arc<Ring>) -> Result<MonomialIdeal> {
    for (a, label) in [(i, "first"), (j, "second")] {
        if a.gens.iter().any(|g| g.total_degree() < 2) {
            return Err(Error::NotContained(format!(
                "{label} ideal is not inside the square of its maximal ideal"
            )));
        }
    }
    let bi = tensor.block_of(i.ring())?.range();
    let bj = tensor.block_of(j.ring())?.range();
    if bi.start < bj.end && bj.start < bi.end {
        return Err(Error::RingMismatch("fiber product factors overlap".into()));
    }
    let n = tensor.nvars();
    let mut gens: Vec<Monomial> = Vec::with_capacity(i.ngens() + j.ngens() + bi.len() * bj.len());
    gens.extend(i.embed(tensor)?.gens);
    gens.extend(j.embed(tensor)?.gens);
    for a in bi.clone() {
        for b in bj.clone() {
            let mut m = Monomial::one(n);
            m.set_exponent(a, 1);
            m.set_exponent(b, 1);
            gens.push(m);
        }
    }
    minimalize(tensor, gens)
}
