#![allow(dead_code)]

use std::sync::Arc;

use fiberlab_core::{Monomial, MonomialIdeal, Ring};
use proptest::prelude::*;

pub fn ring(n: usize) -> Arc<Ring> {
    Arc::new(Ring::indexed("R", "x", n).unwrap())
}

pub fn monomial(n: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_exp, n).prop_map(Monomial::new)
}

/// Monomial of total degree `1..=max_deg` in `n` variables.
pub fn nonconstant(n: usize, max_deg: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..n, 1..=max_deg as usize).prop_map(move |vars| {
        let mut m = Monomial::one(n);
        for v in vars {
            m.set_exponent(v, m.exponent(v) + 1);
        }
        m
    })
}

/// Nonzero proper ideal over `r` with `1..=max_gens` generators.
pub fn ideal_in(r: Arc<Ring>, max_gens: usize, max_deg: u32) -> impl Strategy<Value = MonomialIdeal> {
    let n = r.nvars();
    proptest::collection::vec(nonconstant(n, max_deg), 1..=max_gens)
        .prop_map(move |gens| MonomialIdeal::new(&r, gens).unwrap())
}

/// Ideal in `1..=max_vars` variables.
pub fn ideal(max_vars: usize, max_gens: usize, max_deg: u32) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_vars).prop_flat_map(move |n| ideal_in(ring(n), max_gens, max_deg))
}

/// Two ideals over the same ring.
pub fn ideal_pair(max_vars: usize, max_gens: usize, max_deg: u32) -> impl Strategy<Value = (MonomialIdeal, MonomialIdeal)> {
    (1..=max_vars).prop_flat_map(move |n| {
        let r = ring(n);
        (ideal_in(r.clone(), max_gens, max_deg), ideal_in(r, max_gens, max_deg))
    })
}

/// Ideal with every generator of degree at least 2.
pub fn ideal_in_square(max_vars: usize, max_gens: usize, max_deg: u32) -> impl Strategy<Value = MonomialIdeal> {
    ideal(max_vars, max_gens, max_deg).prop_filter_map("degree one generator", |a| {
        let gens: Vec<Monomial> = a.gens().iter().filter(|g| g.total_degree() >= 2).cloned().collect();
        (!gens.is_empty()).then(|| MonomialIdeal::new(a.ring(), gens).unwrap())
    })
}

/// `a` over `R` and `b` over `S`, both embedded in `R ⊗ S`.
pub fn disjoint_pair(max_vars: usize, max_gens: usize, max_deg: u32) -> impl Strategy<Value = (MonomialIdeal, MonomialIdeal)> {
    (1..=max_vars, 1..=max_vars).prop_flat_map(move |(p, q)| {
        let r = Arc::new(Ring::indexed("R", "a", p).unwrap());
        let s = Arc::new(Ring::indexed("S", "b", q).unwrap());
        let t = Arc::new(Ring::tensor("T", &r, &s).unwrap());
        (ideal_in(r, max_gens, max_deg), ideal_in(s, max_gens, max_deg))
            .prop_map(move |(a, b)| (a.embed(&t).unwrap(), b.embed(&t).unwrap()))
    })
}
