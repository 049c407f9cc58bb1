//! Seeded sample families for property runs.

use std::sync::Arc;

use fiberlab_core::monomial::monomials_of_degree;
use fiberlab_core::{Field, Monomial, MonomialIdeal, Result, Ring};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fiber::FiberSetup;
use crate::graphs::Graph;

pub const IDEAL_SEED: u64 = 0x5eed_0001;
pub const PAIR_SEED: u64 = 0x5eed_0002;
pub const GRAPH_SEED: u64 = 0x5eed_0003;
pub const JOIN_SEED: u64 = 0x5eed_0004;

/// Nonzero ideal with at most `max_gens` generators of degree `1..=max_deg`
/// in `k[x1..xn]`, `n ≤ max_vars`.
pub fn random_ideal(rng: &mut impl Rng, max_vars: usize, max_gens: usize, max_deg: u32, field: Field) -> MonomialIdeal {
    let n = rng.gen_range(1..=max_vars);
    let ring = Arc::new(Ring::indexed("R", "x", n).expect("positive variable count").with_field(field));
    let k = rng.gen_range(1..=max_gens);
    let gens = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=max_deg);
            let mut m = Monomial::one(n);
            for _ in 0..d {
                let v = rng.gen_range(0..n);
                m.set_exponent(v, m.exponent(v) + 1);
            }
            m
        })
        .collect();
    MonomialIdeal::new(&ring, gens).expect("exponent vectors match the ring")
}

pub fn random_ideals(seed: u64, count: usize, max_vars: usize, max_gens: usize, max_deg: u32, field: Field) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_ideal(&mut rng, max_vars, max_gens, max_deg, field)).collect()
}

fn equigenerated(rng: &mut impl Rng, ring: &Arc<Ring>) -> MonomialIdeal {
    let d = rng.gen_range(2..=3);
    let pool = monomials_of_degree(ring.nvars(), d);
    let k = rng.gen_range(1..=4.min(pool.len()));
    let gens = pool.choose_multiple(rng, k).cloned().collect();
    MonomialIdeal::new(ring, gens).expect("exponent vectors match the ring")
}

/// Factor ring with 1 to 3 variables named from `names`.
fn factor_ring(rng: &mut impl Rng, block: &str, names: &[&str], field: Field) -> Arc<Ring> {
    let n = rng.gen_range(1..=3);
    Arc::new(Ring::new(block, names[..n].iter().copied()).expect("distinct names").with_field(field))
}

/// Pairs of ideals each in at most 3 variables, at most 4 generators, all of
/// one degree in `{2, 3}`.
pub fn equigenerated_pairs(seed: u64, count: usize, field: Field) -> Vec<FiberSetup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = factor_ring(&mut rng, "R", &["a", "b", "c"], field);
            let s = factor_ring(&mut rng, "S", &["x", "y", "z"], field);
            let i = equigenerated(&mut rng, &r);
            let j = equigenerated(&mut rng, &s);
            FiberSetup::new(&i, &j).expect("factors lie in the squares of their maximal ideals")
        })
        .collect()
}

/// Graphs on 1 to `max_n` vertices with edge probability `p`.
pub fn random_graphs(seed: u64, count: usize, max_n: usize, p: f64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let edges: Vec<_> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            Graph::new(n, edges).expect("edges in range")
        })
        .collect()
}

/// Joins of two random graphs on parts of size 1 to 3.
pub fn join_graphs(seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = rng.gen_range(1..=3);
            let q = rng.gen_range(1..=3);
            let mut edges: Vec<(usize, usize)> = (0..p).flat_map(|a| (p..p + q).map(move |b| (a, b))).collect();
            for a in 0..p + q {
                for b in a + 1..p + q {
                    if (b < p || a >= p) && rng.gen_bool(0.5) {
                        edges.push((a, b));
                    }
                }
            }
            Graph::new(p + q, edges).expect("edges in range")
        })
        .collect()
}

/// Hand-picked pairs mixing factors with and without linear resolutions.
pub fn componentwise_pairs(field: Field) -> Result<Vec<FiberSetup>> {
    let r2 = Arc::new(Ring::new("R", ["a", "b"])?.with_field(field));
    let r3 = Arc::new(Ring::new("R", ["a", "b", "c"])?.with_field(field));
    let s1 = Arc::new(Ring::new("S", ["x"])?.with_field(field));
    let s2 = Arc::new(Ring::new("S", ["x", "y"])?.with_field(field));
    let id = |r: &Arc<Ring>, rows: &[&[u32]]| MonomialIdeal::from_exponents(r, rows);
    let pairs = [
        (MonomialIdeal::maxideal_power(&r2, None, 2)?, MonomialIdeal::maxideal_power(&s2, None, 2)?),
        (id(&r2, &[&[2, 0], &[0, 2]])?, id(&s1, &[&[2]])?),
        (id(&r2, &[&[2, 0], &[1, 1]])?, MonomialIdeal::maxideal_power(&s2, None, 2)?),
        (id(&r2, &[&[3, 0], &[0, 3]])?, id(&s1, &[&[3]])?),
        (MonomialIdeal::maxideal_power(&r2, None, 2)?, id(&s2, &[&[2, 0], &[0, 2]])?),
        (id(&r3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])?, MonomialIdeal::maxideal_power(&s2, None, 3)?),
        (id(&r2, &[&[2, 0]])?, id(&s2, &[&[2, 0], &[1, 1]])?),
        (id(&r3, &[&[1, 1, 0], &[0, 1, 1]])?, id(&s2, &[&[1, 1]])?),
        (id(&r2, &[&[2, 0], &[1, 1], &[0, 3]])?, id(&s2, &[&[2, 0], &[0, 2]])?),
        (MonomialIdeal::zero(&r2), id(&s2, &[&[2, 0], &[0, 2]])?),
    ];
    pairs.iter().map(|(i, j)| FiberSetup::new(i, j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = random_ideals(IDEAL_SEED, 10, 5, 6, 4, Field::Rational);
        let b = random_ideals(IDEAL_SEED, 10, 5, 6, 4, Field::Rational);
        assert_eq!(a, b);
        let pairs = equigenerated_pairs(PAIR_SEED, 25, Field::Rational);
        assert_eq!(pairs.len(), 25);
        for p in &pairs {
            for x in [&p.i, &p.j] {
                assert!(x.ring().nvars() <= 3 && x.ngens() <= 4);
                assert!(x.is_equigenerated().unwrap());
                assert!((2..=3).contains(&x.t0().unwrap()));
            }
        }
        assert_eq!(componentwise_pairs(Field::Rational).unwrap().len(), 10);
        for g in join_graphs(JOIN_SEED, 5) {
            assert!(crate::graphs::detect_bipartite_join(&g).is_some());
        }
    }
}
