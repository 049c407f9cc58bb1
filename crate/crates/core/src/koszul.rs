//! Tor of a monomial ideal as homology of the ideal tensored with the
//! Koszul complex on the variables, and the maps on Tor induced by
//! inclusions of ideals.
//!
//! The complex splits by multidegree. In multidegree `b` the `i`-th chain
//! space has basis the `i`-subsets `S` of `supp(b)` with `x^{b-S}` in the
//! ideal, and `(x^{b-S}, S) ↦ Σ_{s∈S} (-1)^{pos(s)} (x^{b-S+s}, S∖s)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::linalg::{self, null_space, FieldOps, PrimeField, Rationals, SpanBasis};
use crate::monomial::{Monomial, Multidegree};
use crate::ring::{Field, Ring};

/// Graded Tor dimensions `(i, j) -> dim Tor_i(k, A)_j`, with the
/// multigraded refinement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedTor {
    ring: Arc<Ring>,
    field: Field,
    entries: BTreeMap<(usize, u32), u64>,
    multigraded: BTreeMap<(usize, Multidegree), u64>,
}

impl GradedTor {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &BTreeMap<(usize, u32), u64> {
        &self.entries
    }

    pub fn multigraded(&self) -> &BTreeMap<(usize, Multidegree), u64> {
        &self.multigraded
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }
}

/// Multidegrees `b ≤ top`, in mixed-radix order.
fn multidegrees_below(top: &Monomial, caps: &Caps) -> Result<Vec<Multidegree>> {
    let count = top
        .exponents()
        .iter()
        .try_fold(1usize, |acc, &e| acc.checked_mul(e as usize + 1))
        .unwrap_or(usize::MAX);
    Caps::check("lattice", count, caps.lattice)?;
    let n = top.nvars();
    let mut out = Vec::with_capacity(count);
    let mut cur = vec![0u32; n];
    loop {
        out.push(Monomial::new(cur.iter().copied()));
        let mut v = 0;
        loop {
            if v == n {
                return Ok(out);
            }
            if cur[v] < top.exponent(v) {
                cur[v] += 1;
                break;
            }
            cur[v] = 0;
            v += 1;
        }
    }
}

/// Chain bases at `b`: masks over `supp(b)` grouped by size.
struct PointChains {
    vertices: Vec<usize>,
    by_size: Vec<Vec<u64>>,
}

impl PointChains {
    fn new(x: &MonomialIdeal, b: &Multidegree) -> PointChains {
        let vertices = b.support();
        let k = vertices.len();
        let mut by_size = vec![Vec::new(); k + 1];
        for mask in 0u64..(1u64 << k) {
            let mut m = b.clone();
            for (bit, &v) in vertices.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    m.set_exponent(v, m.exponent(v) - 1);
                }
            }
            if x.member(&m) {
                by_size[mask.count_ones() as usize].push(mask);
            }
        }
        PointChains { vertices, by_size }
    }

    fn dim(&self, i: usize) -> usize {
        self.by_size.get(i).map_or(0, Vec::len)
    }

    /// Matrix of `d_i : C_i -> C_{i-1}` as rows indexed by `C_{i-1}`.
    fn differential(&self, i: usize) -> Vec<Vec<i64>> {
        if i == 0 || i > self.vertices.len() {
            return Vec::new();
        }
        let target = &self.by_size[i - 1];
        let mut rows = vec![vec![0i64; self.by_size[i].len()]; target.len()];
        for (c, &s) in self.by_size[i].iter().enumerate() {
            let mut pos = 0;
            for bit in 0..self.vertices.len() {
                if s >> bit & 1 == 1 {
                    let face = s & !(1u64 << bit);
                    if let Ok(r) = target.binary_search(&face) {
                        rows[r][c] = if pos % 2 == 0 { 1 } else { -1 };
                    }
                    pos += 1;
                }
            }
        }
        rows
    }

    fn homology_dims(&self, field: Field) -> Vec<u64> {
        let k = self.vertices.len();
        let ranks: Vec<usize> = (0..=k + 1)
            .map(|i| {
                if i == 0 || i > k || self.dim(i) == 0 || self.dim(i - 1) == 0 {
                    0
                } else {
                    linalg::rank(&self.differential(i), field)
                }
            })
            .collect();
        (0..=k)
            .map(|i| (self.dim(i) - ranks[i] - ranks[i + 1]) as u64)
            .collect()
    }
}

/// Resolves the degree bound: defaults to the degree of the lcm of all
/// generators and may not be smaller.
fn degree_bound(tops: &[&Monomial], degree_cap: Option<u32>, caps: &Caps) -> Result<u32> {
    let needed = tops.iter().map(|t| t.total_degree()).max().unwrap_or(0);
    let cap = degree_cap.unwrap_or(needed);
    if cap < needed {
        return Err(Error::InvalidArgument(format!(
            "degree cap {cap} is below the top lattice degree {needed}"
        )));
    }
    Caps::check("degree", needed as usize, caps.degree as usize)?;
    Ok(needed)
}

fn check_basis(chains: &[(Multidegree, PointChains)], caps: &Caps) -> Result<()> {
    let mut sizes: BTreeMap<(usize, u32), usize> = BTreeMap::new();
    for (b, c) in chains {
        for (i, s) in c.by_size.iter().enumerate() {
            *sizes.entry((i, b.total_degree())).or_insert(0) += s.len();
        }
    }
    let worst = sizes.values().copied().max().unwrap_or(0);
    Caps::check("basis", worst, caps.basis)
}

pub fn tor_dimensions(a: &MonomialIdeal, field: Field, degree_cap: Option<u32>) -> Result<GradedTor> {
    tor_dimensions_capped(a, field, degree_cap, &Caps::global())
}

pub fn tor_dimensions_capped(
    a: &MonomialIdeal,
    field: Field,
    degree_cap: Option<u32>,
    caps: &Caps,
) -> Result<GradedTor> {
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let top = a.top()?;
    degree_bound(&[&top], degree_cap, caps)?;
    let chains: Vec<(Multidegree, PointChains)> = multidegrees_below(&top, caps)?
        .into_par_iter()
        .map(|b| {
            let c = PointChains::new(a, &b);
            (b, c)
        })
        .collect();
    check_basis(&chains, caps)?;
    let dims: Vec<(Multidegree, Vec<u64>)> = chains
        .into_par_iter()
        .map(|(b, c)| {
            let h = c.homology_dims(field);
            (b, h)
        })
        .collect();
    let mut entries = BTreeMap::new();
    let mut multigraded = BTreeMap::new();
    for (b, h) in dims {
        for (i, d) in h.into_iter().enumerate() {
            if d > 0 {
                *entries.entry((i, b.total_degree())).or_insert(0) += d;
                multigraded.insert((i, b.clone()), d);
            }
        }
    }
    Ok(GradedTor {
        ring: a.ring().clone(),
        field,
        entries,
        multigraded,
    })
}

/// Homology of one chain degree at one multidegree, with a deterministic
/// basis of representatives.
struct HomologyBasis<E> {
    /// Span of boundaries followed by representatives, in that insertion
    /// order.
    span: SpanBasis<E>,
    boundary_rank: usize,
    reps: Vec<Vec<E>>,
}

fn homology_basis<F: FieldOps>(f: &F, c: &PointChains, i: usize) -> HomologyBasis<F::E> {
    let dim = c.dim(i);
    let to_field = |rows: Vec<Vec<i64>>| -> Vec<Vec<F::E>> {
        rows.into_iter().map(|r| r.into_iter().map(|v| f.element(v)).collect()).collect()
    };
    let cycles = if i == 0 || c.dim(i - 1) == 0 {
        // Every chain is a cycle.
        (0..dim)
            .map(|k| (0..dim).map(|j| f.element(i64::from(j == k))).collect())
            .collect()
    } else {
        null_space(f, to_field(c.differential(i)), dim)
    };
    let mut span = SpanBasis::new(dim);
    let d_next = c.differential(i + 1);
    let next_dim = c.dim(i + 1);
    let mut boundary_rank = 0;
    for col in 0..next_dim {
        let v: Vec<F::E> = d_next.iter().take(dim).map(|row| f.element(row[col])).collect();
        if span.insert(f, &v) {
            boundary_rank += 1;
        }
    }
    let mut reps = Vec::new();
    for z in cycles {
        if span.insert(f, &z) {
            reps.push(z);
        }
    }
    HomologyBasis {
        span,
        boundary_rank,
        reps,
    }
}

type Block = ((usize, Multidegree), Vec<Vec<BigRational>>);

/// Matrices of the maps `Tor_i(k, A) -> Tor_i(k, B)` induced by `A ⊆ B`,
/// one block per `(i, b)`; rows index the basis of the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorMap {
    field: Field,
    blocks: BTreeMap<(usize, Multidegree), Vec<Vec<BigRational>>>,
}

impl TorMap {
    pub fn field(&self) -> Field {
        self.field
    }

    /// Blocks with both source and target nonzero.
    pub fn blocks(&self) -> &BTreeMap<(usize, Multidegree), Vec<Vec<BigRational>>> {
        &self.blocks
    }

    /// Block-diagonal matrix of the coarse map in degree `(i, j)`, with
    /// blocks ordered by multidegree.
    pub fn coarse_matrix(&self, i: usize, j: u32) -> Vec<Vec<BigRational>> {
        let parts: Vec<&Vec<Vec<BigRational>>> = self
            .blocks
            .iter()
            .filter(|((bi, b), _)| *bi == i && b.total_degree() == j)
            .map(|(_, m)| m)
            .collect();
        let rows: usize = parts.iter().map(|m| m.len()).sum();
        let cols: usize = parts.iter().map(|m| m.first().map_or(0, Vec::len)).sum();
        let mut out = vec![vec![BigRational::zero(); cols]; rows];
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            let w = m.first().map_or(0, Vec::len);
            for (r, row) in m.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    out[r0 + r][c0 + c] = v.clone();
                }
            }
            r0 += m.len();
            c0 += w;
        }
        out
    }

    /// Coarse degrees `(i, j)` carrying a nonzero entry.
    pub fn nonzero_degrees(&self) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = self
            .blocks
            .iter()
            .filter(|(_, m)| m.iter().flatten().any(|v| !v.is_zero()))
            .map(|((i, b), _)| (*i, b.total_degree()))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_degrees().is_empty()
    }
}

pub fn tor_map(a: &MonomialIdeal, b: &MonomialIdeal, field: Field, degree_cap: Option<u32>) -> Result<TorMap> {
    tor_map_capped(a, b, field, degree_cap, &Caps::global())
}

pub fn tor_map_capped(
    a: &MonomialIdeal,
    b: &MonomialIdeal,
    field: Field,
    degree_cap: Option<u32>,
    caps: &Caps,
) -> Result<TorMap> {
    if !b.contains(a)? {
        return Err(Error::NotContained("source ideal is not inside the target".into()));
    }
    if a.is_zero() {
        return Ok(TorMap {
            field,
            blocks: BTreeMap::new(),
        });
    }
    let top_a = a.top()?;
    let top_b = b.top()?;
    degree_bound(&[&top_a, &top_b], degree_cap, caps)?;
    let blocks = match field {
        Field::Rational => map_blocks(&Rationals, a, b, &top_a, caps)?,
        Field::Prime(p) => map_blocks(&PrimeField::new(p), a, b, &top_a, caps)?,
    };
    Ok(TorMap { field, blocks })
}

type Blocks = BTreeMap<(usize, Multidegree), Vec<Vec<BigRational>>>;

fn map_blocks<F: FieldOps>(f: &F, a: &MonomialIdeal, b: &MonomialIdeal, top: &Monomial, caps: &Caps) -> Result<Blocks> {
    // Tor(A) vanishes outside the multidegrees below the lcm of A.
    let points: Vec<(Multidegree, PointChains, PointChains)> = multidegrees_below(top, caps)?
        .into_par_iter()
        .map(|m| {
            let ca = PointChains::new(a, &m);
            let cb = PointChains::new(b, &m);
            (m, ca, cb)
        })
        .collect();
    let mut worst: BTreeMap<(usize, u32), usize> = BTreeMap::new();
    for (m, _, cb) in &points {
        for (i, s) in cb.by_size.iter().enumerate() {
            *worst.entry((i, m.total_degree())).or_insert(0) += s.len();
        }
    }
    Caps::check("basis", worst.values().copied().max().unwrap_or(0), caps.basis)?;
    let per_point: Vec<Vec<Block>> = points
        .into_par_iter()
        .map(|(m, ca, cb)| {
            let mut out = Vec::new();
            for i in 0..ca.by_size.len() {
                if ca.dim(i) == 0 || cb.dim(i) == 0 {
                    continue;
                }
                let ha = homology_basis(f, &ca, i);
                if ha.reps.is_empty() {
                    continue;
                }
                let hb = homology_basis(f, &cb, i);
                if hb.reps.is_empty() {
                    continue;
                }
                // Chain-level inclusion C_i(A) -> C_i(B).
                let embed: Vec<usize> = ca.by_size[i]
                    .iter()
                    .map(|s| cb.by_size[i].binary_search(s).expect("chains of A lie in chains of B"))
                    .collect();
                let mut matrix = vec![vec![BigRational::zero(); ha.reps.len()]; hb.reps.len()];
                for (col, z) in ha.reps.iter().enumerate() {
                    let mut v = vec![f.zero(); cb.dim(i)];
                    for (k, e) in z.iter().enumerate() {
                        v[embed[k]] = e.clone();
                    }
                    let coords = hb.span.solve(f, &v).expect("image of a cycle is a cycle");
                    for (row, c) in coords[hb.boundary_rank..].iter().enumerate() {
                        matrix[row][col] = f.to_rational(c);
                    }
                }
                out.push(((i, m.clone()), matrix));
            }
            out
        })
        .collect();
    Ok(per_point.into_iter().flatten().collect())
}

/// Whether every induced map `Tor_i(k, A) -> Tor_i(k, B)` is zero.
pub fn tor_vanishing(a: &MonomialIdeal, b: &MonomialIdeal, field: Field) -> Result<bool> {
    Ok(tor_map(a, b, field, None)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> Arc<Ring> {
        Arc::new(Ring::indexed("R", "x", n).unwrap())
    }

    fn table(t: &GradedTor) -> Vec<((usize, u32), u64)> {
        t.entries().iter().map(|(k, v)| (*k, *v)).collect()
    }

    #[test]
    fn dimensions() {
        let r = ring(2);
        let m = MonomialIdeal::maximal(&r);
        assert_eq!(table(&tor_dimensions(&m, Field::Rational, None).unwrap()), vec![((0, 1), 2), ((1, 2), 1)]);
        let a = MonomialIdeal::from_exponents(&r, &[&[2, 0], &[1, 1]]).unwrap();
        assert_eq!(table(&tor_dimensions(&a, Field::Rational, None).unwrap()), vec![((0, 2), 2), ((1, 3), 1)]);
        let m3 = m.power(3);
        assert_eq!(table(&tor_dimensions(&m3, Field::Prime(32003), None).unwrap()), vec![((0, 3), 4), ((1, 4), 3)]);
        assert!(matches!(tor_dimensions(&m3, Field::Rational, Some(2)), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn basis_cap() {
        let r = ring(3);
        let m = MonomialIdeal::maximal(&r).power(3);
        let caps = Caps {
            basis: 3,
            ..Caps::default()
        };
        assert!(tor_dimensions_capped(&m, Field::Rational, None, &caps).unwrap_err().is_cap());
    }

    #[test]
    fn maps() {
        let r = ring(2);
        let m = MonomialIdeal::maximal(&r);
        let m2 = m.power(2);
        assert!(tor_vanishing(&m2, &m, Field::Rational).unwrap());
        let id = tor_map(&m, &m, Field::Rational, None).unwrap();
        assert!(!id.is_zero());
        assert_eq!(id.coarse_matrix(1, 2), vec![vec![BigRational::from_integer(1.into())]]);
        assert!(matches!(tor_map(&m, &m2, Field::Rational, None), Err(Error::NotContained(_))));
        let i = MonomialIdeal::from_exponents(&r, &[&[2, 0], &[1, 1], &[0, 2]]).unwrap();
        // 𝔪^0 I^2 ⊆ 𝔪 I.
        let src = i.power(2);
        let dst = m.product(&i).unwrap();
        assert!(tor_vanishing(&src, &dst, Field::Rational).unwrap());
        assert!(tor_vanishing(&src, &dst, Field::Prime(32003)).unwrap());
    }

    #[test]
    fn nonvanishing_witness() {
        let r = ring(2);
        let a = MonomialIdeal::from_exponents(&r, &[&[2, 0], &[0, 2]]).unwrap();
        let b = MonomialIdeal::from_exponents(&r, &[&[1, 0], &[0, 2]]).unwrap();
        let map = tor_map(&a, &b, Field::Rational, None).unwrap();
        // y^2 maps to y^2.
        assert_eq!(map.nonzero_degrees().first(), Some(&(0, 2)));
    }
}
