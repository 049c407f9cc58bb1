//! Multigraded Betti numbers from the reduced homology of upper Koszul
//! complexes at the points of the lcm lattice.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::linalg;
use crate::monomial::{Monomial, Multidegree};
use crate::ring::{Field, Ring};

/// Join-closure of the generator multidegrees of an ideal.
#[derive(Debug, Clone)]
pub struct LcmLattice {
    points: Vec<Multidegree>,
}

impl LcmLattice {
    /// Points in increasing (degree, exponent vector) order.
    pub fn points(&self) -> &[Multidegree] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, b: &Multidegree) -> bool {
        self.points
            .binary_search_by(|p| lattice_key(p).cmp(&lattice_key(b)))
            .is_ok()
    }
}

fn lattice_key(m: &Monomial) -> (u32, &[u32]) {
    (m.total_degree(), m.exponents())
}

pub fn lcm_lattice(a: &MonomialIdeal) -> Result<LcmLattice> {
    lcm_lattice_capped(a, &Caps::global())
}

/// Breadth-first join closure; exceeding `caps.lattice` points is an error.
pub fn lcm_lattice_capped(a: &MonomialIdeal, caps: &Caps) -> Result<LcmLattice> {
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let gens = a.gens();
    let mut seen: HashSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = gens.to_vec();
    while !frontier.is_empty() {
        let fresh: Vec<Monomial> = frontier
            .par_iter()
            .flat_map_iter(|p| {
                gens.iter().filter_map(|g| {
                    let q = p.lcm(g);
                    (!seen.contains(&q)).then_some(q)
                })
            })
            .collect();
        let mut next = Vec::new();
        for q in fresh {
            if seen.insert(q.clone()) {
                next.push(q);
            }
        }
        Caps::check("lattice", seen.len(), caps.lattice)?;
        frontier = next;
    }
    let mut points: Vec<Monomial> = seen.into_iter().collect();
    points.sort_by(|x, y| lattice_key(x).cmp(&lattice_key(y)));
    Ok(LcmLattice { points })
}

/// A simplicial complex on a subset of the ring variables, with faces
/// stored as bitmasks over `vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<usize>,
    faces: Vec<u64>,
}

impl SimplicialComplex {
    /// Ring variable indices labelling bit positions.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Faces as bitmasks, sorted by size then value. The empty face is `0`.
    pub fn faces(&self) -> &[u64] {
        &self.faces
    }

    /// Faces as sorted lists of ring variable indices.
    pub fn face_sets(&self) -> Vec<Vec<usize>> {
        self.faces
            .iter()
            .map(|&f| (0..self.vertices.len()).filter(|&k| f >> k & 1 == 1).map(|k| self.vertices[k]).collect())
            .collect()
    }

    /// True for the complex with no faces at all.
    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// `dim H̃_d` for `d = -1 ..= n-1`, stored at index `d + 1`.
    pub fn reduced_homology(&self, field: Field) -> Vec<u64> {
        let k = self.vertices.len();
        let mut present = vec![false; 1 << k];
        for &f in &self.faces {
            present[f as usize] = true;
        }
        reduced_homology_masks(k, &mut present, field)
    }
}

/// The complex of squarefree `τ ≤ b` on `supp(b)` with `x^{b-τ}` in `a`.
pub fn upper_koszul(a: &MonomialIdeal, b: &Multidegree) -> Result<SimplicialComplex> {
    if b.nvars() != a.ring().nvars() {
        return Err(Error::RingMismatch("multidegree length differs from ring".into()));
    }
    let vertices = b.support();
    let k = vertices.len();
    Caps::check("support", k, Caps::global().support)?;
    let mut faces = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let mut m = b.clone();
        for (bit, &v) in vertices.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                m.set_exponent(v, m.exponent(v) - 1);
            }
        }
        if a.member(&m) {
            faces.push(mask);
        }
    }
    faces.sort_by_key(|&f| (f.count_ones(), f));
    Ok(SimplicialComplex { vertices, faces })
}

/// Multigraded Betti numbers of an ideal. Entries are positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    ring: Arc<Ring>,
    field: Field,
    entries: BTreeMap<(usize, Multidegree), u64>,
}

impl BettiTable {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `β_{i,b}`.
    pub fn get(&self, i: usize, b: &Multidegree) -> u64 {
        self.entries.get(&(i, b.clone())).copied().unwrap_or(0)
    }

    /// Nonzero multigraded entries ordered by `(i, b)`.
    pub fn multigraded(&self) -> impl Iterator<Item = (usize, &Multidegree, u64)> {
        self.entries.iter().map(|((i, b), &d)| (*i, b, d))
    }

    /// Coarse table `(i, j) -> β_{i,j}`.
    pub fn coarse(&self) -> BTreeMap<(usize, u32), u64> {
        let mut out = BTreeMap::new();
        for ((i, b), d) in &self.entries {
            *out.entry((*i, b.total_degree())).or_insert(0) += d;
        }
        out
    }

    /// Total Betti numbers `β_i` indexed by `i`.
    pub fn totals(&self) -> Vec<u64> {
        let mut out = vec![0; self.pdim().map_or(0, |p| p + 1)];
        for ((i, _), d) in &self.entries {
            out[*i] += d;
        }
        out
    }

    pub fn pdim(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    /// `max(j - i)` over nonzero entries.
    pub fn reg(&self) -> Option<i64> {
        self.entries
            .keys()
            .map(|(i, b)| b.total_degree() as i64 - *i as i64)
            .max()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn from_points(ring: Arc<Ring>, field: Field, points: Vec<(Multidegree, Vec<u64>)>) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (b, betti) in points {
            for (i, d) in betti.into_iter().enumerate() {
                if d > 0 {
                    entries.insert((i, b.clone()), d);
                }
            }
        }
        BettiTable { ring, field, entries }
    }
}

/// Options for [`betti_table_with`].
#[derive(Debug, Clone, Copy)]
pub struct BettiOptions {
    pub field: Field,
    /// Factor the ideal as a product of ideals in disjoint variables and
    /// convolve the factor tables.
    pub split_products: bool,
    pub caps: Caps,
}

impl BettiOptions {
    pub fn new(field: Field) -> Self {
        BettiOptions {
            field,
            split_products: true,
            caps: Caps::global(),
        }
    }
}

pub fn betti_table(a: &MonomialIdeal, field: Field) -> Result<BettiTable> {
    betti_table_with(a, &BettiOptions::new(field))
}

pub fn betti_table_with(a: &MonomialIdeal, opts: &BettiOptions) -> Result<BettiTable> {
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if opts.split_products {
        let factors = product_factors(a);
        if factors.len() > 1 {
            let mut tables = factors
                .iter()
                .map(|f| betti_table_direct(f, opts))
                .collect::<Result<Vec<_>>>()?;
            let mut acc = tables.remove(0);
            for t in &tables {
                acc = convolve(&acc, t);
            }
            return Ok(acc);
        }
    }
    betti_table_direct(a, opts)
}

fn betti_table_direct(a: &MonomialIdeal, opts: &BettiOptions) -> Result<BettiTable> {
    let lattice = lcm_lattice_capped(a, &opts.caps)?;
    let support = a.support().len();
    Caps::check("support", support, opts.caps.support)?;
    let points: Vec<(Multidegree, Vec<u64>)> = lattice
        .points
        .into_par_iter()
        .map(|b| {
            let betti = betti_at_point(a.gens(), &b, opts.field);
            (b, betti)
        })
        .collect();
    Ok(BettiTable::from_points(a.ring().clone(), opts.field, points))
}

/// `β_{i,b}(a)` for every `i`, at an arbitrary multidegree `b`.
pub fn betti_at(a: &MonomialIdeal, b: &Multidegree, field: Field) -> Result<Vec<u64>> {
    if b.nvars() != a.ring().nvars() {
        return Err(Error::RingMismatch("multidegree length differs from ring".into()));
    }
    Caps::check("support", b.support().len(), Caps::global().support)?;
    Ok(betti_at_point(a.gens(), b, field))
}

/// Betti numbers at `b`, indexed by homological degree, trailing zeros
/// trimmed.
fn betti_at_point(gens: &[Monomial], b: &Multidegree, field: Field) -> Vec<u64> {
    let vertices = b.support();
    let k = vertices.len();
    let full: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    // Face τ is in the complex iff τ ⊆ T_g for some generator g | b, where
    // T_g = {v : g_v < b_v}.
    let mut facets: Vec<u64> = Vec::new();
    for g in gens {
        if !g.divides(b) {
            continue;
        }
        let mut t = 0u64;
        for (bit, &v) in vertices.iter().enumerate() {
            if g.exponent(v) < b.exponent(v) {
                t |= 1 << bit;
            }
        }
        facets.push(t);
    }
    if facets.is_empty() {
        return Vec::new();
    }
    if k == 0 {
        return vec![1];
    }
    facets.sort_unstable();
    facets.dedup();
    // Keep maximal masks only.
    let snapshot = facets.clone();
    facets.retain(|&f| !snapshot.iter().any(|&h| h != f && f & h == f));
    if facets.contains(&full) || facets.iter().fold(full, |acc, &f| acc & f) != 0 {
        // A simplex, or a cone over a common vertex.
        return Vec::new();
    }
    if facets == [0] {
        return vec![1];
    }
    let mut present = vec![false; 1usize << k];
    for &f in &facets {
        present[f as usize] = true;
    }
    for bit in 0..k {
        let step = 1usize << bit;
        for mask in 0..present.len() {
            if mask & step == 0 && present[mask | step] {
                present[mask] = true;
            }
        }
    }
    let mut h = reduced_homology_masks(k, &mut present, field);
    while h.last() == Some(&0) {
        h.pop();
    }
    h
}

/// Reduced homology of the complex whose faces are the set entries of
/// `present` (indexed by bitmask over `k` vertices). Returns
/// `dim H̃_d` at index `d + 1`. `present` is consumed as scratch space.
fn reduced_homology_masks(k: usize, present: &mut [bool], field: Field) -> Vec<u64> {
    let size = 1usize << k;
    // Number of codimension-one cofaces of each present face.
    let mut cof = vec![0u32; size];
    for mask in 0..size {
        if !present[mask] {
            continue;
        }
        for bit in 0..k {
            let up = mask | 1 << bit;
            if up != mask && present[up] {
                cof[mask] += 1;
            }
        }
    }
    let mut queue: Vec<usize> = (0..size).filter(|&m| present[m] && cof[m] == 1).collect();
    let remove = |m: usize, present: &mut [bool], cof: &mut [u32], queue: &mut Vec<usize>| {
        present[m] = false;
        for bit in 0..k {
            if m >> bit & 1 == 1 {
                let down = m & !(1 << bit);
                if present[down] {
                    cof[down] -= 1;
                    if cof[down] == 1 {
                        queue.push(down);
                    }
                }
            }
        }
    };
    // Elementary collapses: a face with a unique coface is removed together
    // with that coface.
    while let Some(s) = queue.pop() {
        if !present[s] || cof[s] != 1 {
            continue;
        }
        let Some(t) = (0..k).map(|bit| s | 1 << bit).find(|&t| t != s && present[t]) else {
            continue;
        };
        remove(t, present, &mut cof, &mut queue);
        remove(s, present, &mut cof, &mut queue);
    }
    // Remaining faces grouped by dimension + 1.
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    for mask in 0..size {
        if present[mask] {
            by_dim[mask.count_ones() as usize].push(mask);
        }
    }
    // ranks[d] = rank of the boundary from faces of size d to size d-1.
    let mut ranks = vec![0usize; k + 2];
    for d in 1..=k {
        if by_dim[d].is_empty() || by_dim[d - 1].is_empty() {
            continue;
        }
        let index: std::collections::HashMap<usize, usize> =
            by_dim[d - 1].iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let rows: Vec<Vec<i64>> = by_dim[d]
            .iter()
            .map(|&m| {
                let mut row = vec![0i64; by_dim[d - 1].len()];
                let mut pos = 0;
                for bit in 0..k {
                    if m >> bit & 1 == 1 {
                        if let Some(&c) = index.get(&(m & !(1 << bit))) {
                            row[c] = if pos % 2 == 0 { 1 } else { -1 };
                        }
                        pos += 1;
                    }
                }
                row
            })
            .collect();
        ranks[d] = linalg::rank(&rows, field);
    }
    (0..=k)
        .map(|d| (by_dim[d].len() - ranks[d] - ranks[d + 1]) as u64)
        .collect()
}

/// Splits `a` into ideals in pairwise disjoint sets of variables whose
/// product is `a`. Returns `[a]` when no split exists.
pub fn product_factors(a: &MonomialIdeal) -> Vec<MonomialIdeal> {
    let support = a.support();
    if support.len() < 2 || support.len() > 16 || a.ngens() < 2 {
        return vec![a.clone()];
    }
    let k = support.len();
    // The first support variable always lies in the first part.
    for mask in 1u32..(1 << (k - 1)) {
        let part1: Vec<usize> = std::iter::once(support[0])
            .chain((0..k - 1).filter(|&j| mask >> j & 1 == 0).map(|j| support[j + 1]))
            .collect();
        let part2: Vec<usize> = (0..k - 1).filter(|&j| mask >> j & 1 == 1).map(|j| support[j + 1]).collect();
        if let Some((f1, f2)) = try_split(a, &part1, &part2) {
            let mut out = product_factors(&f1);
            out.extend(product_factors(&f2));
            return out;
        }
    }
    vec![a.clone()]
}

fn try_split(a: &MonomialIdeal, p1: &[usize], p2: &[usize]) -> Option<(MonomialIdeal, MonomialIdeal)> {
    let n = a.ring().nvars();
    let project = |g: &Monomial, part: &[usize]| {
        let mut m = Monomial::one(n);
        for &v in part {
            m.set_exponent(v, g.exponent(v));
        }
        m
    };
    let s1: HashSet<Monomial> = a.gens().iter().map(|g| project(g, p1)).collect();
    let s2: HashSet<Monomial> = a.gens().iter().map(|g| project(g, p2)).collect();
    if s2.iter().any(Monomial::is_one) || s1.iter().any(Monomial::is_one) {
        return None;
    }
    if s1.len() * s2.len() != a.ngens() {
        return None;
    }
    let f1 = MonomialIdeal::new(a.ring(), s1.into_iter().collect()).ok()?;
    let f2 = MonomialIdeal::new(a.ring(), s2.into_iter().collect()).ok()?;
    Some((f1, f2))
}

/// Betti table of a product of ideals in disjoint variables.
fn convolve(x: &BettiTable, y: &BettiTable) -> BettiTable {
    let mut entries = BTreeMap::new();
    for ((p, b1), d1) in &x.entries {
        for ((q, b2), d2) in &y.entries {
            *entries.entry((p + q, b1.mul(b2))).or_insert(0) += d1 * d2;
        }
    }
    BettiTable {
        ring: x.ring.clone(),
        field: x.field,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> Arc<Ring> {
        Arc::new(Ring::indexed("R", "x", n).unwrap())
    }

    fn ideal(r: &Arc<Ring>, rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(r, rows).unwrap()
    }

    #[test]
    fn lattice_examples() {
        let r = ring(2);
        let l = lcm_lattice(&ideal(&r, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(l.len(), 3);
        let l = lcm_lattice(&ideal(&r, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        let mut got: Vec<Vec<u32>> = l.points().iter().map(|p| p.exponents().to_vec()).collect();
        got.sort();
        assert_eq!(got, vec![vec![0, 2], vec![1, 1], vec![1, 2], vec![2, 0], vec![2, 1], vec![2, 2]]);
        assert!(l.contains(&Monomial::new([2, 1])));
        assert!(!l.contains(&Monomial::new([3, 1])));
    }

    #[test]
    fn lattice_cap() {
        let r = ring(3);
        let m4 = MonomialIdeal::maximal(&r).power(4);
        let caps = Caps {
            lattice: 10,
            ..Caps::default()
        };
        assert!(lcm_lattice_capped(&m4, &caps).unwrap_err().is_cap());
    }

    #[test]
    fn upper_koszul_examples() {
        let r = ring(2);
        let a = ideal(&r, &[&[1, 0], &[0, 1]]);
        let k = upper_koszul(&a, &Monomial::new([1, 1])).unwrap();
        assert_eq!(k.face_sets(), vec![vec![], vec![0], vec![1]]);
        assert_eq!(k.reduced_homology(Field::Rational), vec![0, 1, 0]);
        let g = upper_koszul(&a, &Monomial::new([1, 0])).unwrap();
        assert_eq!(g.faces(), &[0]);
        let v = upper_koszul(&ideal(&r, &[&[2, 0]]), &Monomial::new([1, 1])).unwrap();
        assert!(v.is_void());
    }

    #[test]
    fn koszul_of_maximal_ideal() {
        let r = ring(3);
        let t = betti_table(&MonomialIdeal::maximal(&r), Field::Rational).unwrap();
        let coarse: Vec<_> = t.coarse().into_iter().collect();
        assert_eq!(coarse, vec![((0, 1), 3), ((1, 2), 3), ((2, 3), 1)]);
    }

    #[test]
    fn small_tables() {
        let r = ring(2);
        let t = betti_table(&ideal(&r, &[&[2, 0], &[1, 1]]), Field::Rational).unwrap();
        assert_eq!(t.totals(), vec![2, 1]);
        assert_eq!(t.get(1, &Monomial::new([2, 1])), 1);
        let r4 = ring(4);
        let h = ideal(&r4, &[&[2, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]]);
        let t = betti_table(&h, Field::Prime(32003)).unwrap();
        assert_eq!(t.coarse().get(&(3, 8)), Some(&1));
        assert_eq!(t.reg(), Some(5));
    }

    #[test]
    fn product_split_agrees() {
        let r = ring(4);
        let a = ideal(&r, &[&[2, 0, 0, 0], &[1, 1, 0, 0], &[0, 2, 0, 0]]);
        let b = ideal(&r, &[&[0, 0, 3, 0], &[0, 0, 1, 1]]);
        let p = a.product(&b).unwrap();
        assert_eq!(product_factors(&p).len(), 2);
        let split = betti_table(&p, Field::Rational).unwrap();
        let opts = BettiOptions {
            split_products: false,
            ..BettiOptions::new(Field::Rational)
        };
        assert_eq!(split, betti_table_with(&p, &opts).unwrap());
        // (x0^2, x0x1, x1^2) is itself (x0,x1)^2, which does not split.
        assert_eq!(product_factors(&a).len(), 1);
    }

    #[test]
    fn two_torsion_shows_in_characteristic_two() {
        // Stanley–Reisner-style ideal whose upper Koszul complex at the top
        // degree is the six-vertex real projective plane.
        let r = ring(6);
        let faces: [[usize; 3]; 10] = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5],
        ];
        // Generators x^{1 - τ} for the facets τ give the complex with those
        // facets at b = (1,...,1).
        let gens: Vec<Monomial> = faces
            .iter()
            .map(|f| Monomial::new((0..6).map(|v| u32::from(!f.contains(&v)))))
            .collect();
        let a = MonomialIdeal::new(&r, gens).unwrap();
        let top = Monomial::new([1; 6]);
        let q = betti_at(&a, &top, Field::Rational).unwrap();
        let f2 = betti_at(&a, &top, Field::Prime(2)).unwrap();
        assert!(q.iter().all(|&d| d == 0));
        assert_eq!(f2, vec![0, 0, 1, 1]);
    }
}
