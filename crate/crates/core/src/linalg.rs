//! Exact ranks, reduced row echelon forms and null spaces over ℚ and GF(p).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring::Field;

/// Dense integer matrix given by rows.
pub type IntMatrix = Vec<Vec<i64>>;

/// Rank of an integer matrix over the given field.
pub fn rank(rows: &[Vec<i64>], field: Field) -> usize {
    match field {
        Field::Rational => rank_rational(rows),
        Field::Prime(p) => rank_mod_p(rows, p),
    }
}

/// Rank over ℚ by fraction-free elimination with content removal. Runs in
/// machine integers and restarts with big integers on overflow.
pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let small: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .filter(|r: &Vec<i128>| r.iter().any(|&v| v != 0))
        .collect();
    match rank_i128(small) {
        Some(r) => r,
        None => rank_bigint(rows),
    }
}

fn rank_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        let Some(piv) = (rank..m.len())
            .filter(|&r| m[r][col] != 0)
            .min_by_key(|&r| m[r][col].unsigned_abs())
        else {
            continue;
        };
        m.swap(rank, piv);
        let (top, rest) = m.split_at_mut(rank + 1);
        let p = &top[rank];
        let a = p[col];
        for row in rest.iter_mut() {
            let b = row[col];
            if b == 0 {
                continue;
            }
            let g = a.gcd(&b);
            let (fa, fb) = (a / g, b / g);
            let mut content = 0i128;
            for j in col..ncols {
                let v = row[j].checked_mul(fa)?.checked_sub(p[j].checked_mul(fb)?)?;
                row[j] = v;
                content = content.gcd(&v);
            }
            if content > 1 {
                for v in &mut row[col..] {
                    *v /= content;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

fn rank_bigint(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|&v| v != 0))
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        let Some(piv) = (rank..m.len())
            .filter(|&r| !m[r][col].is_zero())
            .min_by(|&x, &y| m[x][col].abs().cmp(&m[y][col].abs()))
        else {
            continue;
        };
        m.swap(rank, piv);
        let (top, rest) = m.split_at_mut(rank + 1);
        let p = &top[rank];
        let a = p[col].clone();
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = a.gcd(&row[col]);
            let fa = &a / &g;
            let fb = &row[col] / &g;
            let mut content = BigInt::zero();
            for j in col..ncols {
                let v = &row[j] * &fa - &p[j] * &fb;
                content = content.gcd(&v);
                row[j] = v;
            }
            if content > BigInt::one() {
                for v in &mut row[col..] {
                    *v /= &content;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over GF(p).
pub fn rank_mod_p(rows: &[Vec<i64>], p: u32) -> usize {
    let p64 = p as i64;
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v.rem_euclid(p64) as u64).collect())
        .filter(|r: &Vec<u64>| r.iter().any(|&v| v != 0))
        .collect();
    let f = PrimeField::new(p);
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = f.inv(&m[rank][col]);
        for v in &mut m[rank][col..] {
            *v = *v * inv % f.p;
        }
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let c = row[col];
            if c == 0 {
                continue;
            }
            for j in col..ncols {
                row[j] = (row[j] + f.p - c * prow[j] % f.p) % f.p;
            }
        }
        rank += 1;
    }
    rank
}

/// Field arithmetic used by the generic echelon routines.
pub trait FieldOps: Sync {
    type E: Clone + PartialEq + Debug + Send + Sync;
    fn element(&self, v: i64) -> Self::E;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    /// Rational value; prime-field elements map to their representative
    /// in `0..p`.
    fn to_rational(&self, a: &Self::E) -> BigRational;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl FieldOps for Rationals {
    type E = BigRational;
    fn element(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u32) -> PrimeField {
        PrimeField { p: p as u64 }
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }
}

impl FieldOps for PrimeField {
    type E = u64;
    fn element(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        debug_assert!(*a != 0);
        self.pow(*a, self.p - 2)
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
}

/// Reduced row echelon form: nonzero rows with leading ones at `pivots`.
#[derive(Debug, Clone)]
pub struct Rref<E> {
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

pub fn rref<F: FieldOps>(f: &F, mut m: Vec<Vec<F::E>>, ncols: usize) -> Rref<F::E> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| !f.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(r, piv);
        let inv = f.inv(&m[r][col]);
        for v in &mut m[r][col..] {
            *v = f.mul(v, &inv);
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for j in col..ncols {
                if !f.is_zero(&prow[j]) {
                    row[j] = f.sub(&row[j], &f.mul(&c, &prow[j]));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    Rref { rows: m, pivots, ncols }
}

/// Basis of `{v : M v = 0}` for `M` with `ncols` columns, one vector per
/// free column, in increasing free-column order.
pub fn null_space<F: FieldOps>(f: &F, m: Vec<Vec<F::E>>, ncols: usize) -> Vec<Vec<F::E>> {
    let e = rref(f, m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); ncols];
            v[free] = f.element(1);
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                v[p] = f.sub(&f.zero(), &row[free]);
            }
            v
        })
        .collect()
}

/// Incremental basis for a span of vectors, kept in reduced echelon form so
/// that membership tests and coordinate solves are cheap.
#[derive(Debug, Clone)]
pub struct SpanBasis<E> {
    dim: usize,
    /// Reduced rows with their pivot column and the coordinates of each row
    /// in terms of the inserted generators.
    rows: Vec<(usize, Vec<E>, Vec<E>)>,
    ngens: usize,
}

impl<E: Clone + PartialEq + Debug> SpanBasis<E> {
    pub fn new(dim: usize) -> Self {
        SpanBasis {
            dim,
            rows: Vec::new(),
            ngens: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.ngens
    }

    /// Reduces `v` against the basis; returns the remainder and the
    /// coordinates (over inserted generators) of the subtracted part.
    fn reduce<F: FieldOps<E = E>>(&self, f: &F, v: &[E]) -> (Vec<E>, Vec<E>) {
        let mut rem = v.to_vec();
        let mut coords = vec![f.zero(); self.ngens];
        for (p, row, c) in &self.rows {
            let k = rem[*p].clone();
            if f.is_zero(&k) {
                continue;
            }
            for j in 0..self.dim {
                if !f.is_zero(&row[j]) {
                    rem[j] = f.sub(&rem[j], &f.mul(&k, &row[j]));
                }
            }
            for (j, cj) in c.iter().enumerate() {
                if !f.is_zero(cj) {
                    coords[j] = f.add(&coords[j], &f.mul(&k, cj));
                }
            }
        }
        (rem, coords)
    }

    pub fn contains<F: FieldOps<E = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v).0.iter().all(|x| f.is_zero(x))
    }

    /// Adds `v` if it is independent of the current span; returns whether it
    /// was added.
    pub fn insert<F: FieldOps<E = E>>(&mut self, f: &F, v: &[E]) -> bool {
        let (mut rem, mut coords) = self.reduce(f, v);
        let Some(p) = rem.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        // rem = v - Σ coords_j g_j, as a new generator with index ngens.
        for c in coords.iter_mut() {
            *c = f.sub(&f.zero(), c);
        }
        coords.push(f.element(1));
        for (_, _, c) in self.rows.iter_mut() {
            c.push(f.zero());
        }
        let inv = f.inv(&rem[p]);
        for x in rem.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for c in coords.iter_mut() {
            *c = f.mul(c, &inv);
        }
        for (_, row, c) in self.rows.iter_mut() {
            let k = row[p].clone();
            if f.is_zero(&k) {
                continue;
            }
            for j in 0..self.dim {
                row[j] = f.sub(&row[j], &f.mul(&k, &rem[j]));
            }
            for j in 0..c.len() {
                c[j] = f.sub(&c[j], &f.mul(&k, &coords[j]));
            }
        }
        self.rows.push((p, rem, coords));
        self.ngens += 1;
        true
    }

    /// Coordinates of `v` in the inserted generators, if `v` lies in the span.
    pub fn solve<F: FieldOps<E = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        let (rem, coords) = self.reduce(f, v);
        rem.iter().all(|x| f.is_zero(x)).then_some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_agree() {
        let m = vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]];
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_mod_p(&m, 32003), 2);
        let two = vec![vec![2, 0], vec![0, 2]];
        assert_eq!(rank_rational(&two), 2);
        assert_eq!(rank_mod_p(&two, 2), 0);
        assert_eq!(rank_rational(&[]), 0);
        assert_eq!(rank_rational(&[vec![0, 0]]), 0);
        assert_eq!(rank_rational(&[vec![0, 3], vec![0, 5]]), 1);
    }

    #[test]
    fn overflow_falls_back() {
        // Rows of powers make intermediate values blow past i128.
        let rows: Vec<Vec<i64>> = (1..=12)
            .map(|i: i64| (0..12).map(|j| i.pow(j).min(i64::MAX / 4)).collect())
            .collect();
        assert_eq!(rank_bigint(&rows), rank_rational(&rows));
        let big = vec![vec![i64::MAX, 1], vec![1, i64::MAX]];
        assert_eq!(rank_rational(&big), 2);
    }

    #[test]
    fn null_space_and_span() {
        let f = Rationals;
        let m = vec![vec![f.element(1), f.element(1), f.element(0)]];
        let ns = null_space(&f, m, 3);
        assert_eq!(ns.len(), 2);
        let mut span = SpanBasis::new(3);
        for v in &ns {
            assert!(span.insert(&f, v));
        }
        let target = vec![f.element(2), f.element(-2), f.element(5)];
        let c = span.solve(&f, &target).unwrap();
        let mut back = vec![f.zero(); 3];
        for (k, v) in ns.iter().enumerate() {
            for j in 0..3 {
                back[j] = f.add(&back[j], &f.mul(&c[k], &v[j]));
            }
        }
        assert_eq!(back, target);
        assert!(span.solve(&f, &[f.element(1), f.zero(), f.zero()]).is_none());
    }
}
