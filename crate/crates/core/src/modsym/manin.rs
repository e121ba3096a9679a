//! Manin-symbol presentation of the plus quotient of weight-2 modular symbols
//! for `Gamma_0(M)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::p1::P1List;
use crate::error::{Error, Result};

/// Free generators of the plus quotient together with the map sending every
/// Manin symbol to its coordinates (numerators over a common denominator).
#[derive(Clone, Debug)]
pub struct ManinPresentation {
    p1: P1List,
    gens: Vec<usize>,
    qmap: Vec<Vec<(u32, i64)>>,
    den: i64,
}

struct SignedUnionFind {
    parent: Vec<usize>,
    sign: Vec<i8>,
    zero: Vec<bool>,
}

impl SignedUnionFind {
    fn new(n: usize) -> Self {
        SignedUnionFind {
            parent: (0..n).collect(),
            sign: vec![1; n],
            zero: vec![false; n],
        }
    }

    /// `(root, s)` with `x_i = s * x_root`.
    fn find(&mut self, i: usize) -> (usize, i8) {
        let p = self.parent[i];
        if p == i {
            return (i, 1);
        }
        let (r, s) = self.find(p);
        self.parent[i] = r;
        self.sign[i] *= s;
        (r, self.sign[i])
    }

    /// Imposes `x_i = s * x_j`.
    fn union(&mut self, i: usize, j: usize, s: i8) {
        let (ri, si) = self.find(i);
        let (rj, sj) = self.find(j);
        if ri == rj {
            if si != s * sj {
                self.zero[ri] = true;
            }
            return;
        }
        // x_ri = si * s * sj * x_rj
        let rel = si * s * sj;
        let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
        self.parent[hi] = lo;
        self.sign[hi] = rel;
        self.zero[lo] = self.zero[lo] || self.zero[hi];
    }
}

type SparseRow = BTreeMap<usize, BigRational>;

impl ManinPresentation {
    pub fn new(m: u64) -> Result<Self> {
        let p1 = P1List::new(m)?;
        let n = p1.len();
        let mut uf = SignedUnionFind::new(n);
        for i in 0..n {
            uf.union(i, p1.apply_s(i), -1);
            uf.union(i, p1.apply_i(i), 1);
        }
        // Columns: non-zero classes, ordered by root index.
        let mut col_of = vec![usize::MAX; n];
        let mut roots = Vec::new();
        for i in 0..n {
            let (r, _) = uf.find(i);
            if r == i && !uf.zero[i] {
                col_of[i] = roots.len();
                roots.push(i);
            }
        }
        let ncols = roots.len();

        let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for i in 0..n {
            let t1 = p1.apply_t(i);
            let t2 = p1.apply_t(t1);
            if i > t1 || i > t2 {
                continue;
            }
            let mut row = SparseRow::new();
            for k in [i, t1, t2] {
                let (r, s) = uf.find(k);
                if uf.zero[r] {
                    continue;
                }
                let e = row.entry(col_of[r]).or_insert_with(BigRational::zero);
                *e += BigRational::from_integer(BigInt::from(s));
            }
            row.retain(|_, v| !v.is_zero());
            reduce_and_insert(&mut pivots, row);
        }

        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains_key(c)).collect();
        let mut free_pos = vec![usize::MAX; ncols];
        for (k, &c) in free.iter().enumerate() {
            free_pos[c] = k;
        }
        // Each column expressed in the free basis.
        let mut col_expr: Vec<Vec<(u32, BigRational)>> = vec![Vec::new(); ncols];
        for c in 0..ncols {
            col_expr[c] = match pivots.get(&c) {
                None => vec![(free_pos[c] as u32, BigRational::one())],
                Some(row) => row
                    .iter()
                    .filter(|(&k, _)| k != c)
                    .map(|(&k, v)| (free_pos[k] as u32, -v.clone()))
                    .collect(),
            };
        }
        let den = col_expr
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
        let den_i = den
            .to_i64()
            .ok_or_else(|| Error::Computation("relation denominators too large".into()))?;
        let mut qmap = Vec::with_capacity(n);
        for i in 0..n {
            let (r, s) = uf.find(i);
            if uf.zero[r] {
                qmap.push(Vec::new());
                continue;
            }
            let mut v = Vec::new();
            for (k, q) in &col_expr[col_of[r]] {
                let num = (q.numer() * (&den / q.denom()) * BigInt::from(s))
                    .to_i64()
                    .ok_or_else(|| Error::Computation("relation coefficients too large".into()))?;
                v.push((*k, num));
            }
            qmap.push(v);
        }
        let gens = free.iter().map(|&c| roots[c]).collect();
        Ok(ManinPresentation {
            p1,
            gens,
            qmap,
            den: den_i,
        })
    }

    pub fn p1(&self) -> &P1List {
        &self.p1
    }

    pub fn level(&self) -> u64 {
        self.p1.level()
    }

    /// Dimension of the plus quotient.
    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    /// P1 index of the `k`-th free generator.
    pub fn generator(&self, k: usize) -> usize {
        self.gens[k]
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    /// Coordinates of the Manin symbol with P1 index `i`, as numerators over [`Self::den`].
    pub fn coords(&self, i: usize) -> &[(u32, i64)] {
        &self.qmap[i]
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// Dense coordinate numerators for an integer combination of symbols.
    pub fn project_counts(&self, counts: &[i64]) -> Vec<BigInt> {
        let mut acc = vec![0i128; self.dim()];
        for (i, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(k, v) in &self.qmap[i] {
                acc[k as usize] += c as i128 * v as i128;
            }
        }
        acc.into_iter().map(BigInt::from).collect()
    }
}

fn reduce_and_insert(pivots: &mut BTreeMap<usize, SparseRow>, mut row: SparseRow) {
    let hits: Vec<usize> = row.keys().filter(|c| pivots.contains_key(c)).copied().collect();
    for c in hits {
        let Some(f) = row.get(&c).cloned() else {
            continue;
        };
        for (k, v) in &pivots[&c] {
            let e = row.entry(*k).or_insert_with(BigRational::zero);
            *e -= &f * v;
        }
        row.retain(|_, v| !v.is_zero());
    }
    let Some((&p, lead)) = row.iter().next_back() else {
        return;
    };
    let inv = lead.recip();
    for v in row.values_mut() {
        *v *= &inv;
    }
    for other in pivots.values_mut() {
        if let Some(f) = other.get(&p).cloned() {
            for (k, v) in &row {
                let e = other.entry(*k).or_insert_with(BigRational::zero);
                *e -= &f * v;
            }
            other.retain(|_, v| !v.is_zero());
        }
    }
    debug_assert!(row[&p].is_one() && !row[&p].is_negative());
    pivots.insert(p, row);
}
