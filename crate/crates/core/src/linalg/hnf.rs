//! Row Hermite normal form over the integers.
//!
//! Convention: upper echelon, pivots positive, entries above a pivot reduced
//! into `[0, pivot)`, zero rows dropped.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Incremental HNF of a row lattice in `Z^n`.
///
/// Once the lattice reaches full rank its determinant `d` is used as a
/// working modulus (`d Z^n` lies in the lattice), which keeps entries bounded.
#[derive(Clone, Debug)]
pub struct HnfBuilder {
    n: usize,
    rows: Vec<Option<Vec<BigInt>>>,
    modulus: Option<BigInt>,
    auto_modulus: bool,
}

impl HnfBuilder {
    pub fn new(n: usize) -> Self {
        HnfBuilder {
            n,
            rows: vec![None; n],
            modulus: None,
            auto_modulus: true,
        }
    }

    /// Lattice seeded with `m Z^n`; `m` must be positive.
    pub fn with_modulus(n: usize, m: BigInt) -> Self {
        assert!(m.is_positive());
        let mut rows = Vec::with_capacity(n);
        for j in 0..n {
            let mut r = vec![BigInt::zero(); n];
            r[j] = m.clone();
            rows.push(Some(r));
        }
        HnfBuilder {
            n,
            rows,
            modulus: Some(m),
            auto_modulus: true,
        }
    }

    /// Disables the automatic switch to determinant-modular reduction.
    pub fn without_auto_modulus(mut self) -> Self {
        self.auto_modulus = false;
        self
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.n
    }

    pub fn pivot(&self, j: usize) -> Option<&BigInt> {
        self.rows[j].as_ref().map(|r| &r[j])
    }

    /// Absolute determinant (index in `Z^n`) for a full-rank lattice.
    pub fn det(&self) -> Option<BigInt> {
        if !self.is_full_rank() {
            return None;
        }
        Some(
            self.rows
                .iter()
                .map(|r| r.as_ref().unwrap())
                .enumerate()
                .fold(BigInt::one(), |acc, (j, r)| acc * &r[j]),
        )
    }

    fn reduce_mod(&self, v: &mut [BigInt], from: usize) {
        if let Some(m) = &self.modulus {
            for x in v[from..].iter_mut() {
                if x.is_negative() || &*x >= m {
                    *x = x.mod_floor(m);
                }
            }
        }
    }

    /// Membership test.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.n);
        let mut v = v.to_vec();
        self.reduce_mod(&mut v, 0);
        for j in 0..self.n {
            if v[j].is_zero() {
                continue;
            }
            let Some(row) = &self.rows[j] else {
                return false;
            };
            let (q, r) = v[j].div_mod_floor(&row[j]);
            if !r.is_zero() {
                return false;
            }
            for k in j..self.n {
                if !row[k].is_zero() {
                    v[k] -= &q * &row[k];
                }
            }
            self.reduce_mod(&mut v, j + 1);
        }
        true
    }

    /// Adds `v` to the generating set. Returns whether the lattice grew.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.n);
        if self.contains(v) {
            return false;
        }
        let mut v = v.to_vec();
        self.reduce_mod(&mut v, 0);
        for j in 0..self.n {
            if v[j].is_zero() {
                continue;
            }
            match self.rows[j].take() {
                None => {
                    if v[j].is_negative() {
                        for x in v.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    self.rows[j] = Some(v);
                    self.after_growth();
                    return true;
                }
                Some(row) => {
                    let a = &row[j];
                    let b = &v[j];
                    let eg = a.extended_gcd(b);
                    let (mut g, mut s, mut t) = (eg.gcd, eg.x, eg.y);
                    if g.is_negative() {
                        g = -g;
                        s = -s;
                        t = -t;
                    }
                    let a_g = a / &g;
                    let b_g = b / &g;
                    let mut new_row = Vec::with_capacity(self.n);
                    let mut rest = Vec::with_capacity(self.n);
                    for k in 0..self.n {
                        let (r, x) = (&row[k], &v[k]);
                        new_row.push(&s * r + &t * x);
                        rest.push(&a_g * x - &b_g * r);
                    }
                    debug_assert!(rest[j].is_zero());
                    self.reduce_mod(&mut new_row, j + 1);
                    self.reduce_mod(&mut rest, j + 1);
                    self.rows[j] = Some(new_row);
                    v = rest;
                }
            }
        }
        self.after_growth();
        true
    }

    fn after_growth(&mut self) {
        if self.auto_modulus && self.is_full_rank() {
            let d = self.det().unwrap();
            self.modulus = Some(d);
            for j in 0..self.n {
                let mut r = self.rows[j].take().unwrap();
                self.reduce_mod(&mut r, j + 1);
                self.rows[j] = Some(r);
            }
        }
    }

    /// Canonical HNF basis (rank × n).
    pub fn to_matrix(&self) -> IntMatrix {
        let mut rows: Vec<(usize, Vec<BigInt>)> = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(j, r)| r.clone().map(|r| (j, r)))
            .collect();
        let k = rows.len();
        for i in (0..k).rev() {
            for l in i + 1..k {
                let (pc, prow) = (rows[l].0, rows[l].1.clone());
                let q = rows[i].1[pc].div_floor(&prow[pc]);
                if !q.is_zero() {
                    for c in pc..self.n {
                        if !prow[c].is_zero() {
                            let d = &q * &prow[c];
                            rows[i].1[c] -= d;
                        }
                    }
                }
            }
        }
        IntMatrix::from_rows(self.n, rows.into_iter().map(|(_, r)| r).collect())
    }

    /// Pivot columns in increasing order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.rows[j].is_some()).collect()
    }
}

/// Row HNF of `m` together with a unimodular `u` such that `u * m` equals `h`
/// followed by zero rows. `u` is square of size `m.rows()`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (r, c) = (m.rows(), m.cols());
    let mut b = HnfBuilder::new(c + r).without_auto_modulus();
    for i in 0..r {
        let mut row = m.row(i).to_vec();
        row.extend((0..r).map(|k| if k == i { BigInt::one() } else { BigInt::zero() }));
        b.insert(&row);
    }
    let aug = b.to_matrix();
    let mut h_rows = Vec::new();
    let mut u_rows = Vec::new();
    for i in 0..aug.rows() {
        let row = aug.row(i);
        if row[..c].iter().any(|x| !x.is_zero()) {
            h_rows.push(row[..c].to_vec());
        }
        u_rows.push(row[c..].to_vec());
    }
    (
        IntMatrix::from_rows(c, h_rows),
        IntMatrix::from_rows(r, u_rows),
    )
}

/// HNF basis only (no transform); uses modular reduction once full rank.
pub fn hnf_basis(m: &IntMatrix) -> IntMatrix {
    let mut b = HnfBuilder::new(m.cols());
    for i in 0..m.rows() {
        b.insert(m.row(i));
    }
    b.to_matrix()
}

/// Saturated integer left kernel `{v : v m = 0}` in HNF.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(m);
    let rank = h.rows();
    let rows: Vec<Vec<BigInt>> = (rank..u.rows()).map(|i| u.row(i).to_vec()).collect();
    let k = IntMatrix::from_rows(m.rows(), rows);
    hnf_basis(&k)
}

pub fn is_hnf(h: &IntMatrix) -> bool {
    let mut last: Option<usize> = None;
    let mut pivots = Vec::new();
    for i in 0..h.rows() {
        let row = h.row(i);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if last.is_some_and(|l| p <= l) || !row[p].is_positive() {
            return false;
        }
        last = Some(p);
        pivots.push(p);
    }
    for (k, &p) in pivots.iter().enumerate() {
        let piv = &h[(k, p)];
        for i in 0..k {
            let x = &h[(i, p)];
            if x.is_negative() || x >= piv {
                return false;
            }
        }
    }
    true
}
