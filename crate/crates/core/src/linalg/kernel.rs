//! Fraction-free Gauss–Jordan elimination over the integers for rational
//! ranks, kernels and solving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hnf::{hnf_basis, left_kernel};
use super::lattice::Lattice;
use super::matrix::IntMatrix;

/// Reduced echelon form up to row scaling: row `i` has a positive entry at
/// `pivots[i]` and zeros in every other pivot column. Rows are primitive.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

pub fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

pub fn echelon_rows(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    for r in rows.iter_mut() {
        make_primitive(r);
    }
    let mut pivots = Vec::new();
    let mut cur = 0;
    for c in 0..cols {
        if cur == rows.len() {
            break;
        }
        let best = (cur..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
        let Some(b) = best else {
            continue;
        };
        rows.swap(cur, b);
        if rows[cur][c].is_negative() {
            for x in rows[cur].iter_mut() {
                *x = -&*x;
            }
        }
        let piv_row = rows[cur].clone();
        let piv = piv_row[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == cur || row[c].is_zero() {
                continue;
            }
            let g = piv.gcd(&row[c]);
            let a = &piv / &g;
            let b = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(&piv_row) {
                *x = &a * &*x - &b * y;
            }
            make_primitive(row);
        }
        pivots.push(c);
        cur += 1;
    }
    rows.truncate(cur);
    Echelon { rows, pivots, cols }
}

pub fn echelon(m: &IntMatrix) -> Echelon {
    echelon_rows(m.to_rows(), m.cols())
}

pub fn rank(m: &IntMatrix) -> usize {
    echelon(m).pivots.len()
}

impl Echelon {
    /// Primitive integer basis of `{x : E x = 0}`.
    pub fn right_kernel(&self) -> Vec<Vec<BigInt>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let l = self
            .rows
            .iter()
            .zip(&self.pivots)
            .fold(BigInt::one(), |acc, (r, &p)| acc.lcm(&r[p]));
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut x = vec![BigInt::zero(); self.cols];
            x[f] = l.clone();
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                x[p] = -(&r[f] * (&l / &r[p]));
            }
            make_primitive(&mut x);
            out.push(x);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Primitive (not necessarily saturated) basis of `{x : M x = 0}`.
pub fn right_kernel_q(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    echelon(m).right_kernel()
}

/// Primitive basis of `{v : v M = 0}`.
pub fn left_kernel_q(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    right_kernel_q(&m.transpose())
}

/// Saturated integer left kernel `{v in Z^n : v M = 0}` as a lattice.
pub fn kernel_rational(m: &IntMatrix) -> Lattice {
    let n = m.rows();
    if n <= 24 {
        return Lattice::from_hnf(left_kernel(m), BigInt::one());
    }
    // Large inputs: rational kernel, then saturate via the dual.
    let k = left_kernel_q(m);
    if k.is_empty() {
        return Lattice::zero(n);
    }
    let km = IntMatrix::from_rows(n, k);
    let dual = right_kernel_q(&km);
    let sat = if dual.is_empty() {
        IntMatrix::identity(n)
    } else {
        let d = IntMatrix::from_rows(n, dual).transpose();
        left_kernel(&d)
    };
    Lattice::from_hnf(hnf_basis(&sat), BigInt::one())
}
