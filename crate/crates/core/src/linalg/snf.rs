use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::hnf::hnf_basis;
use super::matrix::IntMatrix;

/// Nonzero elementary divisors `d1 | d2 | ...` of `m`, positive.
pub fn snf(m: &IntMatrix) -> Vec<BigInt> {
    // Starting from the HNF keeps the working matrix small and of full row rank.
    let h = hnf_basis(m);
    let (r, c) = (h.rows(), h.cols());
    let mut a: Vec<Vec<BigInt>> = h.to_rows();
    let mut out = Vec::with_capacity(r);
    for k in 0..r {
        loop {
            // Smallest nonzero entry of the remaining block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(k) {
                for (j, x) in row.iter().enumerate().skip(k) {
                    if !x.is_zero()
                        && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return out;
            };
            a.swap(k, bi);
            for row in a.iter_mut() {
                row.swap(k, bj);
            }
            let piv = a[k][k].clone();
            let mut clean = true;
            for i in k + 1..r {
                let q = a[i][k].div_floor(&piv);
                if !q.is_zero() {
                    for j in k..c {
                        let d = &q * &a[k][j];
                        a[i][j] -= d;
                    }
                }
                if !a[i][k].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..c {
                let q = a[k][j].div_floor(&piv);
                if !q.is_zero() {
                    for i in k..r {
                        let d = &q * &a[i][k];
                        a[i][j] -= d;
                    }
                }
                if !a[k][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility by folding an offending row into row k.
            let bad = (k + 1..r).find(|&i| (k + 1..c).any(|j| !a[i][j].is_zero() && !(&a[i][j] % &piv).is_zero()));
            match bad {
                Some(i) => {
                    for j in k..c {
                        let x = a[i][j].clone();
                        a[k][j] += x;
                    }
                }
                None => break,
            }
        }
        out.push(a[k][k].abs());
    }
    out
}
