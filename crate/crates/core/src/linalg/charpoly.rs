//! Characteristic polynomials by Hessenberg reduction modulo word-size primes
//! and Chinese remaindering against a coefficient bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{big_mod_u64, binomial, ceil_sqrt, inv_mod, large_primes, mul_mod, symmetric_mod};
use crate::error::{Error, Result};

use super::matrix::IntMatrix;
use super::modp::{sub_m, ModMatrix};
use super::poly::UniPoly;

/// Characteristic polynomial `det(x I - M)` over `F_q`, ascending coefficients.
pub fn charpoly_mod(m: &ModMatrix) -> Vec<u64> {
    let n = m.rows;
    let q = m.q;
    let mut h = m.clone();
    for j in 0..n.saturating_sub(2) {
        if h.get(j + 1, j) == 0 {
            if let Some(i) = (j + 2..n).find(|&i| h.get(i, j) != 0) {
                for c in 0..n {
                    h.data.swap(i * n + c, (j + 1) * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + j + 1);
                }
            }
        }
        let piv = h.get(j + 1, j);
        if piv == 0 {
            continue;
        }
        let inv = inv_mod(piv, q);
        for i in j + 2..n {
            let u = mul_mod(h.get(i, j), inv, q);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let v = sub_m(h.get(i, c), mul_mod(u, h.get(j + 1, c), q), q);
                h.set(i, c, v);
            }
            for r in 0..n {
                let v = (h.get(r, j + 1) as u128 + mul_mod(u, h.get(r, i), q) as u128) % q as u128;
                h.set(r, j + 1, v as u64);
            }
        }
    }
    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % q;
            next[i] = sub_m(next[i], mul_mod(c, h.get(k, k), q), q);
        }
        let mut t = 1u64;
        for i in (0..k).rev() {
            t = mul_mod(t, h.get(i + 1, i), q);
            if t == 0 {
                break;
            }
            let coef = mul_mod(t, h.get(i, k), q);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = sub_m(next[d], mul_mod(coef, c, q), q);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Bound on the absolute values of the coefficients of `charpoly(m)`.
pub fn coefficient_bound(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut norms: Vec<BigInt> = (0..n)
        .map(|i| {
            let s: BigInt = m.row(i).iter().map(|x| x * x).sum();
            ceil_sqrt(&s).max(BigInt::one())
        })
        .collect();
    norms.sort_by(|a, b| b.cmp(a));
    let mut best = BigInt::one();
    let mut prod = BigInt::one();
    for (k, r) in norms.iter().enumerate() {
        prod *= r;
        let b = binomial(n as u64, k as u64 + 1) * &prod;
        if b > best {
            best = b;
        }
    }
    best
}

/// Exact characteristic polynomial of a square integer matrix.
pub fn charpoly(m: &IntMatrix) -> Result<UniPoly> {
    let bound = coefficient_bound(m);
    charpoly_with_bound(m, &bound)
}

/// Same, with a caller-supplied bound on the coefficient sizes.
pub fn charpoly_with_bound(m: &IntMatrix, bound: &BigInt) -> Result<UniPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let target = bound * 2 + 1;
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut count = 16;
    loop {
        for q in large_primes(count).into_iter().skip(count - 16) {
            if modulus > target {
                break;
            }
            let mm = ModMatrix {
                rows: n,
                cols: n,
                q,
                data: (0..n * n)
                    .map(|k| big_mod_u64(&m[(k / n, k % n)], q))
                    .collect(),
            };
            let cp = charpoly_mod(&mm);
            let qb = BigInt::from(q);
            let inv = BigInt::from(inv_mod(big_mod_u64(&modulus, q), q));
            for (r, &c) in residues.iter_mut().zip(&cp) {
                let diff = (BigInt::from(c) - &*r).mod_floor(&qb);
                let t = (diff * &inv).mod_floor(&qb);
                *r += &modulus * t;
            }
            modulus *= qb;
        }
        if modulus > target {
            break;
        }
        count += 16;
    }
    Ok(UniPoly::new(
        residues.iter().map(|r| symmetric_mod(r, &modulus)).collect(),
    ))
}

/// Characteristic polynomial of `m / den`, which must have integer coefficients.
pub fn charpoly_scaled(m: &IntMatrix, den: &BigInt, bound: Option<&BigInt>) -> Result<UniPoly> {
    let n = m.rows();
    let raw = match bound {
        // A bound for m/den scales by den^n at worst.
        Some(b) => charpoly_with_bound(m, &(b * den.pow(n as u32)))?,
        None => charpoly(m)?,
    };
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let d = den.pow((n - i) as u32);
        let (c, r) = raw.coeff(i).div_rem(&d);
        if !r.is_zero() {
            return Err(Error::Invariant(
                "characteristic polynomial is not integral".into(),
            ));
        }
        out.push(c);
    }
    Ok(UniPoly::new(out))
}

/// Evaluates a polynomial at a square matrix (Horner).
pub fn eval_at_matrix(f: &UniPoly, m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let mut acc = IntMatrix::zeros(n, n);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(m);
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    acc
}
