//! Linear algebra and polynomial arithmetic over prime fields `F_q`, `q < 2^63`.

use rand::Rng;

use crate::arith::{inv_mod, mul_mod};

#[inline]
pub fn add_m(a: u64, b: u64, q: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % q as u128) as u64
}

#[inline]
pub fn sub_m(a: u64, b: u64, q: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        q - (b - a)
    }
}

#[inline]
pub fn neg_m(a: u64, q: u64) -> u64 {
    if a == 0 {
        0
    } else {
        q - a
    }
}

/// Dense matrix over `F_q`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub q: u64,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, q: u64) -> Self {
        ModMatrix {
            rows,
            cols,
            q,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, q: u64) -> Self {
        let mut m = Self::zeros(n, n, q);
        for i in 0..n {
            m.set(i, i, 1 % q);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn from_rows(rows: &[Vec<u64>], cols: usize, q: u64) -> Self {
        let mut m = Self::zeros(rows.len(), cols, q);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x % q);
            }
        }
        m
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.rows);
        let q = self.q;
        let mut out = ModMatrix::zeros(self.rows, other.cols, q);
        for i in 0..self.rows {
            let mut acc = vec![0u128; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    let b = other.get(k, j);
                    if b != 0 {
                        *slot = (*slot + a as u128 * b as u128) % q as u128;
                    }
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.set(i, j, v as u64);
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u64]) -> Vec<u64> {
        let q = self.q;
        let mut acc = vec![0u128; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, slot) in acc.iter_mut().enumerate() {
                let b = self.get(i, j);
                if b != 0 {
                    *slot = (*slot + a as u128 * b as u128) % q as u128;
                }
            }
        }
        acc.into_iter().map(|x| x as u64).collect()
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let q = self.q;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), q);
            for j in c..self.cols {
                let v = mul_mod(self.get(r, j), inv, q);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = sub_m(self.get(i, j), mul_mod(f, self.get(r, j), q), q);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : M x = 0}` (right kernel).
    pub fn right_kernel(&self) -> Vec<Vec<u64>> {
        let q = self.q;
        let mut a = self.clone();
        let pivots = a.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut x = vec![0u64; self.cols];
            x[f] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = neg_m(a.get(i, f), q);
            }
            out.push(x);
        }
        out
    }

    /// Basis of `{x : x M = 0}` (left kernel).
    pub fn left_kernel(&self) -> Vec<Vec<u64>> {
        self.transpose().right_kernel()
    }

    pub fn transpose(&self) -> ModMatrix {
        let mut t = ModMatrix::zeros(self.cols, self.rows, self.q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }
}

/// Polynomials over `F_q` as ascending coefficient vectors without trailing zeros.
pub type ModPoly = Vec<u64>;

pub fn trim(mut f: ModPoly) -> ModPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn deg(f: &[u64]) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn padd(f: &[u64], g: &[u64], q: u64) -> ModPoly {
    let n = f.len().max(g.len());
    trim((0..n)
        .map(|i| add_m(*f.get(i).unwrap_or(&0), *g.get(i).unwrap_or(&0), q))
        .collect())
}

pub fn psub(f: &[u64], g: &[u64], q: u64) -> ModPoly {
    let n = f.len().max(g.len());
    trim((0..n)
        .map(|i| sub_m(*f.get(i).unwrap_or(&0), *g.get(i).unwrap_or(&0), q))
        .collect())
}

pub fn pmul(f: &[u64], g: &[u64], q: u64) -> ModPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u128; f.len() + g.len() - 1];
    let qq = q as u128;
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            let s = &mut acc[i + j];
            *s = (*s + a as u128 * b as u128) % qq;
        }
    }
    trim(acc.into_iter().map(|x| x as u64).collect())
}

pub fn pscale(f: &[u64], c: u64, q: u64) -> ModPoly {
    trim(f.iter().map(|&a| mul_mod(a, c, q)).collect())
}

pub fn monic(f: &[u64], q: u64) -> ModPoly {
    match f.last() {
        None => Vec::new(),
        Some(&lc) => pscale(f, inv_mod(lc, q), q),
    }
}

/// Quotient and remainder; `g` nonzero.
pub fn pdivrem(f: &[u64], g: &[u64], q: u64) -> (ModPoly, ModPoly) {
    let dg = deg(g).expect("division by zero polynomial");
    let mut r = f.to_vec();
    if r.len() <= dg {
        return (Vec::new(), trim(r));
    }
    let inv = inv_mod(g[dg], q);
    let mut quo = vec![0u64; r.len() - dg];
    for k in (0..quo.len()).rev() {
        let c = mul_mod(r[k + dg], inv, q);
        quo[k] = c;
        if c == 0 {
            continue;
        }
        for (j, &gj) in g.iter().enumerate() {
            r[k + j] = sub_m(r[k + j], mul_mod(c, gj, q), q);
        }
    }
    r.truncate(dg);
    (trim(quo), trim(r))
}

pub fn prem(f: &[u64], g: &[u64], q: u64) -> ModPoly {
    pdivrem(f, g, q).1
}

/// Monic gcd.
pub fn pgcd(f: &[u64], g: &[u64], q: u64) -> ModPoly {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let r = prem(&a, &b, q);
        a = b;
        b = r;
    }
    monic(&a, q)
}

pub fn pderiv(f: &[u64], q: u64) -> ModPoly {
    trim(f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &a)| mul_mod(a, i as u64 % q, q))
        .collect())
}

/// `base^e mod m`.
pub fn ppowmod(base: &[u64], mut e: u128, m: &[u64], q: u64) -> ModPoly {
    let mut result: ModPoly = trim(vec![1 % q]);
    let mut b = prem(base, m, q);
    while e > 0 {
        if e & 1 == 1 {
            result = prem(&pmul(&result, &b, q), m, q);
        }
        e >>= 1;
        if e > 0 {
            b = prem(&pmul(&b, &b, q), m, q);
        }
    }
    result
}

pub fn peval(f: &[u64], x: u64, q: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| add_m(mul_mod(acc, x, q), c, q))
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs (product of all irreducible factors of degree d, d).
pub fn ddf(f: &[u64], q: u64) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    let mut f = monic(f, q);
    let x: ModPoly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while let Some(df) = deg(&f) {
        if df < 2 * (d + 1) {
            if df > 0 {
                out.push((f.clone(), df));
            }
            break;
        }
        d += 1;
        h = ppowmod(&h, q as u128, &f, q);
        let g = pgcd(&psub(&h, &x, q), &f, q);
        if deg(&g).unwrap_or(0) > 0 {
            out.push((g.clone(), d));
            f = pdivrem(&f, &g, q).0;
            h = prem(&h, &f, q);
        }
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus), odd `q`: `f` monic squarefree,
/// all irreducible factors of degree `d`. Returns monic factors sorted.
pub fn edf<R: Rng>(f: &[u64], d: usize, q: u64, rng: &mut R) -> Vec<ModPoly> {
    assert!(q % 2 == 1, "equal-degree splitting needs odd characteristic");
    let n = deg(f).unwrap();
    if n == d {
        return vec![monic(f, q)];
    }
    let e = (pow_u128(q, d) - 1) / 2;
    loop {
        let a: ModPoly = trim((0..n).map(|_| rng.gen_range(0..q)).collect());
        if deg(&a).unwrap_or(0) == 0 {
            continue;
        }
        let mut g = pgcd(&a, f, q);
        if deg(&g).unwrap_or(0) == 0 {
            let b = ppowmod(&a, e, f, q);
            g = pgcd(&psub(&b, &[1], q), f, q);
        }
        let dg = deg(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = pdivrem(f, &g, q).0;
            let mut out = edf(&g, d, q, rng);
            out.extend(edf(&h, d, q, rng));
            out.sort();
            return out;
        }
    }
}

fn pow_u128(q: u64, d: usize) -> u128 {
    let mut r: u128 = 1;
    for _ in 0..d {
        r = r.checked_mul(q as u128).expect("q^d overflows u128");
    }
    r
}

/// Complete factorization of a monic squarefree polynomial over `F_q`, q odd.
pub fn factor_squarefree<R: Rng>(f: &[u64], q: u64, rng: &mut R) -> Vec<ModPoly> {
    let mut out = Vec::new();
    for (g, d) in ddf(f, q) {
        out.extend(edf(&g, d, q, rng));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Roots in `F_q` of a nonzero polynomial, sorted, without multiplicity.
pub fn roots<R: Rng>(f: &[u64], q: u64, rng: &mut R) -> Vec<u64> {
    let f = monic(f, q);
    if deg(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    if q < 64 {
        return (0..q).filter(|&x| peval(&f, x, q) == 0).collect();
    }
    let xq = ppowmod(&[0, 1], q as u128, &f, q);
    let g = pgcd(&psub(&xq, &[0, 1], q), &f, q);
    if deg(&g).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut rs: Vec<u64> = edf(&g, 1, q, rng)
        .into_iter()
        .map(|l| neg_m(l[0], q))
        .collect();
    rs.sort_unstable();
    rs
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factor_x4_minus_1_mod_13() {
        let q = 13;
        let f = vec![q - 1, 0, 0, 0, 1];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = factor_squarefree(&f, q, &mut rng);
        assert_eq!(fs.len(), 4);
        let prod = fs.iter().fold(vec![1], |acc, g| pmul(&acc, g, q));
        assert_eq!(prod, f);
        assert_eq!(roots(&f, q, &mut rng), vec![1, 5, 8, 12]);
    }

    #[test]
    fn ddf_separates_degrees() {
        let q = 7;
        // (x^2+1)(x-3) mod 7; x^2+1 is irreducible since -1 is a non-residue.
        let f = pmul(&[1, 0, 1], &[4, 1], q);
        let parts = ddf(&f, q);
        assert_eq!(parts, vec![(vec![4, 1], 1), (vec![1, 0, 1], 2)]);
    }

    #[test]
    fn kernel_mod_p() {
        let m = ModMatrix::from_rows(&[vec![1, 1], vec![1, 1]], 2, 5);
        let k = m.left_kernel();
        assert_eq!(k, vec![vec![4, 1]]);
        assert_eq!(m.vec_mul(&k[0]), vec![0, 0]);
    }
}
