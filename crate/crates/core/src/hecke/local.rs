//! The Eisenstein local factor of `T / p^k`, its minimal number of ideal
//! generators and the Hilbert-Samuel multiplicity of `J`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::algebra::{basis_rows, colength, StructAlgebra};
use crate::arith::big_mod_u64;
use crate::error::{Error, Result};
use crate::linalg::modp::ModMatrix;

/// Extra precision over `val_p(n0)` in the first attempt.
pub const KAPPA_MARGIN: u32 = 6;
const KAPPA_RETRIES: u32 = 12;
const HILBERT_WINDOW: usize = 3;
const HILBERT_MAX: usize = 64;

#[derive(Clone, Debug)]
pub struct LocalAlgebra {
    p: u64,
    kappa: u32,
    algebra: StructAlgebra,
    j_gens: Vec<Vec<BigInt>>,
    idempotent: Vec<BigInt>,
}

fn to_modp(v: &[BigInt], p: u64) -> Vec<u64> {
    v.iter().map(|x| big_mod_u64(x, p)).collect()
}

fn mult_matrix_modp(alg: &StructAlgebra, x: &[BigInt], p: u64) -> ModMatrix {
    let rows: Vec<Vec<u64>> = (0..alg.rank()).map(|k| to_modp(&alg.mul_basis(x, k), p)).collect();
    ModMatrix::from_rows(&rows, alg.rank(), p)
}

fn mat_pow(m: &ModMatrix, mut e: usize) -> ModMatrix {
    let mut base = m.clone();
    let mut acc = ModMatrix::identity(m.rows, m.q);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        e >>= 1;
    }
    acc
}

/// Row-space basis of a matrix over `F_p`.
fn row_basis(m: &ModMatrix) -> Vec<Vec<u64>> {
    let mut a = m.clone();
    let r = a.rref().len();
    (0..r).map(|i| a.row(i).to_vec()).collect()
}

/// Coefficients `c` with `sum c_i rows_i = target` over `F_p`.
fn solve_left(rows: &[Vec<u64>], target: &[u64], p: u64) -> Option<Vec<u64>> {
    let (m, n) = (rows.len(), target.len());
    let mut a = ModMatrix::zeros(n, m + 1, p);
    for (i, r) in rows.iter().enumerate() {
        for j in 0..n {
            a.set(j, i, r[j]);
        }
    }
    for j in 0..n {
        a.set(j, m, target[j] % p);
    }
    let piv = a.rref();
    if piv.contains(&m) {
        return None;
    }
    let mut c = vec![0; m];
    for (i, &col) in piv.iter().enumerate() {
        c[col] = a.get(i, m);
    }
    Some(c)
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let eg = a.mod_floor(m).extended_gcd(m);
    eg.gcd.is_one().then(|| eg.x.mod_floor(m))
}

/// Inverse of a square matrix over `Z / m` whose determinant is a unit.
fn inverse_mod(s: &[Vec<BigInt>], m: &BigInt) -> Option<Vec<Vec<BigInt>>> {
    let r = s.len();
    let mut a: Vec<Vec<BigInt>> = s
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v: Vec<BigInt> = row.iter().map(|x| x.mod_floor(m)).collect();
            v.extend((0..r).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            v
        })
        .collect();
    for c in 0..r {
        let (pr, inv) = (c..r).find_map(|i| inv_mod_big(&a[i][c], m).map(|v| (i, v)))?;
        a.swap(pr, c);
        for x in a[c].iter_mut() {
            *x = (&*x * &inv).mod_floor(m);
        }
        let pivot_row = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = (&*x - &f * y).mod_floor(m);
            }
        }
    }
    Some(a.into_iter().map(|row| row[r..].to_vec()).collect())
}

impl LocalAlgebra {
    /// The factor of `alg / p^kappa` on which every element of `j_gens` is
    /// nilpotent mod `p`, cut out by a lifted idempotent.
    pub fn new(alg: &StructAlgebra, j_gens: &[Vec<BigInt>], p: u64, kappa: u32) -> Result<Self> {
        let n = alg.rank();
        let modulus = BigInt::from(p).pow(kappa);
        // Mod p: Eisenstein block = common generalized kernel, complement = sum of images.
        let powers: Vec<ModMatrix> = j_gens.iter().map(|g| mat_pow(&mult_matrix_modp(alg, g, p), n)).collect();
        let mut stacked_h = ModMatrix::zeros(n, n * powers.len().max(1), p);
        let mut stacked_v = ModMatrix::zeros(n * powers.len(), n, p);
        for (k, pm) in powers.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    stacked_h.set(i, k * n + j, pm.get(i, j));
                    stacked_v.set(k * n + i, j, pm.get(i, j));
                }
            }
        }
        let block = stacked_h.left_kernel();
        let complement = row_basis(&stacked_v);
        if block.is_empty() {
            return Err(Error::Computation(format!("{p} is not an Eisenstein prime")));
        }
        if block.len() + complement.len() != n {
            return Err(Error::Invariant("Eisenstein block is not a direct factor mod p".into()));
        }
        let mut all = block.clone();
        all.extend(complement);
        let c = solve_left(&all, &to_modp(alg.one(), p), p)
            .ok_or_else(|| Error::Invariant("idempotent decomposition failed".into()))?;
        let mut e = vec![BigInt::zero(); n];
        for (ci, v) in c.iter().zip(&block) {
            for (x, &y) in e.iter_mut().zip(v) {
                *x += BigInt::from(ci * y % p);
            }
        }

        let big = StructAlgebra::new(alg.structure_constants().to_vec(), alg.one().to_vec(), Some(modulus.clone()));
        let mut e = big.reduced(&e);
        let mut stable = false;
        for _ in 0..2 * (kappa as usize) + 4 {
            let e2 = big.mul(&e, &e);
            if e2 == e {
                stable = true;
                break;
            }
            let e3 = big.mul(&e2, &e);
            e = big.add(&big.scale(&e2, &BigInt::from(3)), &big.scale(&e3, &BigInt::from(-2)));
        }
        if !stable {
            return Err(Error::Precision(format!("idempotent did not stabilize at precision {p}^{kappa}")));
        }

        // Basis of e T: the first e b_k independent mod p.
        let r = block.len();
        let mut chosen: Vec<Vec<BigInt>> = Vec::new();
        let mut chosen_p: Vec<Vec<u64>> = Vec::new();
        for k in 0..n {
            let v = big.mul_basis(&e, k);
            let mut trial = chosen_p.clone();
            trial.push(to_modp(&v, p));
            if ModMatrix::from_rows(&trial, n, p).rank() == trial.len() {
                chosen_p = trial;
                chosen.push(v);
                if chosen.len() == r {
                    break;
                }
            }
        }
        if chosen.len() != r {
            return Err(Error::Invariant("local factor has the wrong rank".into()));
        }
        let mut vp = ModMatrix::from_rows(&chosen_p, n, p);
        let cols = vp.rref();
        let s: Vec<Vec<BigInt>> = chosen.iter().map(|v| cols.iter().map(|&c| v[c].clone()).collect()).collect();
        let s_inv = inverse_mod(&s, &modulus).ok_or_else(|| Error::Invariant("singular local basis".into()))?;
        let coords = |x: &[BigInt]| -> Result<Vec<BigInt>> {
            let xc: Vec<BigInt> = cols.iter().map(|&c| x[c].clone()).collect();
            let a: Vec<BigInt> = (0..r)
                .map(|j| xc.iter().zip(&s_inv).map(|(xi, row)| xi * &row[j]).sum::<BigInt>().mod_floor(&modulus))
                .collect();
            let mut back = vec![BigInt::zero(); n];
            for (ai, v) in a.iter().zip(&chosen) {
                for (b, y) in back.iter_mut().zip(v) {
                    *b += ai * y;
                }
            }
            if big.reduced(&back) != big.reduced(x) {
                return Err(Error::Invariant("element outside the local factor".into()));
            }
            Ok(a)
        };
        let mut mult = vec![vec![Vec::new(); r]; r];
        for i in 0..r {
            for j in 0..r {
                mult[i][j] = coords(&big.mul(&chosen[i], &chosen[j]))?;
            }
        }
        let one = coords(&e)?;
        let local_j = j_gens
            .iter()
            .map(|g| coords(&big.mul(&e, g)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LocalAlgebra {
            p,
            kappa,
            algebra: StructAlgebra::new(mult, one, Some(modulus)),
            j_gens: local_j,
            idempotent: e,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    /// Rank over `Z / p^kappa`.
    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn algebra(&self) -> &StructAlgebra {
        &self.algebra
    }

    /// Image of `J` (ideal generators in local coordinates).
    pub fn ideal_generators(&self) -> &[Vec<BigInt>] {
        &self.j_gens
    }

    /// The idempotent in the coordinates of the global algebra, mod `p^kappa`.
    pub fn idempotent(&self) -> &[BigInt] {
        &self.idempotent
    }

    /// `length(T_m / (I + p^kappa))`.
    fn colen(&self, b: &crate::linalg::HnfBuilder) -> u32 {
        colength(b, self.p).expect("lattices contain p^kappa")
    }

    /// `length(T_m / J_m)`.
    pub fn colength_j(&self) -> u32 {
        self.colen(&self.algebra.ideal(&self.j_gens))
    }

    /// `dim J / (p J + J^2)`, exact when `2 v <= kappa` with `p^v` in `J`.
    pub fn minimal_generators(&self) -> u32 {
        let j = self.algebra.ideal(&self.j_gens);
        let rows = basis_rows(&j);
        let mut mj = self.algebra.ideal_product(&rows, &self.j_gens);
        let p = BigInt::from(self.p);
        for r in &rows {
            mj.insert(&self.algebra.scale(r, &p));
        }
        self.colen(&mj) - self.colen(&j)
    }

    /// `length(J^i / J^(i+1))` for `i` with `(i + 1) v <= kappa`.
    pub fn hilbert_function(&self, v: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let r = self.rank();
        let identity: Vec<Vec<BigInt>> = (0..r)
            .map(|i| (0..r).map(|j| BigInt::from((i == j) as u8)).collect())
            .collect();
        let mut cur = self.algebra.span(&identity);
        let mut prev_len = 0;
        for i in 0..HILBERT_MAX {
            if (i as u32 + 1) * v > self.kappa {
                break;
            }
            let next = self.algebra.ideal_product(&basis_rows(&cur), &self.j_gens);
            let len = self.colen(&next);
            out.push(len - prev_len);
            prev_len = len;
            cur = next;
        }
        out
    }
}

/// Integer invariants of the Eisenstein local factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalInvariants {
    pub kappa: u32,
    pub local_rank: usize,
    pub minimal_generators: u32,
    pub hilbert_function: Vec<u32>,
    pub multiplicity: u32,
}

fn stable_value(h: &[u32]) -> Option<u32> {
    if h.len() < HILBERT_WINDOW {
        return None;
    }
    let tail = &h[h.len() - HILBERT_WINDOW..];
    tail.iter().all(|&x| x == tail[0]).then_some(tail[0])
}

fn invariants_at(alg: &StructAlgebra, j_gens: &[Vec<BigInt>], p: u64, v: u32, kappa: u32) -> Result<Option<LocalInvariants>> {
    let local = LocalAlgebra::new(alg, j_gens, p, kappa)?;
    if local.colength_j() != v {
        return Err(Error::Invariant(format!(
            "local colength of J is {} but val_p(#T/J) = {v}",
            local.colength_j()
        )));
    }
    if 2 * v > kappa {
        return Ok(None);
    }
    let h = local.hilbert_function(v);
    let Some(e) = stable_value(&h) else {
        return Ok(None);
    };
    Ok(Some(LocalInvariants {
        kappa,
        local_rank: local.rank(),
        minimal_generators: local.minimal_generators(),
        hilbert_function: h,
        multiplicity: e,
    }))
}

/// Local invariants with precision `kappa = v + 6`, raised until the Hilbert
/// function stabilizes, and re-checked at `kappa + 2`.
pub fn local_invariants(alg: &StructAlgebra, j_gens: &[Vec<BigInt>], p: u64, v: u32) -> Result<LocalInvariants> {
    if v == 0 {
        return Err(Error::Computation(format!("{p} does not divide #T/J")));
    }
    let mut kappa = v + KAPPA_MARGIN;
    for _ in 0..KAPPA_RETRIES {
        if let Some(inv) = invariants_at(alg, j_gens, p, v, kappa)? {
            let check = invariants_at(alg, j_gens, p, v, kappa + 2)?
                .ok_or_else(|| Error::Precision("Hilbert function lost stability at higher precision".into()))?;
            if check.local_rank != inv.local_rank
                || check.minimal_generators != inv.minimal_generators
                || check.multiplicity != inv.multiplicity
                || check.hilbert_function[..inv.hilbert_function.len()] != inv.hilbert_function[..]
            {
                return Err(Error::Precision(format!("outputs differ between precision {kappa} and {}", kappa + 2)));
            }
            return Ok(inv);
        }
        kappa += 2 * v.max(1);
    }
    Err(Error::Precision(format!(
        "Hilbert function of J did not stabilize up to precision {p}^{kappa}"
    )))
}
