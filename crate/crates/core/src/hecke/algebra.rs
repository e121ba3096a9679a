//! Commutative rings free of finite rank over `Z` (or `Z/m`), given by
//! structure constants, and ideal lattices inside them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::val_big;
use crate::error::{Error, Result};
use crate::linalg::HnfBuilder;

/// `b_i b_j = sum_k mult[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructAlgebra {
    n: usize,
    mult: Vec<Vec<Vec<BigInt>>>,
    one: Vec<BigInt>,
    modulus: Option<BigInt>,
}

fn reduce(v: &mut [BigInt], m: Option<&BigInt>) {
    if let Some(m) = m {
        for x in v.iter_mut() {
            if x.is_negative() || &*x >= m {
                *x = x.mod_floor(m);
            }
        }
    }
}

impl StructAlgebra {
    pub fn new(mult: Vec<Vec<Vec<BigInt>>>, one: Vec<BigInt>, modulus: Option<BigInt>) -> Self {
        let n = one.len();
        assert!(mult.len() == n && mult.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n)));
        let mut a = StructAlgebra { n, mult, one, modulus };
        let m = a.modulus.clone();
        for r in a.mult.iter_mut() {
            for v in r.iter_mut() {
                reduce(v, m.as_ref());
            }
        }
        reduce(&mut a.one, m.as_ref());
        a
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn one(&self) -> &[BigInt] {
        &self.one
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<BigInt>>] {
        &self.mult
    }

    pub fn reduced(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        reduce(&mut v, self.modulus.as_ref());
        v
    }

    /// `x * b_k`.
    pub fn mul_basis(&self, x: &[BigInt], k: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(&self.mult[i][k]) {
                if !c.is_zero() {
                    *o += xi * c;
                }
            }
        }
        reduce(&mut out, self.modulus.as_ref());
        out
    }

    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.n];
        for (k, yk) in y.iter().enumerate() {
            if yk.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(self.mul_basis(x, k)) {
                *o += yk * c;
            }
        }
        reduce(&mut out, self.modulus.as_ref());
        out
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        reduce(&mut out, self.modulus.as_ref());
        out
    }

    pub fn scale(&self, x: &[BigInt], c: &BigInt) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = x.iter().map(|a| a * c).collect();
        reduce(&mut out, self.modulus.as_ref());
        out
    }

    /// `x - c * 1`.
    pub fn sub_scalar(&self, x: &[BigInt], c: &BigInt) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = x.iter().zip(&self.one).map(|(a, o)| a - c * o).collect();
        reduce(&mut out, self.modulus.as_ref());
        out
    }

    /// Checks associativity, commutativity and that `one` is the identity.
    pub fn check_axioms(&self) -> bool {
        let e = |i: usize| {
            let mut v = vec![BigInt::zero(); self.n];
            v[i] = BigInt::one();
            v
        };
        for i in 0..self.n {
            let bi = e(i);
            if self.mul(&self.one, &bi) != self.reduced(&bi) {
                return false;
            }
            for j in 0..self.n {
                if self.mult[i][j] != self.mult[j][i] {
                    return false;
                }
                let bij = self.mul(&bi, &e(j));
                for k in 0..self.n {
                    let l = self.mul(&bij, &e(k));
                    let r = self.mul(&bi, &self.mul(&e(j), &e(k)));
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn builder(&self) -> HnfBuilder {
        match &self.modulus {
            Some(m) => HnfBuilder::with_modulus(self.n, m.clone()),
            None => HnfBuilder::new(self.n),
        }
    }

    /// The ideal generated by `gens`, as a lattice in basis coordinates.
    pub fn ideal(&self, gens: &[Vec<BigInt>]) -> HnfBuilder {
        let mut b = self.builder();
        for g in gens {
            for k in 0..self.n {
                b.insert(&self.mul_basis(g, k));
            }
        }
        b
    }

    /// `I * J` for `I` given by a module basis and `J` by ideal generators.
    pub fn ideal_product(&self, i_basis: &[Vec<BigInt>], j_gens: &[Vec<BigInt>]) -> HnfBuilder {
        let mut b = self.builder();
        for x in i_basis {
            for g in j_gens {
                b.insert(&self.mul(x, g));
            }
        }
        b
    }

    /// Lattice spanned by the given vectors (plus the modulus, if any).
    pub fn span(&self, vecs: &[Vec<BigInt>]) -> HnfBuilder {
        let mut b = self.builder();
        for v in vecs {
            b.insert(v);
        }
        b
    }
}

pub fn basis_rows(b: &HnfBuilder) -> Vec<Vec<BigInt>> {
    b.to_matrix().to_rows()
}

/// `val_p [Z^n : L]` for a full-rank lattice.
pub fn colength(b: &HnfBuilder, p: u64) -> Result<u32> {
    let det = b
        .det()
        .ok_or_else(|| Error::Invariant("ideal does not have finite index".into()))?;
    Ok(val_big(&det, p).expect("nonzero determinant"))
}

/// Coordinates of `x` in the basis of a full-rank upper-triangular HNF,
/// or `None` if `x` is not in the lattice.
pub fn solve_triangular(rows: &[Vec<BigInt>], x: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = x.len();
    assert_eq!(rows.len(), n);
    let mut rest = x.to_vec();
    let mut c = Vec::with_capacity(n);
    for j in 0..n {
        let (q, r) = rest[j].div_mod_floor(&rows[j][j]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (k, v) in rows[j].iter().enumerate().skip(j) {
                rest[k] -= &q * v;
            }
        }
        c.push(q);
    }
    Some(c)
}

/// Least `m > 0` with `m x` in the full-rank lattice with HNF `rows`.
pub fn annihilator_index(rows: &[Vec<BigInt>], x: &[BigInt]) -> BigInt {
    let n = x.len();
    let mut rest: Vec<BigRational> = x.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let mut den = BigInt::one();
    for j in 0..n {
        let q = &rest[j] / BigRational::from_integer(rows[j][j].clone());
        den = den.lcm(q.denom());
        if !q.is_zero() {
            for (k, v) in rows[j].iter().enumerate().skip(j) {
                rest[k] -= &q * BigRational::from_integer(v.clone());
            }
        }
    }
    den
}
