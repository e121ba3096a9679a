//! p-maximal orders by the Round 2 loop (radical, multiplier ring, repeat).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{big_mod_u64, val_big};
use crate::error::{Error, Result};
use crate::linalg::hnf::HnfBuilder;
use crate::linalg::modp::ModMatrix;
use crate::linalg::IntMatrix;

use super::field::{FieldElement, NumberField};

/// An order `O` with basis `omega_i = basis_i / den` (power-basis rows, HNF)
/// that is maximal at `p`.
#[derive(Clone, Debug)]
pub struct POrderData {
    pub p: u64,
    field: NumberField,
    basis: IntMatrix,
    den: BigInt,
    // mult[i][j] = coordinates of omega_i * omega_j in the omega basis
    mult: Vec<Vec<Vec<BigInt>>>,
    /// `val_p([O : Z[theta]])`.
    pub index_valuation: u32,
}

impl POrderData {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    /// Equation order `Z[theta]`.
    pub fn equation_order(field: &NumberField, p: u64) -> Self {
        let d = field.degree();
        Self::from_basis(field, p, IntMatrix::identity(d), BigInt::one())
    }

    fn from_basis(field: &NumberField, p: u64, basis: IntMatrix, den: BigInt) -> Self {
        let d = field.degree();
        let mut o = POrderData {
            p,
            field: field.clone(),
            basis,
            den,
            mult: Vec::new(),
            index_valuation: 0,
        };
        let rows: Vec<FieldElement> = (0..d)
            .map(|i| field.element(o.basis.row(i).to_vec(), o.den.clone()))
            .collect();
        let mut mult = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in i..d {
                let prod = field.mul(&rows[i], &rows[j]);
                let (c, cd) = o.to_coords(&prod);
                assert!(cd.is_one(), "basis does not span a ring");
                mult[i][j] = c.clone();
                mult[j][i] = c;
            }
        }
        o.mult = mult;
        let det: BigInt = (0..d).fold(BigInt::one(), |acc, i| acc * &o.basis[(i, i)]);
        let vd = val_big(&o.den, p).unwrap_or(0) * d as u32;
        let vdet = val_big(&det, p).unwrap_or(0);
        o.index_valuation = vd - vdet;
        o
    }

    /// Coordinates of `x` in the order basis: integer numerators and a common denominator.
    pub fn to_coords(&self, x: &FieldElement) -> (Vec<BigInt>, BigInt) {
        let d = self.degree();
        // y * basis = den * x  with basis upper triangular
        let target: Vec<BigRational> = x
            .num()
            .iter()
            .map(|a| BigRational::new(a * &self.den, x.den().clone()))
            .collect();
        let mut y: Vec<BigRational> = Vec::with_capacity(d);
        for j in 0..d {
            let mut s = target[j].clone();
            for (i, yi) in y.iter().enumerate() {
                let b = &self.basis[(i, j)];
                if !b.is_zero() {
                    s -= yi * BigRational::from_integer(b.clone());
                }
            }
            y.push(s / BigRational::from_integer(self.basis[(j, j)].clone()));
        }
        let l = y.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let num = y
            .iter()
            .map(|r| r.numer() * (&l / r.denom()))
            .collect();
        (num, l)
    }

    pub fn from_coords(&self, c: &[BigInt], cden: &BigInt) -> FieldElement {
        let v = self.basis.vec_mul(c);
        self.field.element(v, &self.den * cden)
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        self.to_coords(x).1.is_one()
    }

    /// Product in order coordinates.
    pub fn mul_coords(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree();
        let mut out = vec![BigInt::zero(); d];
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if b[j].is_zero() {
                    continue;
                }
                let ab = &a[i] * &b[j];
                for (o, c) in out.iter_mut().zip(&self.mult[i][j]) {
                    if !c.is_zero() {
                        *o += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `a` in order coordinates (row i = omega_i * a).
    pub fn mult_matrix(&self, a: &[BigInt]) -> IntMatrix {
        let d = self.degree();
        let rows = (0..d)
            .map(|i| {
                let mut e = vec![BigInt::zero(); d];
                e[i] = BigInt::one();
                self.mul_coords(&e, a)
            })
            .collect();
        IntMatrix::from_rows(d, rows)
    }

    /// Structure constants reduced modulo `p`.
    pub fn mult_mod(&self, p: u64) -> Vec<Vec<Vec<u64>>> {
        self.mult
            .iter()
            .map(|r| r.iter().map(|c| c.iter().map(|x| big_mod_u64(x, p)).collect()).collect())
            .collect()
    }
}

/// `O/pO` as an F_p-algebra given by structure constants.
pub struct ResidueAlgebra {
    pub p: u64,
    pub d: usize,
    pub mult: Vec<Vec<Vec<u64>>>,
    pub one: Vec<u64>,
}

impl ResidueAlgebra {
    pub fn new(o: &POrderData) -> Self {
        let p = o.p;
        let d = o.degree();
        let one_elem = FieldElement::one(d);
        let (one, den) = o.to_coords(&one_elem);
        assert!(den.is_one());
        ResidueAlgebra {
            p,
            d,
            mult: o.mult_mod(p),
            one: one.iter().map(|x| big_mod_u64(x, p)).collect(),
        }
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p as u128;
        let mut acc = vec![0u128; self.d];
        for i in 0..self.d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.d {
                if b[j] == 0 {
                    continue;
                }
                let ab = a[i] as u128 * b[j] as u128 % p;
                for (o, &c) in acc.iter_mut().zip(&self.mult[i][j]) {
                    *o = (*o + ab * c as u128) % p;
                }
            }
        }
        acc.into_iter().map(|x| x as u64).collect()
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut r = self.one.clone();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    pub fn basis_vec(&self, i: usize) -> Vec<u64> {
        let mut e = vec![0u64; self.d];
        e[i] = 1;
        e
    }

    /// Matrix of x -> x^p (rows = images of basis vectors).
    pub fn frobenius(&self) -> ModMatrix {
        let rows: Vec<Vec<u64>> = (0..self.d)
            .map(|i| self.pow(&self.basis_vec(i), self.p))
            .collect();
        ModMatrix::from_rows(&rows, self.d, self.p)
    }

    /// Basis of the nilradical: kernel of Frobenius iterated until p^j >= d.
    pub fn radical(&self) -> Vec<Vec<u64>> {
        let f = self.frobenius();
        let mut g = f.clone();
        let mut pj = self.p;
        while (pj as usize) < self.d {
            g = g.mul(&f);
            pj = pj.saturating_mul(self.p);
        }
        g.left_kernel()
    }

    /// Matrix of multiplication by `a` (rows = basis_i * a).
    pub fn mult_matrix(&self, a: &[u64]) -> ModMatrix {
        let rows: Vec<Vec<u64>> = (0..self.d).map(|i| self.mul(&self.basis_vec(i), a)).collect();
        ModMatrix::from_rows(&rows, self.d, self.p)
    }
}

/// Enlarges `Z[theta]` until it is maximal at `p`.
pub fn p_maximal_order(field: &NumberField, p: u64) -> Result<POrderData> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let d = field.degree();
    let mut o = POrderData::equation_order(field, p);
    if d == 1 {
        return Ok(o);
    }
    // [O_K : Z[theta]]^2 divides disc(g), which bounds the number of rounds.
    for _ in 0..64 * d {
        let alg = ResidueAlgebra::new(&o);
        let rad = alg.radical();
        let mut ib = HnfBuilder::with_modulus(d, BigInt::from(p));
        for v in &rad {
            ib.insert(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        }
        let ideal = ib.to_matrix();
        // Map omega_i -> (multiplication on I/pI), flattened.
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(d);
        for i in 0..d {
            let mut e = vec![BigInt::zero(); d];
            e[i] = BigInt::one();
            let mut row = Vec::with_capacity(d * d);
            for k in 0..d {
                let prod = o.mul_coords(&e, ideal.row(k));
                let z = solve_upper(&ideal, &prod)
                    .ok_or_else(|| Error::Invariant("radical is not an ideal".into()))?;
                row.extend(z.iter().map(|x| big_mod_u64(x, p)));
            }
            rows.push(row);
        }
        let kernel = ModMatrix::from_rows(&rows, d * d, p).left_kernel();
        if kernel.is_empty() {
            return Ok(o);
        }
        // New order: (1/p) (pO + lifts of kernel), in power coordinates.
        let mut nb = HnfBuilder::new(d);
        let pb = BigInt::from(p);
        for i in 0..d {
            nb.insert(&o.basis.row(i).iter().map(|x| x * &pb).collect::<Vec<_>>());
        }
        for u in &kernel {
            let c: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
            nb.insert(&o.basis.vec_mul(&c));
        }
        let basis = nb.to_matrix();
        let den = &o.den * &pb;
        let g = basis
            .to_rows()
            .iter()
            .flatten()
            .fold(den.clone(), |g, x| g.gcd(x));
        let (basis, den) = if g.is_one() {
            (basis, den)
        } else {
            (
                IntMatrix::from_rows(d, basis.to_rows().into_iter().map(|r| r.into_iter().map(|x| x / &g).collect()).collect()),
                den / &g,
            )
        };
        o = POrderData::from_basis(field, p, basis, den);
    }
    Err(Error::Invariant("p-maximal order did not stabilize".into()))
}

/// Solves `z * U = v` for upper triangular integer `U`; `None` if not integral.
pub fn solve_upper(u: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let d = u.rows();
    let mut z: Vec<BigInt> = Vec::with_capacity(d);
    for j in 0..d {
        let mut s = v[j].clone();
        for (i, zi) in z.iter().enumerate() {
            let b = &u[(i, j)];
            if !b.is_zero() && !zi.is_zero() {
                s -= zi * b;
            }
        }
        let (q, r) = s.div_rem(&u[(j, j)]);
        if !r.is_zero() {
            return None;
        }
        z.push(q);
    }
    Some(z)
}
