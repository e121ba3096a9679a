//! The plus quotient of weight-2 modular symbols for `Gamma_0(M)`, its
//! cuspidal subspace and Hecke operators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cusps::{boundary_matrix, CuspClasses};
use super::heilbronn::for_each_cremona;
use super::manin::ManinPresentation;
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::linalg::kernel::{echelon_rows, left_kernel_q, Echelon};
use crate::linalg::IntMatrix;

#[derive(Clone, Debug)]
pub struct ModularSymbols {
    pres: ManinPresentation,
    boundary: IntMatrix,
    cusps: CuspClasses,
    cuspidal: Echelon,
}

impl ModularSymbols {
    pub fn new(m: u64) -> Result<Self> {
        let pres = ManinPresentation::new(m)?;
        let (boundary, cusps) = boundary_matrix(&pres);
        let kernel = if pres.dim() == 0 {
            Vec::new()
        } else {
            left_kernel_q(&boundary)
        };
        let cuspidal = echelon_rows(kernel, pres.dim());
        Ok(ModularSymbols {
            pres,
            boundary,
            cusps,
            cuspidal,
        })
    }

    pub fn level(&self) -> u64 {
        self.pres.level()
    }

    pub fn presentation(&self) -> &ManinPresentation {
        &self.pres
    }

    /// Dimension of the plus quotient `V+`.
    pub fn dim(&self) -> usize {
        self.pres.dim()
    }

    /// Dimension of the cuspidal plus space, i.e. the genus of `X_0(M)`.
    pub fn cuspidal_dim(&self) -> usize {
        self.cuspidal.rank()
    }

    pub fn boundary(&self) -> &IntMatrix {
        &self.boundary
    }

    pub fn num_cusp_classes(&self) -> usize {
        self.cusps.len()
    }

    /// Echelon basis of the cuspidal subspace, in `V+` coordinates.
    pub fn cuspidal_basis(&self) -> &Echelon {
        &self.cuspidal
    }

    fn check_prime(&self, l: u64) -> Result<()> {
        if !is_prime(l) {
            return Err(Error::NotPrime(l));
        }
        if self.level().is_multiple_of(l) {
            return Err(Error::PrimeDividesLevel {
                ell: l,
                level: self.level(),
            });
        }
        Ok(())
    }

    /// Multiplicities of the Manin symbols in `T_l (c : d)`.
    pub fn hecke_counts(&self, c: u64, d: u64, l: u64) -> Vec<i64> {
        let p1 = self.pres.p1();
        let m = p1.level() as i64;
        let (u, v) = (c as i64, d as i64);
        let mut counts = vec![0i64; p1.len()];
        for_each_cremona(l, |x1, x2, y1, y2| {
            let a = (u * x1 + v * y1).rem_euclid(m) as u64;
            let b = (u * x2 + v * y2).rem_euclid(m) as u64;
            let k = p1.index_reduced(a, b);
            if k != u32::MAX {
                counts[k as usize] += 1;
            }
        });
        counts
    }

    /// `T_l` applied to the Manin symbol with P1 index `i`, as numerators over [`Self::den`].
    pub fn hecke_apply_single(&self, i: usize, l: u64) -> Result<Vec<BigInt>> {
        self.check_prime(l)?;
        let (c, d) = self.pres.p1().rep(i);
        Ok(self.pres.project_counts(&self.hecke_counts(c, d, l)))
    }

    /// Common denominator of every Hecke matrix on `V+`.
    pub fn den(&self) -> BigInt {
        BigInt::from(self.pres.den())
    }

    /// `T_l` on `V+` acting on row vectors, as numerators over [`Self::den`].
    pub fn hecke_matrix(&self, l: u64) -> Result<IntMatrix> {
        self.check_prime(l)?;
        let n = self.dim();
        let rows = (0..n)
            .map(|k| {
                let (c, d) = self.pres.p1().rep(self.pres.generator(k));
                self.pres.project_counts(&self.hecke_counts(c, d, l))
            })
            .collect();
        Ok(IntMatrix::from_rows(n, rows))
    }

    /// Restriction of a `V+` operator `a / den` to the cuspidal subspace,
    /// returned as `(numerators, denominator)` in the echelon basis.
    pub fn restrict_to_cuspidal(&self, a: &IntMatrix, den: &BigInt) -> Result<(IntMatrix, BigInt)> {
        let e = &self.cuspidal;
        let g = e.rank();
        let piv_lcm = e
            .rows
            .iter()
            .zip(&e.pivots)
            .fold(BigInt::one(), |acc, (r, &p)| acc.lcm(&r[p]));
        let out_den = den * &piv_lcm;
        let mut out = IntMatrix::zeros(g, g);
        for (i, b) in e.rows.iter().enumerate() {
            let img = a.vec_mul(b);
            // Coordinates from pivot entries; then verify the image lies in the span.
            let mut resid: Vec<BigInt> = img.iter().map(|x| x * &piv_lcm).collect();
            for (j, (r, &p)) in e.rows.iter().zip(&e.pivots).enumerate() {
                let coef = &img[p] * (&piv_lcm / &r[p]);
                for (x, y) in resid.iter_mut().zip(r) {
                    *x -= &coef * y;
                }
                out[(i, j)] = coef;
            }
            if resid.iter().any(|x| !x.is_zero()) {
                return Err(Error::Invariant(format!(
                    "operator does not preserve the cuspidal subspace at level {}",
                    self.level()
                )));
            }
        }
        Ok((out, out_den))
    }

    /// `T_l` on the cuspidal subspace.
    pub fn hecke_matrix_cuspidal(&self, l: u64) -> Result<(IntMatrix, BigInt)> {
        let t = self.hecke_matrix(l)?;
        self.restrict_to_cuspidal(&t, &self.den())
    }
}
