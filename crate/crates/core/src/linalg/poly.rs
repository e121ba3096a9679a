use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::big_mod_u64;

use super::modp::{self, ModPoly};

/// Univariate polynomial with integer coefficients, ascending degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x - a`.
    pub fn linear_root(a: &BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut r = UniPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn scale(&self, c: &BigInt) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * BigInt::from(i))
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        UniPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Exact division over the integers; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem_int(d)?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Division with remainder when every step divides exactly by `lc(d)`;
    /// `None` as soon as a quotient coefficient is non-integral.
    pub fn divrem_int(&self, d: &UniPoly) -> Option<(UniPoly, UniPoly)> {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Some((UniPoly::zero(), self.clone()));
        }
        let lc = d.lc();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let (c, rem) = r[k + dd].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Some((UniPoly::new(q), UniPoly::new(r)))
    }

    /// Pseudo-remainder `lc(d)^(deg f - deg d + 1) f mod d`.
    pub fn pseudo_rem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.clone();
        let lc = d.lc();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let c = r.lc();
            let mut shifted = vec![BigInt::zero(); dr - dd];
            shifted.extend(d.coeffs.iter().map(|x| x * &c));
            r = r.scale(&lc).sub(&UniPoly::new(shifted));
        }
        r
    }

    /// Gcd, primitive with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return o.primitive();
        }
        if o.is_zero() {
            return self.primitive();
        }
        let mut a = self.primitive();
        let mut b = o.primitive();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive() };
        }
        a.primitive()
    }

    /// Yun's squarefree decomposition of a primitive polynomial:
    /// `[(a_1, 1), (a_2, 2), ...]` with `f = prod a_i^i` up to sign, trivial factors omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let f = self.primitive();
        let mut out = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = df.div_exact(&a0).expect("gcd divides derivative");
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides");
            if b.deg() == 0 {
                break;
            }
            c = d.div_exact(&a).expect("gcd divides");
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.deg() == 0 || self.gcd(&self.derivative()).deg() == 0
    }

    pub fn to_mod(&self, q: u64) -> ModPoly {
        modp::trim(self.coeffs.iter().map(|c| big_mod_u64(c, q)).collect())
    }

    /// Lift from `F_q` with symmetric representatives.
    pub fn from_mod_symmetric(f: &[u64], q: u64) -> UniPoly {
        let half = q / 2;
        UniPoly::new(
            f.iter()
                .map(|&c| {
                    if c > half {
                        BigInt::from(c) - BigInt::from(q)
                    } else {
                        BigInt::from(c)
                    }
                })
                .collect(),
        )
    }

    /// Sum of squares of coefficients, an upper bound for the squared 2-norm.
    pub fn norm2_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(), |acc, c| acc.mul(g).add(&UniPoly::constant(c.clone())))
    }

    /// Decimal coefficient list, ascending, comma separated.
    pub fn to_coeff_string(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_coeff_string(s: &str) -> Option<UniPoly> {
        if s.trim().is_empty() {
            return Some(UniPoly::zero());
        }
        let cs: Option<Vec<BigInt>> = s.split(',').map(|t| t.trim().parse().ok()).collect();
        cs.map(UniPoly::new)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_division() {
        let f = UniPoly::from_i64(&[-1, 0, 0, 0, 1]);
        let g = UniPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(f.gcd(&g), g);
        assert_eq!(f.div_exact(&g), Some(UniPoly::from_i64(&[1, 0, 1])));
        assert_eq!(f.div_exact(&UniPoly::from_i64(&[2, 1])), None);
    }

    #[test]
    fn squarefree_parts() {
        // (x-1)^2 (x^2+1)
        let f = UniPoly::from_i64(&[-1, 1])
            .pow(2)
            .mul(&UniPoly::from_i64(&[1, 0, 1]));
        let sq = f.squarefree_decomposition();
        assert_eq!(
            sq,
            vec![
                (UniPoly::from_i64(&[1, 0, 1]), 1),
                (UniPoly::from_i64(&[-1, 1]), 2)
            ]
        );
        assert!(!f.is_squarefree());
    }

    #[test]
    fn display_and_parse() {
        let f = UniPoly::from_i64(&[-1, -1, 1]);
        assert_eq!(f.to_string(), "x^2 - x - 1");
        assert_eq!(UniPoly::parse_coeff_string(&f.to_coeff_string()), Some(f));
    }
}
