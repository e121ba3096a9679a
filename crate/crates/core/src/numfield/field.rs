use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::factor::is_irreducible;
use crate::linalg::kernel::echelon_rows;
use crate::linalg::{IntMatrix, UniPoly};

/// `Q[x]/(g)` for a monic irreducible integral `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    poly: UniPoly,
    d: usize,
    // theta^k in the power basis for k = d .. 2d-2
    high_powers: Vec<Vec<BigInt>>,
}

/// Element of a number field in the power basis, `num / den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    num: Vec<BigInt>,
    den: BigInt,
}

impl FieldElement {
    pub fn new(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for x in num.iter_mut() {
                *x = -&*x;
            }
        }
        let g = num.iter().fold(den.clone(), |g, x| g.gcd(x));
        if !g.is_one() {
            for x in num.iter_mut() {
                *x /= &g;
            }
            den /= &g;
        }
        FieldElement { num, den }
    }

    pub fn from_int(d: usize, c: BigInt) -> Self {
        let mut num = vec![BigInt::zero(); d];
        num[0] = c;
        FieldElement::new(num, BigInt::one())
    }

    pub fn zero(d: usize) -> Self {
        FieldElement {
            num: vec![BigInt::zero(); d],
            den: BigInt::one(),
        }
    }

    pub fn one(d: usize) -> Self {
        Self::from_int(d, BigInt::one())
    }

    pub fn num(&self) -> &[BigInt] {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_integral_in_power_basis(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<(BigInt, BigInt)> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some((self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn add(&self, o: &FieldElement) -> FieldElement {
        let num = self
            .num
            .iter()
            .zip(&o.num)
            .map(|(a, b)| a * &o.den + b * &self.den)
            .collect();
        FieldElement::new(num, &self.den * &o.den)
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            num: self.num.iter().map(|a| -a).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &FieldElement) -> FieldElement {
        self.add(&o.neg())
    }

    pub fn scale_int(&self, c: &BigInt) -> FieldElement {
        FieldElement::new(self.num.iter().map(|a| a * c).collect(), self.den.clone())
    }

    pub fn add_int(&self, c: &BigInt) -> FieldElement {
        let mut num = self.num.clone();
        num[0] += c * &self.den;
        FieldElement::new(num, self.den.clone())
    }

    pub fn div_int(&self, c: &BigInt) -> FieldElement {
        FieldElement::new(self.num.clone(), &self.den * c)
    }

    /// Decimal serialization `num0,num1,...;den`.
    pub fn to_string_coeffs(&self) -> String {
        let n: Vec<String> = self.num.iter().map(|x| x.to_string()).collect();
        format!("{};{}", n.join(","), self.den)
    }

    pub fn parse_coeffs(s: &str, d: usize) -> Option<FieldElement> {
        let (n, den) = s.split_once(';')?;
        let num: Option<Vec<BigInt>> = n.split(',').map(|t| t.trim().parse().ok()).collect();
        let num = num?;
        let den: BigInt = den.trim().parse().ok()?;
        if num.len() != d || den.is_zero() {
            return None;
        }
        Some(FieldElement::new(num, den))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/{}", self.num, self.den)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = UniPoly::new(self.num.clone());
        let s = p.to_string().replace('x', "a");
        if self.den.is_one() {
            write!(f, "{s}")
        } else {
            write!(f, "({s})/{}", self.den)
        }
    }
}

impl NumberField {
    /// Validates that `g` is monic and irreducible over Q.
    pub fn new(g: UniPoly) -> Result<Self> {
        if g.degree().unwrap_or(0) == 0 || !g.is_monic() {
            return Err(Error::NotIrreducible(format!("{g} is not monic of positive degree")));
        }
        if g.deg() > 1 && !is_irreducible(&g) {
            return Err(Error::NotIrreducible(format!("{g} is reducible")));
        }
        Ok(Self::new_unchecked(g))
    }

    /// Trusted constructor for polynomials already known to be irreducible.
    pub fn new_unchecked(g: UniPoly) -> Self {
        let d = g.deg();
        let mut high_powers = Vec::new();
        // theta^d = -(g_0 + ... + g_{d-1} theta^{d-1})
        let mut cur: Vec<BigInt> = (0..d).map(|i| -g.coeff(i)).collect();
        for _ in d..(2 * d).saturating_sub(1) {
            high_powers.push(cur.clone());
            // multiply by theta
            let top = cur[d - 1].clone();
            let mut next = vec![BigInt::zero(); d];
            for i in (1..d).rev() {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..d {
                next[i] -= &top * g.coeff(i);
            }
            cur = next;
        }
        NumberField {
            poly: g,
            d,
            high_powers,
        }
    }

    pub fn rationals() -> Self {
        Self::new_unchecked(UniPoly::from_i64(&[0, 1]))
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn theta(&self) -> FieldElement {
        if self.d == 1 {
            return FieldElement::from_int(1, -self.poly.coeff(0));
        }
        let mut num = vec![BigInt::zero(); self.d];
        num[1] = BigInt::one();
        FieldElement::new(num, BigInt::one())
    }

    pub fn from_int(&self, c: i64) -> FieldElement {
        FieldElement::from_int(self.d, BigInt::from(c))
    }

    /// Element given by power-basis coordinates.
    pub fn element(&self, num: Vec<BigInt>, den: BigInt) -> FieldElement {
        assert_eq!(num.len(), self.d);
        FieldElement::new(num, den)
    }

    /// Reduces an integer polynomial in theta (any length) to power-basis coordinates.
    pub fn reduce_coeffs(&self, c: &[BigInt]) -> Vec<BigInt> {
        let d = self.d;
        let mut out: Vec<BigInt> = (0..d).map(|i| c.get(i).cloned().unwrap_or_default()).collect();
        for (k, ck) in c.iter().enumerate().skip(d) {
            if ck.is_zero() {
                continue;
            }
            let row = self.power_row(k);
            for i in 0..d {
                out[i] += ck * &row[i];
            }
        }
        out
    }

    fn power_row(&self, k: usize) -> Vec<BigInt> {
        if k - self.d < self.high_powers.len() {
            return self.high_powers[k - self.d].clone();
        }
        let mut x = vec![BigInt::zero(); k + 1];
        x[k] = BigInt::one();
        let r = UniPoly::new(x).divrem_int(&self.poly).expect("monic").1;
        (0..self.d).map(|i| r.coeff(i)).collect()
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = self.d;
        if d == 1 {
            return FieldElement::new(vec![&a.num[0] * &b.num[0]], &a.den * &b.den);
        }
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        FieldElement::new(self.reduce_coeffs(&prod), &a.den * &b.den)
    }

    pub fn pow(&self, a: &FieldElement, e: u32) -> FieldElement {
        let mut r = FieldElement::one(self.d);
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    /// Matrix of multiplication by `a` on the power basis (rows = a * theta^i),
    /// scaled by the denominator of `a`.
    pub fn mult_matrix(&self, a: &FieldElement) -> (IntMatrix, BigInt) {
        let d = self.d;
        let mut rows = Vec::with_capacity(d);
        let mut cur = FieldElement::new(a.num.clone(), BigInt::one());
        for _ in 0..d {
            rows.push(cur.num.clone());
            cur = self.mul(&cur, &self.theta_raw());
        }
        (IntMatrix::from_rows(d, rows), a.den.clone())
    }

    fn theta_raw(&self) -> FieldElement {
        let mut num = vec![BigInt::zero(); self.d];
        if self.d == 1 {
            num[0] = -self.poly.coeff(0);
        } else {
            num[1] = BigInt::one();
        }
        FieldElement::new(num, BigInt::one())
    }

    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let d = self.d;
        // Solve x * M = e_0 where M rows are a_num * theta^i.
        let (m, den) = self.mult_matrix(a);
        let t = m.transpose();
        let rows: Vec<Vec<BigInt>> = (0..d)
            .map(|i| {
                let mut r = t.row(i).to_vec();
                r.push(if i == 0 { BigInt::one() } else { BigInt::zero() });
                r
            })
            .collect();
        let e = echelon_rows(rows, d + 1);
        if e.pivots.len() != d || e.pivots.contains(&d) {
            return None;
        }
        let l = e
            .rows
            .iter()
            .zip(&e.pivots)
            .fold(BigInt::one(), |acc, (r, &p)| acc.lcm(&r[p]));
        let mut num = vec![BigInt::zero(); d];
        for (r, &p) in e.rows.iter().zip(&e.pivots) {
            num[p] = &r[d] * (&l / &r[p]);
        }
        // x = num / l solves x * (M/den) = e_0 / den, so a^{-1} = x * den.
        Some(FieldElement::new(num.into_iter().map(|v| v * &den).collect(), l))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Option<FieldElement> {
        Some(self.mul(a, &self.inv(b)?))
    }

    pub fn trace(&self, a: &FieldElement) -> (BigInt, BigInt) {
        let (m, den) = self.mult_matrix(a);
        let t: BigInt = (0..self.d).map(|i| m[(i, i)].clone()).sum();
        let g = t.gcd(&den);
        if g.is_zero() {
            return (BigInt::zero(), BigInt::one());
        }
        (t / &g, den / g)
    }

    /// Characteristic polynomial of `a` (monic, rational coefficients scaled to
    /// integers when `a` is integral).
    pub fn charpoly_of(&self, a: &FieldElement) -> Result<UniPoly> {
        let (m, den) = self.mult_matrix(a);
        crate::linalg::charpoly::charpoly_scaled(&m, &den, None)
    }
}
