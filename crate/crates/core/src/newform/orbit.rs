//! A Galois orbit of newforms, represented by a dual eigenvector over its
//! coefficient field, and the fast pairing path for `a_l`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::linalg::charpoly::charpoly_scaled;
use crate::linalg::kernel::echelon;
use crate::linalg::{IntMatrix, UniPoly};
use crate::modsym::ModularSymbols;
use crate::numfield::{FieldElement, NumberField};

/// Pairing tables `tab[j][i] = <coords(symbol i), u_j>`.
#[derive(Clone, Debug)]
enum Tables {
    Small(Vec<Vec<i64>>),
    Big(Vec<Vec<BigInt>>),
}

#[derive(Clone, Debug)]
pub struct NewformOrbit {
    level: u64,
    index: usize,
    field: NumberField,
    theta_prime: u64,
    pairing_gen: usize,
    u: Vec<Vec<BigInt>>,
    pairing_inv: FieldElement,
    tables: Tables,
}

/// Restriction of a column-acting operator `n / den` to the span of `basis`,
/// where each basis vector has a distinguished coordinate `free[k]` at which
/// all other basis vectors vanish. Returns `(numerators, denominator)`.
fn restrict_columns(
    n: &IntMatrix,
    den: &BigInt,
    basis: &[Vec<BigInt>],
    free: &[usize],
) -> Result<(IntMatrix, BigInt)> {
    let d = basis.len();
    let l = basis
        .iter()
        .zip(free)
        .fold(BigInt::one(), |acc, (x, &f)| acc.lcm(&x[f]));
    let mut out = IntMatrix::zeros(d, d);
    for (k, x) in basis.iter().enumerate() {
        let y = n.mul_vec(x);
        let mut resid: Vec<BigInt> = y.iter().map(|v| v * &l).collect();
        for (k2, (x2, &f2)) in basis.iter().zip(free).enumerate() {
            let c = &y[f2] * (&l / &x2[f2]);
            for (r, v) in resid.iter_mut().zip(x2) {
                *r -= &c * v;
            }
            out[(k2, k)] = c;
        }
        if resid.iter().any(|v| !v.is_zero()) {
            return Err(Error::Invariant("eigenspace is not Hecke stable".into()));
        }
    }
    Ok((out, den * l))
}

/// Distinguished coordinates of a kernel basis produced by `Echelon::right_kernel`.
fn free_coordinates(basis: &[Vec<BigInt>]) -> Vec<usize> {
    let n = basis.first().map_or(0, |b| b.len());
    let mut out = Vec::with_capacity(basis.len());
    for (k, x) in basis.iter().enumerate() {
        let f = (0..n)
            .find(|&c| !x[c].is_zero() && basis.iter().enumerate().all(|(k2, y)| k2 == k || y[c].is_zero()))
            .expect("kernel basis has distinguished coordinates");
        out.push(f);
    }
    out
}

impl NewformOrbit {
    /// Builds the orbit cut out by the factor `g_rand` of the characteristic
    /// polynomial of `t_rand / den` (acting on `V+`). `hecke` supplies `T_l`
    /// numerators on `V+` over the same `den` for primes `l` not dividing the level.
    pub fn from_factor<F>(
        ms: &ModularSymbols,
        t_rand: &IntMatrix,
        g_rand: &UniPoly,
        mut hecke: F,
    ) -> Result<Self>
    where
        F: FnMut(u64) -> Result<IntMatrix>,
    {
        let level = ms.level();
        let den = ms.den();
        let d = g_rand.deg();
        let n = ms.dim();
        // g(T/den) * den^d by Horner.
        let mut acc = IntMatrix::zeros(n, n);
        for i in (0..=d).rev() {
            acc = acc.mul(t_rand);
            let c = g_rand.coeff(i) * den.pow((d - i) as u32);
            for r in 0..n {
                acc[(r, r)] += &c;
            }
        }
        let basis = echelon(&acc).right_kernel();
        if basis.len() != d {
            return Err(Error::Bookkeeping {
                level,
                detail: format!("eigenspace of dimension {} for a factor of degree {d}", basis.len()),
            });
        }
        let free = free_coordinates(&basis);

        // Canonical generator: the first valid prime whose operator has
        // squarefree characteristic polynomial on the eigenspace.
        let mut chosen = None;
        for l in (2..2000u64).filter(|&l| is_prime(l) && !level.is_multiple_of(l)) {
            let t = hecke(l)?;
            let (r, rden) = restrict_columns(&t, &den, &basis, &free)?;
            let cp = charpoly_scaled(&r, &rden, None)?;
            if cp.is_squarefree() {
                chosen = Some((l, t, cp));
                break;
            }
        }
        let (theta_prime, t_theta, g) = chosen.ok_or_else(|| Error::Bookkeeping {
            level,
            detail: "no Hecke operator generates the coefficient field below 2000".into(),
        })?;
        let field = NumberField::new_unchecked(g.clone());

        // w = h(A) w0 with h(x) = g(x) / (x - theta) = sum_j theta^j u_j.
        let mut s = Vec::with_capacity(d);
        let mut cur = basis[0].clone();
        for i in 0..d {
            let scale = den.pow((d - 1 - i) as u32);
            s.push(cur.iter().map(|v| v * &scale).collect::<Vec<_>>());
            cur = t_theta.mul_vec(&cur);
        }
        let mut u: Vec<Vec<BigInt>> = (0..d)
            .map(|j| {
                let mut v = vec![BigInt::zero(); n];
                for (i, si) in s.iter().enumerate().take(d - j) {
                    let c = g.coeff(i + j + 1);
                    for (x, y) in v.iter_mut().zip(si) {
                        *x += &c * y;
                    }
                }
                v
            })
            .collect();
        let content = u.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !content.is_zero() && !content.is_one() {
            for x in u.iter_mut().flatten() {
                *x /= &content;
            }
        }
        let mut orbit = NewformOrbit {
            level,
            index: 0,
            field,
            theta_prime,
            pairing_gen: 0,
            u,
            pairing_inv: FieldElement::one(d),
            tables: Tables::Small(Vec::new()),
        };
        orbit.finish(ms)?;
        Ok(orbit)
    }

    /// Reassembles an orbit from stored data.
    pub fn from_parts(
        ms: &ModularSymbols,
        index: usize,
        poly: UniPoly,
        theta_prime: u64,
        u: Vec<Vec<BigInt>>,
    ) -> Result<Self> {
        let d = poly.deg();
        if u.len() != d || u.iter().any(|v| v.len() != ms.dim()) {
            return Err(Error::Cache(format!("orbit data does not match level {}", ms.level())));
        }
        let mut orbit = NewformOrbit {
            level: ms.level(),
            index,
            field: NumberField::new_unchecked(poly),
            theta_prime,
            pairing_gen: 0,
            u,
            pairing_inv: FieldElement::one(d),
            tables: Tables::Small(Vec::new()),
        };
        orbit.finish(ms)?;
        Ok(orbit)
    }

    fn finish(&mut self, ms: &ModularSymbols) -> Result<()> {
        let d = self.degree();
        let k = (0..ms.dim())
            .find(|&k| self.u.iter().any(|v| !v[k].is_zero()))
            .ok_or_else(|| Error::Invariant("zero dual eigenvector".into()))?;
        self.pairing_gen = k;
        let den = ms.den();
        let pair = FieldElement::new(self.u.iter().map(|v| &v[k] * &den).collect(), BigInt::one());
        self.pairing_inv = self
            .field
            .inv(&pair)
            .ok_or_else(|| Error::Invariant("degenerate pairing".into()))?;
        let pres = ms.presentation();
        let big: Vec<Vec<BigInt>> = (0..d)
            .map(|j| {
                (0..pres.p1().len())
                    .map(|i| {
                        pres.coords(i)
                            .iter()
                            .map(|&(c, v)| &self.u[j][c as usize] * v)
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let small: Option<Vec<Vec<i64>>> = big
            .iter()
            .map(|row| row.iter().map(|x| x.to_i64().filter(|v| v.abs() < 1 << 40)).collect())
            .collect();
        self.tables = match small {
            Some(s) => Tables::Small(s),
            None => Tables::Big(big),
        };
        Ok(())
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn set_index(&mut self, i: usize) {
        self.index = i;
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn poly(&self) -> &UniPoly {
        self.field.poly()
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// The prime `l` with `a_l` equal to the field generator.
    pub fn theta_prime(&self) -> u64 {
        self.theta_prime
    }

    pub fn dual_vectors(&self) -> &[Vec<BigInt>] {
        &self.u
    }

    /// P1 index of the Manin symbol used in the pairing.
    pub fn pairing_symbol(&self, ms: &ModularSymbols) -> usize {
        ms.presentation().generator(self.pairing_gen)
    }

    /// `a_l` from the multiplicities of Manin symbols in `T_l e_b`.
    pub fn eigenvalue_from_counts(&self, counts: &[u32]) -> FieldElement {
        let t: Vec<BigInt> = match &self.tables {
            Tables::Small(tab) => tab
                .iter()
                .map(|row| {
                    let mut acc = 0i128;
                    for (&c, &v) in counts.iter().zip(row) {
                        if c != 0 {
                            acc += c as i128 * v as i128;
                        }
                    }
                    BigInt::from(acc)
                })
                .collect(),
            Tables::Big(tab) => tab
                .iter()
                .map(|row| {
                    counts
                        .iter()
                        .zip(row)
                        .filter(|(&c, _)| c != 0)
                        .map(|(&c, v)| v * c)
                        .sum()
                })
                .collect(),
        };
        self.field.mul(&FieldElement::new(t, BigInt::one()), &self.pairing_inv)
    }

    /// `a_l` by applying `T_l` to the pairing symbol.
    pub fn eigenvalue(&self, ms: &ModularSymbols, l: u64) -> Result<FieldElement> {
        if self.level.is_multiple_of(l) {
            return Err(Error::PrimeDividesLevel { ell: l, level: self.level });
        }
        let (c, d) = ms.presentation().p1().rep(self.pairing_symbol(ms));
        let counts: Vec<u32> = ms.hecke_counts(c, d, l).into_iter().map(|v| v as u32).collect();
        Ok(self.eigenvalue_from_counts(&counts))
    }

    /// Exact check of `T_l w = a_l w` over the coefficient field.
    pub fn verify_eigenvector(&self, ms: &ModularSymbols, l: u64, a: &FieldElement) -> Result<bool> {
        let t = ms.hecke_matrix(l)?;
        let den = ms.den();
        let tu: Vec<Vec<BigInt>> = self.u.iter().map(|v| t.mul_vec(v)).collect();
        for c in 0..ms.dim() {
            let lhs = FieldElement::new(tu.iter().map(|v| v[c].clone()).collect(), den.clone());
            let w = FieldElement::new(self.u.iter().map(|v| v[c].clone()).collect(), BigInt::one());
            if lhs != self.field.mul(a, &w) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Trace of `a_l`, an integer since `a_l` is integral.
    pub fn trace(&self, a: &FieldElement) -> Result<BigInt> {
        let (t, den) = self.field.trace(a);
        if !den.is_one() {
            return Err(Error::Invariant(format!(
                "non-integral eigenvalue at level {}",
                self.level
            )));
        }
        Ok(t)
    }
}
