//! Splitting the cuspidal plus space at one level into new Galois orbits.

use std::collections::HashMap;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::orbit::NewformOrbit;
use crate::arith::{is_prime, num_divisors};
use crate::error::{Error, Result};
use crate::linalg::charpoly::charpoly_scaled;
use crate::linalg::{factor_rational, IntMatrix, UniPoly};
use crate::modsym::ModularSymbols;
use crate::numfield::FieldElement;

const RAND_PRIMES: usize = 6;
const MAX_DRAWS: usize = 20;
/// Number of valid primes whose traces order the orbits.
pub const ORDER_PRIMES: usize = 20;

/// An orbit at a proper divisor level together with its modular symbols.
pub struct LowerOrbit<'a> {
    pub orbit: &'a NewformOrbit,
    pub space: &'a ModularSymbols,
}

/// Memoized `T_l` numerators on `V+`.
pub struct HeckeCache<'a> {
    ms: &'a ModularSymbols,
    mats: HashMap<u64, IntMatrix>,
}

impl<'a> HeckeCache<'a> {
    pub fn new(ms: &'a ModularSymbols) -> Self {
        HeckeCache {
            ms,
            mats: HashMap::new(),
        }
    }

    pub fn get(&mut self, l: u64) -> Result<IntMatrix> {
        if let Some(m) = self.mats.get(&l) {
            return Ok(m.clone());
        }
        let m = self.ms.hecke_matrix(l)?;
        self.mats.insert(l, m.clone());
        Ok(m)
    }
}

pub fn valid_primes(level: u64, count: usize) -> Vec<u64> {
    (2..)
        .filter(|&l| is_prime(l) && !level.is_multiple_of(l))
        .take(count)
        .collect()
}

/// The new orbits at level `M`, in canonical order.
pub fn decompose_new(
    ms: &ModularSymbols,
    lower: &[LowerOrbit<'_>],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<NewformOrbit>> {
    let m = ms.level();
    let g = ms.cuspidal_dim();
    let old_dim: usize = lower
        .iter()
        .map(|lo| lo.orbit.degree() * num_divisors(m / lo.orbit.level()) as usize)
        .sum();
    if old_dim > g {
        return Err(Error::Bookkeeping {
            level: m,
            detail: format!("old part of dimension {old_dim} exceeds {g}"),
        });
    }
    if old_dim == g {
        return Ok(Vec::new());
    }
    let primes = valid_primes(m, RAND_PRIMES);
    let mut hecke = HeckeCache::new(ms);
    let cusp_ops: Vec<(IntMatrix, BigInt)> = primes
        .iter()
        .map(|&l| ms.restrict_to_cuspidal(&hecke.get(l)?, &ms.den()))
        .collect::<Result<_>>()?;
    // a_l of the lower orbits at the random primes.
    let lower_ev: Vec<Vec<FieldElement>> = lower
        .iter()
        .map(|lo| {
            primes
                .iter()
                .map(|&l| lo.orbit.eigenvalue(lo.space, l))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;

    let mut last_err = String::new();
    for _ in 0..MAX_DRAWS {
        let coeffs: Vec<i64> = loop {
            let c: Vec<i64> = (0..primes.len()).map(|_| rng.gen_range(-5..=5)).collect();
            if c.iter().any(|&x| x != 0) {
                break c;
            }
        };
        match try_split(ms, lower, &primes, &coeffs, &cusp_ops, &lower_ev, &mut hecke, old_dim) {
            Ok(orbits) => return canonical_order(ms, orbits),
            Err(Error::Bookkeeping { detail, .. }) => last_err = detail,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Bookkeeping {
        level: m,
        detail: format!("no separating Hecke combination after {MAX_DRAWS} draws: {last_err}"),
    })
}

#[allow(clippy::too_many_arguments)]
fn try_split(
    ms: &ModularSymbols,
    lower: &[LowerOrbit<'_>],
    primes: &[u64],
    coeffs: &[i64],
    cusp_ops: &[(IntMatrix, BigInt)],
    lower_ev: &[Vec<FieldElement>],
    hecke: &mut HeckeCache<'_>,
    old_dim: usize,
) -> Result<Vec<NewformOrbit>> {
    let m = ms.level();
    let bk = |detail: String| Error::Bookkeeping { level: m, detail };
    let g = ms.cuspidal_dim();
    let combine = |mats: Vec<IntMatrix>| -> IntMatrix {
        let mut acc = IntMatrix::zeros(mats[0].rows(), mats[0].cols());
        for (mat, &c) in mats.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add(&mat.scale(&BigInt::from(c)));
            }
        }
        acc
    };
    let t_cusp = combine(cusp_ops.iter().map(|(a, _)| a.clone()).collect());
    let full = charpoly_scaled(&t_cusp, &cusp_ops[0].1, None)?;

    let mut old = UniPoly::one();
    for (lo, ev) in lower.iter().zip(lower_ev) {
        let field = lo.orbit.field();
        let mut x = FieldElement::zero(field.degree());
        for (a, &c) in ev.iter().zip(coeffs) {
            x = x.add(&a.scale_int(&BigInt::from(c)));
        }
        let cp = field.charpoly_of(&x)?;
        old = old.mul(&cp.pow(num_divisors(m / lo.orbit.level()) as u32));
    }
    let new = full
        .div_exact(&old)
        .ok_or_else(|| bk("old systems do not divide the characteristic polynomial".into()))?;
    if !new.is_squarefree() {
        return Err(bk("new part is not squarefree".into()));
    }
    if new.gcd(&old).deg() > 0 {
        return Err(bk("new and old systems collide".into()));
    }
    let e0: i64 = primes.iter().zip(coeffs).map(|(&l, &c)| c * (1 + l as i64)).sum();
    if new.eval(&BigInt::from(e0)) == BigInt::from(0) {
        return Err(bk("a cusp form collides with the Eisenstein value".into()));
    }
    let factors = factor_rational(&new)?;
    let new_dim: usize = factors.iter().map(|(f, _)| f.deg()).sum();
    if new_dim + old_dim != g {
        return Err(bk(format!("{new_dim} new + {old_dim} old != {g}")));
    }

    let t_full = combine(
        primes
            .iter()
            .map(|&l| hecke.get(l))
            .collect::<Result<Vec<_>>>()?,
    );
    factors
        .iter()
        .map(|(f, _)| NewformOrbit::from_factor(ms, &t_full, f, |l| hecke.get(l)))
        .collect()
}

/// Sort key: degree, traces of `a_l` over the first valid primes, then the polynomial.
pub fn order_key(ms: &ModularSymbols, orbit: &NewformOrbit) -> Result<(usize, Vec<BigInt>, Vec<BigInt>)> {
    let traces = valid_primes(ms.level(), ORDER_PRIMES)
        .into_iter()
        .map(|l| orbit.trace(&orbit.eigenvalue(ms, l)?))
        .collect::<Result<Vec<_>>>()?;
    Ok((orbit.degree(), traces, orbit.poly().coeffs().to_vec()))
}

fn canonical_order(ms: &ModularSymbols, orbits: Vec<NewformOrbit>) -> Result<Vec<NewformOrbit>> {
    let mut keyed = orbits
        .into_iter()
        .map(|o| Ok((order_key(ms, &o)?, o)))
        .collect::<Result<Vec<_>>>()?;
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed
        .into_iter()
        .enumerate()
        .map(|(i, (_, mut o))| {
            o.set_index(i);
            o
        })
        .collect())
}
