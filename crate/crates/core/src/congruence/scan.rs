//! Per-prime congruence exponents between newforms of level dividing `N` and
//! the Eisenstein series.

use num_bigint::BigInt;
use serde::Serialize;

use super::eisenstein::{sturm_bound, validate_level, validate_prime};
use crate::arith::primes_up_to;
use crate::error::{Error, Result};
use crate::newform::Engine;
use crate::numfield::{p_maximal_order, primes_above};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceRecord {
    pub level: u64,
    pub orbit: usize,
    pub degree: usize,
    pub p: u64,
    /// Position of lambda among the primes above `p` in canonical order.
    pub lambda: usize,
    pub e: u32,
    pub f: u32,
    pub r: u32,
}

impl CongruenceRecord {
    /// `#(O / lambda) = p^f`.
    pub fn residue_field_size(&self) -> u64 {
        self.p.pow(self.f)
    }

    /// Contribution `f * r` to the depth.
    pub fn weight(&self) -> u64 {
        self.f as u64 * self.r as u64
    }
}

/// Records with `r >= 1`, sorted by level, orbit and lambda. The scan runs over
/// primes `l <= bound` (default: the Sturm bound) not dividing `n`.
pub fn congruence_scan(
    engine: &mut Engine,
    n: u64,
    p: u64,
    bound: Option<u64>,
) -> Result<Vec<CongruenceRecord>> {
    validate_level(n)?;
    validate_prime(p)?;
    let bound = match bound {
        Some(b) => b,
        None => sturm_bound(n)?,
    };
    engine.ensure_bound(n, bound)?;
    let scan_primes: Vec<u64> = primes_up_to(bound).into_iter().filter(|l| !n.is_multiple_of(*l)).collect();
    let mut out = Vec::new();
    for (m, i) in engine.orbits_dividing(n)? {
        let ld = engine.level_data(m).expect("level computed");
        let orbit = &ld.orbits()[i];
        let order = p_maximal_order(orbit.field(), p)?;
        for (k, lam) in primes_above(&order)?.iter().enumerate() {
            let mut best: Option<i64> = None;
            for &l in &scan_primes {
                let a = ld.eigenvalue(i, l).ok_or_else(|| {
                    Error::Computation(format!("a_{l} missing at level {m}"))
                })?;
                let diff = a.add_int(&BigInt::from(-(1 + l as i64)));
                if let Some(v) = lam.valuation(&diff) {
                    if v < 0 {
                        return Err(Error::Invariant(format!(
                            "a_{l} is not integral at a prime above {p} (level {m})"
                        )));
                    }
                    best = Some(best.map_or(v, |b| b.min(v)));
                    if v == 0 {
                        break;
                    }
                }
            }
            let r = best.ok_or_else(|| {
                Error::Invariant(format!(
                    "a cusp form at level {m} has Eisenstein eigenvalues for every l <= {bound}"
                ))
            })?;
            if r >= 1 {
                out.push(CongruenceRecord {
                    level: m,
                    orbit: i,
                    degree: orbit.degree(),
                    p,
                    lambda: k,
                    e: lam.e,
                    f: lam.f,
                    r: r as u32,
                });
            }
        }
    }
    Ok(out)
}

/// `D = sum f r`.
pub fn depth_total(records: &[CongruenceRecord]) -> u64 {
    records.iter().map(CongruenceRecord::weight).sum()
}
