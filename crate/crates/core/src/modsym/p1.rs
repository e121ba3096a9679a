//! The projective line over `Z/M`, with a dense lookup table for normalization.

use crate::arith::{gcd_u64, prime_divisors};
use crate::error::{Error, Result};

/// Largest level for which the dense `M x M` lookup table is built.
pub const MAX_LEVEL: u64 = 6000;

#[derive(Clone, Debug)]
pub struct P1List {
    m: u64,
    reps: Vec<(u32, u32)>,
    table: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl P1List {
    /// Canonical representatives are the lexicographically smallest pair in
    /// each orbit of `(Z/M)^*` acting by scaling; indices follow that order.
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 || m > MAX_LEVEL {
            return Err(Error::Computation(format!(
                "level {m} outside the supported range 1..={MAX_LEVEL}"
            )));
        }
        let mu = m as usize;
        let units: Vec<u64> = (1..=m).filter(|&u| gcd_u64(u % m, m) == 1).map(|u| u % m).collect();
        let mut table = vec![NONE; mu * mu];
        let mut reps = Vec::new();
        for c in 0..m {
            for d in 0..m {
                let idx = (c * m + d) as usize;
                if table[idx] != NONE || gcd_u64(gcd_u64(c, d), m) != 1 {
                    continue;
                }
                let k = reps.len() as u32;
                reps.push((c as u32, d as u32));
                for &u in &units {
                    let (uc, ud) = ((u * c) % m, (u * d) % m);
                    table[(uc * m + ud) as usize] = k;
                }
            }
        }
        Ok(P1List { m, reps, table })
    }

    pub fn level(&self) -> u64 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, i: usize) -> (u64, u64) {
        let (c, d) = self.reps[i];
        (c as u64, d as u64)
    }

    /// Index of `(c : d)` for arbitrary integers; `None` if `gcd(c, d, M) > 1`.
    #[inline]
    pub fn index(&self, c: i64, d: i64) -> Option<usize> {
        let m = self.m as i64;
        let (c, d) = (c.rem_euclid(m), d.rem_euclid(m));
        let k = self.table[(c * m + d) as usize];
        (k != NONE).then_some(k as usize)
    }

    /// Index of already reduced residues.
    #[inline]
    pub fn index_reduced(&self, c: u64, d: u64) -> u32 {
        self.table[(c * self.m + d) as usize]
    }

    /// Expected size `M prod_{q | M} (1 + 1/q)`.
    pub fn expected_size(m: u64) -> u64 {
        prime_divisors(m)
            .into_iter()
            .fold(m, |acc, q| acc / q * (q + 1))
    }

    /// `(c : d) -> (d : -c)`.
    pub fn apply_s(&self, i: usize) -> usize {
        let (c, d) = self.rep(i);
        self.index(d as i64, -(c as i64)).unwrap()
    }

    /// `(c : d) -> (d : -c - d)`, an element of order 3.
    pub fn apply_t(&self, i: usize) -> usize {
        let (c, d) = self.rep(i);
        self.index(d as i64, -(c as i64) - d as i64).unwrap()
    }

    /// `(c : d) -> (-c : d)`, the star involution.
    pub fn apply_i(&self, i: usize) -> usize {
        let (c, d) = self.rep(i);
        self.index(-(c as i64), d as i64).unwrap()
    }
}
