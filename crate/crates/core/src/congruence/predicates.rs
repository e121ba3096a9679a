//! Valuation bounds and strictness predicates for the depth of Eisenstein
//! congruences.

use serde::Serialize;

use crate::arith::{euler_phi, gcd_u64, pow_mod, prime_divisors, val_u64};

/// `val_p(phi(N))`.
pub fn val_phi(n: u64, p: u64) -> u32 {
    val_u64(euler_phi(n), p)
}

/// `val_p` of the numerator of `phi(N) / 24`.
pub fn val_phi24_numerator(n: u64, p: u64) -> u32 {
    let phi = euler_phi(n);
    val_u64(phi / gcd_u64(phi, 24), p)
}

/// `val_p(prod_{q | N} (q^2 - 1))`, asserted only when `p` does not divide `N`.
pub fn ohta_bound(n: u64, p: u64) -> Option<u32> {
    if n.is_multiple_of(p) {
        return None;
    }
    Some(
        prime_divisors(n)
            .into_iter()
            .map(|q| val_u64(q - 1, p) + val_u64(q + 1, p))
            .sum(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prediction {
    /// At least three prime factors and `p | phi(N)`.
    StrictThreePrimes,
    /// `N = q r`, `p` prime to `N`, `q = 1 (mod p)`, and the two-prime criterion holds.
    StrictTwoPrimes,
    /// Two-prime criterion applies and fails.
    NotStrictTwoPrimes,
    NoTheorem,
    /// `p < 5`.
    NotApplicable,
}

impl Prediction {
    pub fn predicts_strict(self) -> Option<bool> {
        match self {
            Prediction::StrictThreePrimes | Prediction::StrictTwoPrimes => Some(true),
            Prediction::NotStrictTwoPrimes => Some(false),
            Prediction::NoTheorem | Prediction::NotApplicable => None,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Prediction::StrictThreePrimes => "strict (at least three prime factors)",
            Prediction::StrictTwoPrimes => "strict (two-prime criterion holds)",
            Prediction::NotStrictTwoPrimes => "not strict (two-prime criterion fails)",
            Prediction::NoTheorem => "no theorem applies",
            Prediction::NotApplicable => "not applicable for p < 5",
        }
    }
}

/// `r = +-1 (mod p)` or `r` is a `p`-th power modulo `q`, for `q = 1 (mod p)`.
pub fn two_prime_criterion(q: u64, r: u64, p: u64) -> bool {
    let rp = r % p;
    rp == 1 || rp == p - 1 || pow_mod(r % q, (q - 1) / p, q) == 1
}

pub fn strictness_prediction(n: u64, p: u64) -> Prediction {
    if p < 5 {
        return Prediction::NotApplicable;
    }
    let qs = prime_divisors(n);
    if qs.len() >= 3 {
        return if val_phi(n, p) > 0 {
            Prediction::StrictThreePrimes
        } else {
            Prediction::NoTheorem
        };
    }
    if qs.len() == 2 && !n.is_multiple_of(p) {
        let (a, b) = (qs[0], qs[1]);
        if let Some((q, r)) = [(a, b), (b, a)].into_iter().find(|&(q, _)| q % p == 1) {
            return if two_prime_criterion(q, r, p) {
                Prediction::StrictTwoPrimes
            } else {
                Prediction::NotStrictTwoPrimes
            };
        }
    }
    Prediction::NoTheorem
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ohta_examples() {
        assert_eq!(ohta_bound(341, 5), Some(2));
        assert_eq!(ohta_bound(203, 5), Some(1));
        assert_eq!(ohta_bound(66, 5), Some(1));
        assert_eq!(ohta_bound(165, 5), None);
    }

    #[test]
    fn predicate_examples() {
        assert_eq!(strictness_prediction(217, 5), Prediction::NotStrictTwoPrimes);
        assert_eq!(strictness_prediction(319, 5), Prediction::StrictTwoPrimes);
        assert_eq!(strictness_prediction(319, 7), Prediction::NotStrictTwoPrimes);
        assert_eq!(strictness_prediction(341, 5), Prediction::StrictTwoPrimes);
        assert_eq!(strictness_prediction(330, 5), Prediction::StrictThreePrimes);
        assert_eq!(strictness_prediction(57, 3), Prediction::NotApplicable);
        assert_eq!(strictness_prediction(11, 5), Prediction::NoTheorem);
    }

    #[test]
    fn valuations_of_phi() {
        assert_eq!(val_phi(341, 5), 2);
        assert_eq!(val_phi(57, 3), 2);
        assert_eq!(val_phi24_numerator(57, 3), 1);
        assert_eq!(val_phi(203, 5), 0);
    }
}
