//! The weight-2 Eisenstein series of squarefree level: validation, Sturm
//! bound, coefficients and candidate primes.

use num_integer::Integer;

use crate::arith::{euler_phi, is_prime, is_squarefree, prime_divisors};
use crate::error::{Error, Result};

/// Accepts squarefree `N > 6`.
pub fn validate_level(n: u64) -> Result<()> {
    if n <= 6 {
        return Err(Error::LevelTooSmall(n));
    }
    if !is_squarefree(n) {
        return Err(Error::NotSquarefree(n));
    }
    Ok(())
}

/// Accepts odd primes.
pub fn validate_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::PrimeTwoExcluded);
    }
    Ok(())
}

/// `floor(N prod_{q | N} (q + 1) / 6)`.
pub fn sturm_bound(n: u64) -> Result<u64> {
    if n == 0 || !is_squarefree(n) {
        return Err(Error::NotSquarefree(n));
    }
    let num = prime_divisors(n)
        .into_iter()
        .fold(n as u128, |acc, q| acc * (q as u128 + 1));
    Ok((num / 6) as u64)
}

/// `a_l(E) = 1 + l` for primes `l` not dividing `N`.
pub fn eisenstein_coeff(n: u64, l: u64) -> Result<u64> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    if n.is_multiple_of(l) {
        return Err(Error::PrimeDividesLevel { ell: l, level: n });
    }
    Ok(1 + l)
}

/// Constant term `(-1)^(t+1) phi(N) / 24` as a reduced fraction.
pub fn eisenstein_constant(n: u64) -> Result<(i64, i64)> {
    if !is_squarefree(n) {
        return Err(Error::NotSquarefree(n));
    }
    let t = prime_divisors(n).len();
    let phi = euler_phi(n) as i64;
    let g = phi.gcd(&24);
    let sign = if t % 2 == 1 { 1 } else { -1 };
    Ok((sign * phi / g, 24 / g))
}

/// Odd primes dividing `prod_{q | N} (q^2 - 1)`.
pub fn candidate_primes(n: u64) -> Result<Vec<u64>> {
    validate_level(n)?;
    let mut out: Vec<u64> = prime_divisors(n)
        .into_iter()
        .flat_map(|q| {
            let mut v = prime_divisors(q - 1);
            v.extend(prime_divisors(q + 1));
            v
        })
        .filter(|&p| p != 2)
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_bound(66).unwrap(), 1584);
        assert_eq!(sturm_bound(11).unwrap(), 22);
        assert_eq!(sturm_bound(418).unwrap(), 50160);
        assert!(sturm_bound(12).is_err());
    }

    #[test]
    fn constants() {
        assert_eq!(eisenstein_constant(11).unwrap(), (5, 12));
        assert_eq!(eisenstein_constant(66).unwrap(), (5, 6));
        assert_eq!(eisenstein_constant(6).unwrap(), (-1, 12));
        assert_eq!(eisenstein_coeff(66, 5).unwrap(), 6);
        assert!(eisenstein_coeff(66, 11).is_err());
    }

    #[test]
    fn candidates() {
        assert!(candidate_primes(165).unwrap().contains(&5));
        let c = candidate_primes(203).unwrap();
        assert!(c.contains(&5) && c.contains(&7));
        assert!(candidate_primes(6).is_err());
        assert!(matches!(validate_level(12), Err(Error::NotSquarefree(12))));
        assert!(matches!(validate_prime(2), Err(Error::PrimeTwoExcluded)));
    }
}
