//! Small-integer number theory used throughout: sieving, factoring levels,
//! valuations, Euler phi and word-size modular arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Prime factorization by trial division; `n >= 1`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // Deterministic witness set for all 64-bit integers.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sorted list of positive divisors.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn num_divisors(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `val_p(n)` for `n != 0`.
pub fn val_u64(mut n: u64, p: u64) -> u32 {
    assert!(n != 0, "valuation of zero");
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// `val_p(n)` for nonzero big integers; `None` for zero.
pub fn val_big(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo prime `m`.
pub fn inv_mod(a: u64, m: u64) -> u64 {
    let a = a % m;
    assert!(a != 0, "zero has no inverse mod {m}");
    pow_mod(a, m - 2, m)
}

/// Inverse modulo an arbitrary modulus via extended Euclid; `None` if not a unit.
pub fn inv_mod_general(a: i64, m: i64) -> Option<i64> {
    let g = a.extended_gcd(&m);
    if g.gcd.abs() != 1 {
        return None;
    }
    Some((g.x * g.gcd).rem_euclid(m))
}

pub fn big_mod_u64(a: &BigInt, m: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(m));
    u64::try_from(r).expect("residue fits")
}

/// Symmetric representative of `a mod m` in `(-m/2, m/2]`.
pub fn symmetric_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    let half: BigInt = m >> 1;
    if r > half {
        r - m
    } else {
        r
    }
}

/// Primes just below `2^62` (descending), used by multi-modular routines.
pub fn large_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = (1u64 << 62) - 57;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

/// Ceiling square root of a nonnegative big integer.
pub fn ceil_sqrt(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &(&s * &s) == n {
        s
    } else {
        s + BigInt::one()
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_and_primality_agree() {
        let ps = primes_up_to(2000);
        for n in 0..2000u64 {
            assert_eq!(ps.binary_search(&n).is_ok(), is_prime(n), "n = {n}");
        }
        assert!(is_prime((1u64 << 61) - 1));
    }

    #[test]
    fn divisor_functions() {
        assert_eq!(divisors(66), vec![1, 2, 3, 6, 11, 22, 33, 66]);
        assert_eq!(num_divisors(6), 4);
        assert_eq!(euler_phi(341), 300);
        assert_eq!(euler_phi(418), 180);
        assert!(is_squarefree(330));
        assert!(!is_squarefree(12));
    }

    #[test]
    fn valuations() {
        assert_eq!(val_u64(75, 5), 2);
        assert_eq!(val_big(&BigInt::from(-250), 5), Some(3));
        assert_eq!(val_big(&BigInt::zero(), 5), None);
    }

    #[test]
    fn inverse_mod_general_unit() {
        assert_eq!(inv_mod_general(3, 10), Some(7));
        assert_eq!(inv_mod_general(4, 10), None);
    }
}
