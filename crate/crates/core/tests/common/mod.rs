//! Independent oracles and property checks shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use eisdepth::arith::{divisors, euler_phi, gcd_u64, pow_mod, prime_divisors};
use eisdepth::linalg::hnf::{hnf, hnf_basis, is_hnf};
use eisdepth::linalg::{snf, IntMatrix, UniPoly};
use eisdepth::modsym::ModularSymbols;
use eisdepth::numfield::{p_maximal_order, primes_above, NumberField};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Legendre symbol `(d / q)` for odd primes, plus the two `q = 2` cases used below.
fn kronecker(q: u64, d: i64) -> i64 {
    if q == 2 {
        return match d {
            -1 => 0,
            -3 => -1,
            _ => unreachable!(),
        };
    }
    let r = d.rem_euclid(q as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (q - 1) / 2, q) == 1 {
        1
    } else {
        -1
    }
}

/// Genus of X_0(M) from the index, elliptic points and cusps.
pub fn genus(m: u64) -> i64 {
    let ps = prime_divisors(m);
    let mu = ps.iter().fold(m, |a, &q| a / q * (q + 1)) as i64;
    let nu2: i64 = if m.is_multiple_of(4) {
        0
    } else {
        ps.iter().map(|&q| 1 + kronecker(q, -1)).product()
    };
    let nu3: i64 = if m.is_multiple_of(9) {
        0
    } else {
        ps.iter().map(|&q| 1 + kronecker(q, -3)).product()
    };
    let cusps: i64 = divisors(m)
        .into_iter()
        .map(|d| euler_phi(gcd_u64(d, m / d)) as i64)
        .sum();
    let twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps;
    assert_eq!(twelve_g % 12, 0);
    twelve_g / 12
}

/// `a_p = p + 1 - #E(F_p)` for `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
pub fn ap_curve(c: [i64; 5], p: u64) -> i64 {
    let p = p as i64;
    let [a1, a2, a3, a4, a6] = c;
    let mut count = 1;
    for x in 0..p {
        for y in 0..p {
            let l = y * y + a1 * x * y + a3 * y;
            let r = x * x * x + a2 * x * x + a4 * x + a6;
            if (l - r).rem_euclid(p) == 0 {
                count += 1;
            }
        }
    }
    p + 1 - count
}

pub const X0_11: [i64; 5] = [0, -1, 1, -10, -20];

/// Levels of the reference tables.
pub const TABLE_LEVELS: [u64; 14] = [55, 57, 66, 91, 155, 165, 182, 203, 217, 319, 330, 341, 399, 418];

/// Every level dividing one of [`TABLE_LEVELS`], ascending.
pub fn table_divisors() -> Vec<u64> {
    let mut v: Vec<u64> = TABLE_LEVELS.iter().flat_map(|&n| divisors(n)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows[0].len(), rows.iter().map(|r| big(r)).collect())
}

/// Small integer matrices with 1..=5 rows and 1..=5 columns.
pub fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i64..=20, c), r))
}

/// A square matrix and elementary operations `(target, source, multiplier)`.
pub type Scrambled = (Vec<Vec<i64>>, Vec<(usize, usize, i64)>);

/// Square matrices with an elementary-operation sequence to scramble them.
pub fn square_with_ops() -> impl Strategy<Value = Scrambled> {
    (1usize..=4).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(-12i64..=12, n), n),
            prop::collection::vec((0..n, 0..n, -3i64..=3), 0..12),
        )
    })
}

/// `h = u m` (padded with zero rows), `u` unimodular and `h` in HNF.
pub fn check_hnf(rows: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let m = matrix(rows);
    let (h, u) = hnf(&m);
    prop_assert!(h.rows() == 0 || is_hnf(&h));
    prop_assert_eq!(u.det().abs(), BigInt::one());
    let um = u.mul(&m);
    for i in 0..um.rows() {
        if i < h.rows() {
            prop_assert_eq!(um.row(i), h.row(i));
        } else {
            prop_assert!(um.row(i).iter().all(Zero::is_zero));
        }
    }
    prop_assert_eq!(hnf_basis(&m), h);
    Ok(())
}

/// Elementary divisors form a divisibility chain, multiply to `|det|` and are
/// unchanged by unimodular row and column operations.
pub fn check_snf(rows: &[Vec<i64>], ops: &[(usize, usize, i64)]) -> Result<(), TestCaseError> {
    let m = matrix(rows);
    let d = snf(&m);
    for w in d.windows(2) {
        prop_assert!((&w[1] % &w[0]).is_zero());
    }
    prop_assert!(d.iter().all(|x| x.is_positive()));
    let det = m.det().abs();
    if det.is_zero() {
        prop_assert!(d.len() < m.rows());
    } else {
        prop_assert_eq!(d.len(), m.rows());
        prop_assert_eq!(d.iter().product::<BigInt>(), det);
    }
    let mut a = m.to_rows();
    let n = a.len();
    for (k, &(i, j, c)) in ops.iter().enumerate() {
        if i == j {
            continue;
        }
        if k % 2 == 0 {
            for col in 0..n {
                let t = &a[j][col] * c;
                a[i][col] += t;
            }
        } else {
            for row in a.iter_mut() {
                let t = &row[j] * c;
                row[i] += t;
            }
        }
    }
    prop_assert_eq!(snf(&IntMatrix::from_rows(n, a)), d);
    Ok(())
}

/// Monic polynomials of degree 2..=4 with small coefficients.
pub fn monic_poly() -> impl Strategy<Value = Vec<i64>> {
    (2usize..=4).prop_flat_map(|d| {
        prop::collection::vec(-9i64..=9, d).prop_map(|mut c| {
            c.push(1);
            c
        })
    })
}

fn field(coeffs: &[i64]) -> Option<NumberField> {
    NumberField::new(UniPoly::from_i64(coeffs)).ok()
}

/// `sum e f = [K : Q]` over the primes above `p`.
pub fn check_sum_ef(coeffs: &[i64], p: u64) -> Result<(), TestCaseError> {
    let Some(k) = field(coeffs) else {
        return Ok(());
    };
    let o = p_maximal_order(&k, p).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let ps = primes_above(&o).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let s: u32 = ps.iter().map(|l| l.e * l.f).sum();
    prop_assert_eq!(s as usize, k.degree());
    Ok(())
}

/// `v(xy) = v(x) + v(y)`, `v(x + y) >= min` and `v(p) = e` for every prime above `p`.
pub fn check_valuation(coeffs: &[i64], p: u64, x: &[i64], y: &[i64]) -> Result<(), TestCaseError> {
    let Some(k) = field(coeffs) else {
        return Ok(());
    };
    let d = k.degree();
    let elt = |v: &[i64]| k.element(big(&v[..d]), BigInt::one());
    let (x, y) = (elt(x), elt(y));
    let o = p_maximal_order(&k, p).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for l in primes_above(&o).map_err(|e| TestCaseError::fail(e.to_string()))? {
        prop_assert_eq!(l.valuation(&k.from_int(p as i64)), Some(l.e as i64));
        prop_assert_eq!(l.valuation(&l.beta), Some(-1));
        let (vx, vy) = (l.valuation(&x), l.valuation(&y));
        let vxy = l.valuation(&k.mul(&x, &y));
        match (vx, vy) {
            (Some(a), Some(b)) => prop_assert_eq!(vxy, Some(a + b)),
            _ => prop_assert_eq!(vxy, None),
        }
        if let (Some(a), Some(b)) = (vx, vy) {
            if let Some(s) = l.valuation(&x.add(&y)) {
                prop_assert!(s >= a.min(b));
                if a != b {
                    prop_assert_eq!(s, a.min(b));
                }
            }
        }
        if let Some(a) = vx {
            if let Some(inv) = k.inv(&x) {
                prop_assert_eq!(l.valuation(&inv), Some(-a));
            }
        }
    }
    Ok(())
}

/// `T_a T_b = T_b T_a` on the full space of Manin symbols.
pub fn check_hecke_commute(ms: &ModularSymbols, a: u64, b: u64) -> Result<(), TestCaseError> {
    let ta = ms.hecke_matrix(a).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let tb = ms.hecke_matrix(b).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(ta.mul(&tb), tb.mul(&ta));
    Ok(())
}
