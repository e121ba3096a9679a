mod common;

use common::*;
use eisdepth::arith::{factorize, primes_up_to, val_big, val_u64};
use eisdepth::congruence::{congruence_scan, sturm_bound};
use eisdepth::modsym::ModularSymbols;
use eisdepth::newform::{Engine, EngineConfig};
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hnf_identities(rows in small_matrix()) {
        check_hnf(&rows)?;
    }

    #[test]
    fn snf_identities((rows, ops) in square_with_ops()) {
        check_snf(&rows, &ops)?;
    }

    #[test]
    fn integer_valuation_is_additive(a in 1u64..100_000, b in 1u64..100_000, p in prop::sample::select(vec![3u64, 5, 7, 11])) {
        prop_assert_eq!(val_u64(a * b, p), val_u64(a, p) + val_u64(b, p));
        prop_assert_eq!(val_big(&BigInt::from(a * b), p), Some(val_u64(a, p) + val_u64(b, p)));
        let back: u64 = factorize(a).iter().map(|&(q, e)| q.pow(e)).product();
        prop_assert_eq!(back, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn ramification_sums_to_degree(f in monic_poly(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        check_sum_ef(&f, p)?;
    }

    #[test]
    fn prime_valuations_are_multiplicative(
        f in monic_poly(),
        p in prop::sample::select(vec![2u64, 3, 5]),
        x in prop::collection::vec(-30i64..=30, 4),
        y in prop::collection::vec(-30i64..=30, 4),
    ) {
        check_valuation(&f, p, &x, &y)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hecke_operators_commute(
        level in prop::sample::select(vec![11u64, 30, 55, 57, 66, 91, 155]),
        a in prop::sample::select(primes_up_to(30)),
        b in prop::sample::select(primes_up_to(30)),
    ) {
        prop_assume!(level % a != 0 && level % b != 0);
        check_hecke_commute(&ModularSymbols::new(level).unwrap(), a, b)?;
    }
}

#[test]
fn dimension_formula_on_table_divisors() {
    for m in table_divisors() {
        let ms = ModularSymbols::new(m).unwrap();
        assert_eq!(ms.cuspidal_dim() as i64, genus(m), "level {m}");
    }
}

#[test]
fn doubling_the_scan_bound_changes_nothing() {
    let mut e = Engine::new(EngineConfig::default()).unwrap();
    for (n, p) in [(55u64, 5u64), (57, 3), (66, 5), (66, 3)] {
        let b = sturm_bound(n).unwrap();
        let base = congruence_scan(&mut e, n, p, Some(b)).unwrap();
        let wide = congruence_scan(&mut e, n, p, Some(2 * b)).unwrap();
        assert_eq!(base, wide, "N = {n}, p = {p}");
        assert!(!base.is_empty());
    }
}
