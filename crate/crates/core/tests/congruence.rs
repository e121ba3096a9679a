use eisdepth::congruence::*;
use eisdepth::newform::{Engine, EngineConfig};
use eisdepth::Error;

fn engine() -> Engine {
    Engine::new(EngineConfig::default()).unwrap()
}

fn rows(e: &mut Engine, n: u64, p: u64) -> Vec<(u64, u32, u32, u64)> {
    let mut v: Vec<_> = congruence_scan(e, n, p, None)
        .unwrap()
        .iter()
        .map(|c| (c.level, c.r, c.e, c.residue_field_size()))
        .collect();
    v.sort_unstable();
    v
}

#[test]
fn small_tables() {
    let mut e = engine();
    assert_eq!(rows(&mut e, 55, 5), [(11, 1, 1, 5)]);
    assert_eq!(rows(&mut e, 57, 3), [(19, 1, 1, 3)]);
    assert_eq!(rows(&mut e, 66, 5), [(11, 1, 1, 5), (66, 1, 1, 5)]);
    assert_eq!(rows(&mut e, 91, 3), [(91, 1, 1, 3)]);
    assert_eq!(rows(&mut e, 165, 5), [(11, 1, 1, 5), (165, 1, 1, 5)]);
    assert_eq!(rows(&mut e, 203, 7), [(29, 1, 1, 7)]);
    assert_eq!(rows(&mut e, 217, 5), [(31, 1, 2, 5)]);
}

#[test]
fn prime_levels() {
    let mut e = engine();
    // (N - 1)/12 numerators: 11 -> 5, 31 -> 5 (30/12 = 5/2).
    assert_eq!(rows(&mut e, 11, 5), [(11, 1, 1, 5)]);
    assert_eq!(rows(&mut e, 31, 5), [(31, 1, 2, 5)]);
    assert!(rows(&mut e, 11, 3).is_empty());
    let recs = congruence_scan(&mut e, 31, 5, None).unwrap();
    assert_eq!(depth_total(&recs), 1);
    assert_eq!(recs[0].weight(), 1);
    assert_eq!(recs[0].degree, 2);
}

#[test]
fn no_congruence_when_p_is_not_eisenstein() {
    let mut e = engine();
    assert!(rows(&mut e, 55, 7).is_empty());
    assert!(rows(&mut e, 91, 5).is_empty());
}

#[test]
fn depth_matches_table_weights() {
    let mut e = engine();
    let recs = congruence_scan(&mut e, 66, 5, None).unwrap();
    assert_eq!(depth_total(&recs), recs.iter().map(|r| r.weight()).sum::<u64>());
    assert_eq!(depth_total(&recs), 2);
    assert!(recs.windows(2).all(|w| (w[0].level, w[0].orbit, w[0].lambda) < (w[1].level, w[1].orbit, w[1].lambda)));
}

#[test]
fn validation() {
    assert!(matches!(validate_level(12), Err(Error::NotSquarefree(12))));
    assert!(matches!(validate_level(6), Err(Error::LevelTooSmall(6))));
    assert!(validate_level(7).is_ok());
    assert!(matches!(validate_prime(2), Err(Error::PrimeTwoExcluded)));
    assert!(matches!(validate_prime(15), Err(Error::NotPrime(15))));
    assert!(Error::PrimeTwoExcluded.to_string().contains("p = 2"));
    let mut e = engine();
    assert!(congruence_scan(&mut e, 50, 5, None).is_err());
    assert!(congruence_scan(&mut e, 55, 2, None).is_err());
}

#[test]
fn eisenstein_series_data() {
    assert_eq!(sturm_bound(11).unwrap(), 22);
    assert_eq!(sturm_bound(66).unwrap(), 66 * 3 * 4 * 12 / 6);
    assert_eq!(eisenstein_coeff(66, 5).unwrap(), 6);
    assert!(matches!(eisenstein_coeff(66, 11), Err(Error::PrimeDividesLevel { .. })));
    // (-1)^(t+1) phi(N)/24
    assert_eq!(eisenstein_constant(11).unwrap(), (5, 12));
    assert_eq!(eisenstein_constant(66).unwrap(), (5, 6));
    assert_eq!(eisenstein_constant(341).unwrap(), (-25, 2));
    assert_eq!(eisenstein_constant(55).unwrap(), (-5, 3));
    assert_eq!(candidate_primes(66).unwrap(), [3, 5]);
    assert_eq!(candidate_primes(203).unwrap(), [3, 5, 7]);
    assert_eq!(candidate_primes(11).unwrap(), [3, 5]);
}

#[test]
fn predicates() {
    assert_eq!(val_phi(341, 5), 2);
    assert_eq!(val_phi(66, 5), 1);
    assert_eq!(val_phi(57, 3), 2);
    assert_eq!(val_phi24_numerator(57, 3), 1);
    assert_eq!(ohta_bound(341, 5), Some(2));
    assert_eq!(ohta_bound(165, 5), None);
    assert_eq!(strictness_prediction(217, 5), Prediction::NotStrictTwoPrimes);
    assert_eq!(strictness_prediction(319, 5), Prediction::StrictTwoPrimes);
    assert_eq!(strictness_prediction(319, 7), Prediction::NotStrictTwoPrimes);
    assert_eq!(strictness_prediction(341, 5), Prediction::StrictTwoPrimes);
    assert_eq!(strictness_prediction(330, 5), Prediction::StrictThreePrimes);
    assert_eq!(strictness_prediction(418, 3), Prediction::NotApplicable);
    assert_eq!(strictness_prediction(155, 5), Prediction::NoTheorem);
    // 7 is not a 5th power mod 31; 67 = 5 = 25^5 (mod 31) is.
    assert!(!predicates::two_prime_criterion(31, 7, 5));
    assert!(predicates::two_prime_criterion(31, 67, 5));
    assert!(predicates::two_prime_criterion(11, 29, 5));
}
