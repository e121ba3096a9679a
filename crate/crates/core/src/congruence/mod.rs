//! Eisenstein congruences: Sturm bound, congruence exponents per prime above
//! `p`, total depth and the strictness predicates.

pub mod eisenstein;
pub mod predicates;
pub mod scan;

pub use eisenstein::{
    candidate_primes, eisenstein_coeff, eisenstein_constant, sturm_bound, validate_level, validate_prime,
};
pub use predicates::{ohta_bound, strictness_prediction, val_phi, val_phi24_numerator, Prediction};
pub use scan::{congruence_scan, depth_total, CongruenceRecord};
