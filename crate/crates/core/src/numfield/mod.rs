//! Coefficient fields: arithmetic, p-maximal orders, primes above p and valuations.

pub mod field;
pub mod order;
pub mod prime;

pub use field::{FieldElement, NumberField};
pub use order::{p_maximal_order, POrderData};
pub use prime::{primes_above, PrimeIdealData, Valuation};
