//! Exact integer and rational linear algebra, polynomials and factorization.

pub mod charpoly;
pub mod factor;
pub mod hnf;
pub mod kernel;
pub mod lattice;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod snf;

pub use charpoly::charpoly;
pub use factor::factor_rational;
pub use hnf::{hnf, HnfBuilder};
pub use kernel::kernel_rational;
pub use lattice::Lattice;
pub use matrix::IntMatrix;
pub use poly::UniPoly;
pub use snf::snf;
