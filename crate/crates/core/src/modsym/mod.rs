//! Weight-2 modular symbols for `Gamma_0(M)`: Manin symbols on the projective
//! line, the plus quotient, cusps and Hecke operators via Heilbronn matrices.

pub mod cusps;
pub mod heilbronn;
pub mod manin;
pub mod p1;
pub mod space;

pub use manin::ManinPresentation;
pub use p1::P1List;
pub use space::ModularSymbols;
