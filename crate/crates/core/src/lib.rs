//! Depth of Eisenstein congruences for weight-2 forms of squarefree level.
//!
//! Layers, bottom-up: [`linalg`] (exact linear algebra and polynomials),
//! [`numfield`] (p-maximal orders, primes above p, valuations),
//! [`modsym`] (Manin symbols and Hecke operators), [`newform`] (Galois orbits
//! of newforms and their eigenvalues, with an on-disk cache),
//! [`congruence`] (the congruence scan and strictness predicates) and
//! [`hecke`] (the Hecke lattice, Eisenstein ideal and local invariants).
//! [`report`] joins the last two for one `(N, p)`; [`cli`] renders it.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod cli;
pub mod congruence;
pub mod error;
pub mod hecke;
pub mod linalg;
pub mod modsym;
pub mod newform;
pub mod numfield;
pub mod report;

pub use error::{Error, Result};
