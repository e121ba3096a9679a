//! The anemic Hecke algebra `T` of level `N` as an explicit order in the
//! product of the newform coefficient fields, the Eisenstein ideal `J`, and
//! its local invariants at `p`.

pub mod algebra;
pub mod lattice;
pub mod local;
pub mod toy;

use num_bigint::BigInt;
use serde::Serialize;

pub use algebra::StructAlgebra;
pub use lattice::{EisensteinIdeal, HeckeComponent, HeckeLattice};
pub use local::{local_invariants, LocalAlgebra, LocalInvariants};
pub use toy::{ToyReport, ToySubalgebra};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    LocallyPrincipal,
    NotLocallyPrincipal,
}

impl Verdict {
    pub fn describe(self) -> &'static str {
        match self {
            Verdict::LocallyPrincipal => "locally principal",
            Verdict::NotLocallyPrincipal => "NOT locally principal",
        }
    }
}

/// Compares the depth `d` with `val_p(#T/J)`; `d < val` is an error.
pub fn principality_verdict(d: u64, val: u32) -> Result<Verdict> {
    match d.cmp(&(val as u64)) {
        std::cmp::Ordering::Equal => Ok(Verdict::LocallyPrincipal),
        std::cmp::Ordering::Greater => Ok(Verdict::NotLocallyPrincipal),
        std::cmp::Ordering::Less => Err(Error::Invariant(format!(
            "depth {d} is below val_p(#T/J) = {val}"
        ))),
    }
}

/// Index and local data of the Eisenstein ideal at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexData {
    pub hecke_rank: usize,
    pub generator_bound: u64,
    /// `#T/J` in decimal.
    pub index: String,
    pub val_index: u32,
    /// Absent when `p` does not divide `#T/J`.
    pub local: Option<LocalInvariants>,
}

pub fn index_data(t: &HeckeLattice, j: &EisensteinIdeal, p: u64) -> Result<IndexData> {
    let v = j.val_index(p);
    let local = if v == 0 {
        None
    } else {
        Some(local_invariants(t.algebra(), &j.generator_vectors(), p, v)?)
    };
    Ok(IndexData {
        hecke_rank: t.rank(),
        generator_bound: t.bound(),
        index: j.index().to_string(),
        val_index: v,
        local,
    })
}

/// `#T/J` as an integer.
pub fn eisenstein_index(j: &EisensteinIdeal) -> &BigInt {
    j.index()
}
