//! Galois orbits of newforms at every level dividing `N`, their exact Hecke
//! eigenvalues, and the persistent eigenvalue cache.

pub mod cache;
pub mod decompose;
pub mod engine;
pub mod orbit;

pub use cache::EigenCache;
pub use engine::{Engine, EngineConfig, LevelData};
pub use orbit::NewformOrbit;
