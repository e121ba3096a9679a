use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("level {0} is not squarefree")]
    NotSquarefree(u64),
    #[error("level must be greater than 6, got {0}")]
    LevelTooSmall(u64),
    #[error("p = 2 is excluded: mod 2 Eisenstein congruences behave differently and are not computed")]
    PrimeTwoExcluded,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {ell} divides the level {level}")]
    PrimeDividesLevel { ell: u64, level: u64 },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("defining polynomial must be monic and irreducible: {0}")]
    NotIrreducible(String),
    #[error("newform bookkeeping failed at level {level}: {detail}")]
    Bookkeeping { level: u64, detail: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("{0}")]
    Computation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
