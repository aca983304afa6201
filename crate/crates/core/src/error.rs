use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inhomogeneous multiplier: {0}")]
    InhomogeneousMultiplier(String),
    #[error("inhomogeneous presentation: {0}")]
    Inhomogeneous(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("weights {weights:?} are not well formed: subset {subset:?} has common factor {gcd}")]
    NotWellFormed {
        weights: Vec<u32>,
        subset: Vec<u32>,
        gcd: u32,
    },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("polynomial parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("bound exhausted at degree {degree}: {message}")]
    BoundExhausted { degree: i64, message: String },
    #[error("not a complex of complexes: {0}")]
    NotAComplexOfComplexes(String),
    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),
    #[error("unbounded complex: {0}")]
    Unbounded(String),
    #[error("vanishing violated at (p,q,chi)=({p},{q},{chi}): dimension {dim}")]
    VanishingViolated {
        p: i64,
        q: usize,
        chi: String,
        dim: usize,
    },
    #[error("unsupported input: {0}")]
    Unsupported(String),
}
