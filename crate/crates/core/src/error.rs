use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is not irreducible")]
    ReducibleModulus(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("matrix is singular")]
    Singular,
    #[error("both polynomials are zero")]
    ZeroGcd,
    #[error("operation unsupported over {0}")]
    Unsupported(String),
    #[error("not an idempotent")]
    NotIdempotent,
    #[error("idempotent is 0 or the identity")]
    TrivialIdempotent,
    #[error("matrix does not belong to the algebra")]
    NotInAlgebra,
    #[error("extension required: {0}")]
    ExtensionRequired(String),
    #[error("genuinely-trivial: {0}")]
    GenuinelyTrivial(String),
    #[error("not a conforming algebra: {0}")]
    NotConforming(String),
    #[error("not a full-rank pencil")]
    NotFullRankPencil,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("dimension {target} unreachable after {attempts} attempts")]
    DimensionUnreachable { target: usize, attempts: usize },
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
