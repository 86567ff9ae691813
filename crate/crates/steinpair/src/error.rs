//! Crate error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring construction: {0}")]
    Ring(String),

    #[error("no built-in irreducible polynomial for F_{p}^{k}; supply one explicitly")]
    UnsupportedField { p: u32, k: u32 },

    #[error("scalars must form a field for this construction (got {0})")]
    NotAField(String),

    #[error("scalars must form a prime field F_p for this construction (got {0})")]
    NotAPrimeField(String),

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("ring mismatch between operands")]
    RingMismatch,

    #[error("root system: {0}")]
    Roots(String),

    #[error("root pairing 2(a|b)/(b|b) is not an integer")]
    NonIntegralPairing,

    #[error("no edge decomposition of the given weight exists in R1 - R1")]
    NoDecomposition,

    #[error("jordan pair: {0}")]
    Jordan(String),

    #[error("not an idempotent of the pair")]
    NotIdempotent,

    #[error("root grading: {0}")]
    Grading(String),

    #[error("tkk: {0}")]
    Tkk(String),

    #[error("linear map is not an automorphism of the algebra")]
    NotAutomorphism,

    #[error("presentation: {0}")]
    Presentation(String),

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("unknown selector: {0}")]
    Selector(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
