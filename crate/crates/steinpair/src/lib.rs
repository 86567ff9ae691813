//! Computational kernel for Jordan pairs and their Steinberg groups.
//!
//! The crate builds finite rings, matrix groups of elementary type, locally
//! finite 3-graded root systems, Jordan pairs with root gradings, the
//! Tits-Kantor-Koecher Lie algebra of a pair, projective elementary groups,
//! and finitely presented Steinberg groups, together with verification
//! suites that check the defining identities exhaustively (or by sampling)
//! at small sizes.

pub mod error;
pub mod grading;
pub mod group;
pub mod jordan;
pub mod linalg;
pub mod matrix;
pub mod pegroup;
pub mod report;
pub mod ring;
pub mod roots;
pub mod steinberg;
pub mod tkk;
pub mod toddcox;
pub mod zoo;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
