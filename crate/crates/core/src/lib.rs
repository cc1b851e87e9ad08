//! Exact computational toolkit for the projective geometry of `F^2 ⊗ F^3`
//! over small finite fields.
//!
//! The crate classifies subspaces of the six-dimensional space `F^2 ⊗ F^3`
//! (and, through their third contraction spaces, tensors in
//! `F^2 ⊗ F^3 ⊗ F^r`) into 31 named orbits under the natural action of
//! `GL(2,q) × GL(3,q)`, produces canonical representatives, computes tensor
//! ranks with an independent brute-force oracle, and verifies every orbit
//! count by exhaustive census at small `q`.
//!
//! Modules:
//! - [`field`]: arithmetic in `GF(p^h)` with a canonical integer encoding
//! - [`linalg`]: exact matrices, RREF-canonical subspaces, perp, enumeration
//! - [`tensor`]: `2×3×r` tensors, contraction spaces, the transpose map
//! - [`segre`]: rank-one points, rank distributions, Segre supports, loci
//! - [`orbit`]: the classifier, orbit labels, canonical representatives
//! - [`rank`]: tensor rank (brute-force oracle and closed-form table)
//! - [`census`]: exhaustive verification harness and reports

pub mod census;
pub mod field;
pub mod linalg;
pub mod orbit;
pub mod rank;
pub mod segre;
pub mod tensor;

pub use field::{Felt, Field};
pub use linalg::{Matrix, Subspace};
pub use orbit::OrbitLabel;
pub use tensor::Tensor;

/// Errors shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {q} exceeds the supported bound {max}")]
    FieldTooLarge { q: u128, max: u64 },
    #[error("cannot invert zero")]
    ZeroInverse,
    #[error("element code {code} out of range for a field of order {q}")]
    CodeOutOfRange { code: u64, q: u64 },
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("contraction factor must be 1, 2 or 3, got {0}")]
    BadFactor(u8),
    #[error("the transpose map needs r = 3, got r = {0}")]
    TransposeNeedsR3(usize),
    #[error("subspace dimension {dim} exceeds slice count r = {r}")]
    DimExceedsSlices { dim: usize, r: usize },
    #[error("orbit {label} has dimension {dim}, which exceeds r = {r}")]
    LabelBeyondR { label: String, dim: usize, r: usize },
    #[error("rank-one locus shape is defined for dimensions 2 and 3, got {0}")]
    LocusDim(usize),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
