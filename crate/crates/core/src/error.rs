//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A Cayley table failed one of the group axioms.
    #[error("not a group: {0}")]
    NotAGroup(String),

    /// A claimed embedding or action fails to be a homomorphism.
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),

    /// Conjugation by the given element does not preserve the subgroup.
    #[error("subgroup is not normalized by element {element}")]
    NotNormal { element: usize },

    /// A tuple or vector has the wrong length for the structure at hand.
    #[error("domain mismatch: expected length {expected}, got {got}")]
    DomainMismatch { expected: usize, got: usize },

    /// An index lies outside the valid range of the structure.
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    /// Field construction or arithmetic failed.
    #[error("invalid field: {0}")]
    InvalidField(String),

    /// Attempt to invert the zero field element.
    #[error("division by zero field element")]
    ZeroInversion,

    /// The requested order is not eligible for the Paley construction.
    #[error("q = {0} is not a prime power with q ≡ 3 (mod 4) and q > 3")]
    NotPaleyCompatible(u64),

    /// A zero vector was supplied where a nonzero one is required.
    #[error("zero vector not allowed: {0}")]
    ZeroVector(String),

    /// Every generator has vanishing Zak fibers; no space is spanned.
    #[error("zero generator system: all fibers vanish")]
    ZeroSystem,

    /// The near-maximal level set of |g|² failed the subgroup closure test.
    #[error(
        "projective stabilizer candidate is not closed under the group law (tolerance mis-set?)"
    )]
    StabilizerNotClosed,

    /// Two supposedly equivalent verification paths disagreed.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    /// A verification pipeline exceeded its tolerance.
    #[error("verification failed: {0}")]
    Verification(String),

    /// The eigensolver failed to reach its off-diagonal target.
    #[error("eigensolver did not converge within {sweeps} sweeps (off-norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    /// Unsupported or malformed input description.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
