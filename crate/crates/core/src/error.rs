//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by the exact and high-precision pipelines.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation
    /// (e.g. a geometric ratio outside (0,1), or parameters violating T > G > 1).
    #[error("domain error: {0}")]
    Domain(String),

    /// A lattice size outside the supported range for the requested method.
    #[error("size error: {0}")]
    Size(String),

    /// The computation would exceed a hard resource cap.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Two supposedly-equivalent exact routes disagreed. This is a bug, not a
    /// recoverable state; callers should abort.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    /// A denominator that must be nonzero vanished (e.g. coincident spectral
    /// parameters). The caller must perturb the input.
    #[error("singular input: {0}")]
    Singular(String),

    /// Floating-point precision was insufficient; retry with at least the
    /// suggested number of bits.
    #[error("insufficient precision: {reason} (suggest >= {suggest_bits} bits)")]
    Precision { reason: String, suggest_bits: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
