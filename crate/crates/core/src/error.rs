use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input: a Schmidt vector needs at least one entry")]
    EmptyInput,
    #[error("entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: String },
    #[error("entry {index} is not a finite number ({value})")]
    NonFinite { index: usize, value: String },
    #[error("entries sum to {sum}, not 1 (pass normalize to rescale)")]
    NotNormalized { sum: String },
    #[error("cannot normalize: all entries are zero")]
    ZeroSum,
    #[error("index {index} out of range (allowed {min}..={max})")]
    IndexOutOfRange { index: usize, min: usize, max: usize },
    #[error("reciprocal undefined: vector has zero entries (rank {rank} < dim {dim})")]
    ZeroEntry { rank: usize, dim: usize },
    #[error("ranks differ: psi has {psi} non-zero coefficients, phi has {phi}")]
    RankMismatch { psi: usize, phi: usize },
    #[error("rank {rank} too small: need at least {needed}")]
    RankTooSmall { rank: usize, needed: usize },
    #[error("bound undefined: C_d(psi) = C_d(phi)")]
    DegenerateDenominator,
    #[error("bound not applicable: C_d(psi) < C_d(phi), so no catalyst can exist")]
    NotApplicable,
    #[error("zero denominator in r(chi)")]
    ZeroDenominator,
    #[error("inexact input: {0} must be given as exact rationals")]
    InexactInput(&'static str),
    #[error("invalid Renyi order {0}: must be positive")]
    InvalidOrder(String),
    #[error("cannot parse number {0:?}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
