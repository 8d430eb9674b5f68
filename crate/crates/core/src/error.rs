use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("root λ{k}−λ{k} is not a root", k = index + 1)]
    DegenerateRoot { index: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("potential evaluated at singular argument ξ = {xi:e}")]
    Singular { xi: f64 },

    #[error("particles {k} and {l} are at a singular separation (ξ = {xi:e})", k = k + 1, l = l + 1)]
    SingularPair { k: usize, l: usize, xi: f64 },

    #[error("coordinates q{k} and q{l} coincide", k = k + 1, l = l + 1)]
    CoincidentCoordinates { k: usize, l: usize },

    #[error("flow aborted at step {step}: particles {k} and {l} reached the singular locus", k = k + 1, l = l + 1)]
    FlowAborted { step: usize, k: usize, l: usize },

    #[error("gauge path passes within the guard of the singular locus at s = {s} (particles {k} and {l})", k = k + 1, l = l + 1)]
    PathSingular { s: f64, k: usize, l: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("simple-root values violate β(C_α) = α(C_β) for simple roots {i} and {j} (residual {residual:e})", i = i + 1, j = j + 1)]
    AsymmetricSimplePairing { i: usize, j: usize, residual: f64 },

    #[error("tensor does not lie in F_n ⊗ F_n")]
    NotInFrobenius,

    #[error("tensor is not antisymmetric")]
    NotAntisymmetric,

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("internal error: {0}")]
    Internal(String),
}
