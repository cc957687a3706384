use thiserror::Error;

use crate::specialfn::HalfInt;

/// Errors raised by the constructions and checks in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("log-gamma pole: argument {re}{im:+}i is a non-positive integer")]
    GammaPole { re: f64, im: f64 },

    #[error("argument must be positive: {0}")]
    ArgumentZero(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent parity: r = {r}, s = {s} must agree mod 2 when m_2alpha > 0")]
    Parity { r: u32, s: u32 },

    #[error("pole of the normalized intertwiner at the half-integer {0}")]
    Pole(HalfInt),

    #[error("pole in factor {factor} at the half-integer {root}")]
    FactorPole { factor: usize, root: HalfInt },

    #[error("R*z0 = {0} is a non-zero integer")]
    IntegerPoint(f64),

    #[error("R*z0 = {0} is a non-zero integer; no admissible R found by perturbation")]
    ForbiddenR(f64),

    #[error("lambda0 violates the Kostant condition (pairing {0})")]
    Kostant(String),

    #[error("word {0:?} is not reduced")]
    NonReducedWord(Vec<usize>),

    #[error("orbit point {0} admits no non-degenerate separating functional")]
    DegenerateOrbit(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not symmetric")]
    NonSymmetric,

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
