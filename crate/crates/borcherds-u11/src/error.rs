//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]. The CLI maps the variants to
//! exit codes: invalid input (2), convergence refusal (3), wall or degenerate
//! geometry (4), anything else (1).

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Rejected input: precondition violated (non-square-free d, m >= 0, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Exact arithmetic failure, e.g. division by zero or inversion of a
    /// series whose leading coefficient is not a unit.
    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    /// Argument outside the mathematical domain (Im tau <= 0, Y outside the
    /// positive cone, Y outside the stated chamber, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A q-series coefficient beyond the known precision was requested.
    #[error("insufficient series precision: need exponent {needed} but series known below {prec}")]
    InsufficientPrecision { needed: i64, prec: i64 },

    /// The evaluation point lies on a Weyl-chamber wall of index `m`, crossed
    /// by the wall of divisor `t`.
    #[error("point lies on a wall: index m = {m}, wall t = {t}")]
    Wall { m: i64, t: i64 },

    /// The evaluation point violates the convergence criterion of a product
    /// expansion.
    #[error("outside convergence region: {0}")]
    Convergence(String),

    /// A retained Borcherds factor is exactly zero at the evaluation point;
    /// the point lies on the divisor. Carries the responsible factor
    /// (l, k) and the integer translate a with l*tau - k*conj(zeta) = -a.
    #[error("divisor hit: factor (l, k) = ({l}, {k}) vanishes (translate a = {a})")]
    DivisorHit { l: i64, k: i64, a: i64 },

    /// Winding-number computation could not be refined to reliable argument
    /// increments.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// A chamber was used with an operation of a different index.
    #[error("chamber mismatch: {0}")]
    ChamberMismatch(String),
}

impl Error {
    /// Process exit code used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_)
            | Error::Arithmetic(_)
            | Error::Domain(_)
            | Error::InsufficientPrecision { .. }
            | Error::ChamberMismatch(_) => 2,
            Error::Convergence(_) | Error::Inconclusive(_) => 3,
            Error::Wall { .. } | Error::DivisorHit { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
