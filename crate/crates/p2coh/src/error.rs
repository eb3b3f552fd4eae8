use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed textual input (rationals, characters, dyadic indices, shapes).
    #[error("parse error: {0}")]
    Parse(String),

    /// A character fails the integrality conditions required by the operation.
    #[error("non-integral character: {0}")]
    NonIntegral(String),

    /// An argument combination outside the operation's domain
    /// (e.g. tensoring two torsion classes).
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// The operation needs a character with (semi)stable sheaves and the
    /// input admits none, or needs positive-dimensional moduli.
    #[error("no stable sheaves for this input: {0}")]
    NotStable(String),

    /// Interval search gave up before reaching a verdict.
    #[error("interval location exceeded the order bound")]
    DepthExceeded,

    /// Bad oracle configuration (non-prime modulus, modulus too small, ...).
    #[error("oracle configuration: {0}")]
    OracleConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
