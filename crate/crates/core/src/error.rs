use thiserror::Error;

/// Errors raised by the numeric and enumerative routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A request outside the supported parameter range (desk-scale guards).
    #[error("guard exceeded: {0}")]
    Guard(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("series has zero constant term; it is not invertible")]
    NotInvertible,

    #[error("inner series of a composition must have zero constant term")]
    NonZeroInnerConstant,

    #[error("series must have zero constant term")]
    NonZeroConstant,

    #[error("series reversion needs a nonzero linear coefficient")]
    ZeroLinearCoefficient,

    /// A division that must be exact left a remainder. Signals a modelling bug.
    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("inconsistent samples: {0}")]
    Inconsistent(String),

    #[error("digraph is not connected")]
    Disconnected,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
