use thiserror::Error;

use crate::rational::Rational;

/// Errors raised by the kernel.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("malformed rational {0:?}")]
    ParseRational(String),

    #[error("parameter c = {0} is below 1; only c >= 1 is supported")]
    ParameterBelowOne(Rational),

    #[error("matrix is singular")]
    Singular,

    #[error("zero direction vector")]
    ZeroDirection,

    #[error("direction ({0}, {1}) is not primitive")]
    NotPrimitive(i64, i64),

    #[error("point lies outside the {0} component")]
    OutsideComponent(&'static str),

    #[error("computation left the materialized window (cap {cap} trapezoids)")]
    LeftWindow { cap: usize },

    #[error("start point is a vertex; use a separatrix instead")]
    StartAtVertex,

    #[error("direction does not point into the requested sector")]
    NotInSector,

    #[error("malformed code at symbol {index}: {label} is not an edge of the running triangle")]
    MalformedCode { index: usize, label: String },

    #[error("degenerate transverse interval [{lo}, {hi}]")]
    DegenerateInterval { lo: String, hi: String },

    #[error("development has no reference direction")]
    NoReferenceDirection,

    #[error("invalid group word {0:?}")]
    ParseWord(String),

    #[error("invalid edge label {0:?}")]
    ParseLabel(String),

    #[error("parabolic multiplier must be nonzero")]
    ZeroMultiplier,

    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
