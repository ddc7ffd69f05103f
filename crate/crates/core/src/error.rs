//! Error type shared by every module of the crate.

use thiserror::Error;

use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("affine scale factor must be nonzero")]
    ZeroScale,

    #[error("level must be at least 1 (got {0})")]
    InvalidLevel(u32),

    #[error("level {requested} exceeds the configured resource cap {cap}")]
    ResourceCap { requested: u32, cap: u32 },

    #[error("{value} lies outside [0, 1]")]
    OutsideUnitInterval { value: Rational },

    #[error("{value} lies outside (0, 1)")]
    OutsideOpenUnitInterval { value: Rational },

    #[error("{value} is not a member of the limit set")]
    NotInLimitSet { value: Rational },

    #[error("invalid cell indices at level {level} (m = {m}, n = {n}): {reason}")]
    InvalidCellIndices {
        level: u32,
        m: u64,
        n: u64,
        reason: &'static str,
    },

    #[error(
        "no sphere with positive radius for center {center}: \
         separation not yet certified at depth {depth}"
    )]
    SeparationNotCertified { center: Rational, depth: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse {input:?} as a rational: {reason}")]
    ParseRational { input: String, reason: &'static str },
}
