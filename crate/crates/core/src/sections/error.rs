use thiserror::Error;

use crate::numeric::QuadratureError;
use crate::p1::P1Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SectionsError {
    #[error(transparent)]
    Divisor(#[from] P1Error),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("the zero section has no norm to compare")]
    ZeroSection,
    #[error("exponent {0} is outside the section space")]
    ExponentOutOfRange(i64),
    #[error("enumeration box has {size:.3e} candidates, above the limit of 1e7")]
    BoxTooLarge { size: f64 },
    #[error("{count} sections have sup norm indistinguishable from 1")]
    AmbiguousBoundary { count: u64 },
    #[error("no non-zero small sections at level {n}")]
    EmptySections { n: u32 },
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}
