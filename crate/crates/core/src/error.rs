use thiserror::Error;

use crate::order::RationalOrder;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("order not on grid: {order} is not an integer multiple of {alpha}")]
    OffGrid {
        order: RationalOrder,
        alpha: RationalOrder,
    },

    #[error("gamma: nonpositive argument {0}")]
    NonPositiveArgument(f64),

    #[error("gamma: overflow at argument {0}")]
    Overflow(f64),

    #[error("grid mismatch: {left} vs {right}")]
    GridMismatch {
        left: RationalOrder,
        right: RationalOrder,
    },

    #[error("result has negative-power terms: coefficient {index} is {value:e}")]
    NegativePowerTerms { index: usize, value: f64 },

    #[error("fractional power of negative base: t = {0}")]
    NegativeBase(f64),

    #[error("series not in the Caputo domain: term t^{exponent} has nonzero coefficient below derivative order {order}")]
    NotCaputoDomain {
        exponent: RationalOrder,
        order: RationalOrder,
    },

    #[error("invalid coefficient sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("beta out of range: {0} is not in (1/2, 1]")]
    BetaOutOfRange(RationalOrder),

    #[error("truncation index {k} too small: need at least {min}")]
    TruncationTooSmall { k: usize, min: usize },

    #[error("recurrence denominator at k = {k}: {source}")]
    Denominator {
        k: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("residual requires t > 0, got {0}")]
    NonPositivePoint(f64),
}
