use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("rational function has a zero denominator")]
    ZeroDenominator,

    #[error("polynomial must have degree at least 1 to factor")]
    ConstantPolynomial,

    /// The denominator does not split into rational linear factors.
    /// `remainder` is the part left after every rational root was removed.
    #[error("denominator has a factor with no rational roots: {remainder}")]
    NonLinearFactor { remainder: String },

    #[error(
        "numerator degree {numerator} is too high for denominator degree {denominator}: \
         {mode} sums need deg Q <= deg P - {gap}"
    )]
    DegreeTooHigh {
        numerator: usize,
        denominator: usize,
        mode: &'static str,
        gap: usize,
    },

    #[error("shift {0} appears more than once in the factor list")]
    DuplicateShift(Rational),

    #[error("factor multiplicity must be at least 1 (shift {0})")]
    ZeroMultiplicity(Rational),

    /// Shift a = -m with m a positive integer puts a pole at n = m.
    #[error("shift {0} is a negative integer, so the term has a pole inside the summation range")]
    NegativeIntegerShift(Rational),

    #[error("argument {0} is a pole (non-positive integer)")]
    PoleArgument(String),

    #[error("polygamma order {0} exceeds the supported maximum of 30")]
    OrderTooLarge(u32),

    #[error("quadrature representation not applicable: {0}")]
    NotApplicable(String),

    #[error("the two shifts must differ")]
    ParametersEqual,

    #[error("sum of simple-pole coefficients is {0}, expected 0")]
    ConstraintViolated(Rational),

    #[error("cannot bracket the tail after {terms} terms: {reason}")]
    InsufficientTerms { terms: u64, reason: String },

    #[error("zeta argument must be at least 2, got {0}")]
    ZetaArgument(u32),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
