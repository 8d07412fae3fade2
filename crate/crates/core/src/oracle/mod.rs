//! Independent checks on engine output: partial sums with a rigorous tail
//! bracket, and quadrature of integral representations.

mod bracket;
mod quad;

pub use bracket::{partial_sum_bracket, Bracket};
pub use quad::{
    quad_alternating, quad_alternating_general, quad_digits, quad_general, quad_square,
    quad_tolerance, quad_two_param,
};

use crate::engine::SumResult;
use crate::error::{Error, Result};
use crate::numeric::{BigFloat, PrecisionPolicy};
use crate::partial_fractions::Sign;

#[derive(Debug, Clone)]
pub struct Verification {
    pub bracket: Bracket,
    /// `None` when no integral form applies (some shift at or below -1).
    pub quadrature: Option<BigFloat>,
    pub in_bracket: bool,
    pub quadrature_agrees: Option<bool>,
}

impl Verification {
    pub fn agree(&self) -> bool {
        self.in_bracket && self.quadrature_agrees != Some(false)
    }
}

/// Checks `result.numeric` against both oracles.
pub fn verify(result: &SumResult, n_terms: u64, policy: &PrecisionPolicy) -> Result<Verification> {
    let bracket = partial_sum_bracket(&result.spec, n_terms, policy)?;
    let in_bracket = bracket.contains_within(&result.numeric, &policy.tolerance(0));
    let quad = match result.spec.sign() {
        Sign::Plain => quad_general(&result.pf, policy),
        Sign::Alternating => quad_alternating_general(&result.pf, policy),
    };
    let quadrature = match quad {
        Ok(v) => Some(v),
        Err(Error::NotApplicable(_)) => None,
        Err(e) => return Err(e),
    };
    let limit = &quad_tolerance(policy) * &BigFloat::from_int(100, policy.working_digits());
    let quadrature_agrees = quadrature
        .as_ref()
        .map(|q| (q - &result.numeric).abs() < limit);
    Ok(Verification {
        bracket,
        quadrature,
        in_bracket,
        quadrature_agrees,
    })
}
