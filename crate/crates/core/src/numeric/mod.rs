//! Arbitrary-precision numerics: the float carrier, Bernoulli numbers,
//! polygamma and integer zeta values.

mod bernoulli;
pub mod bigfloat;
mod polygamma;

pub use bernoulli::bernoulli_even;
pub use bigfloat::BigFloat;
pub use polygamma::{
    constant, digamma, polygamma, polygamma_rational, pow10, zeta_int, Constant, PrecisionPolicy,
    MAX_ORDER,
};
