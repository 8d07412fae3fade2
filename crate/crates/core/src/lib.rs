//! Exact evaluation of convergent sums `sum_{n>=1} Q(n)/P(n)`, plain or
//! alternating, for denominators that split into rational linear factors.
//!
//! ```
//! use exactsum_core::{arith, engine, FactorList, Polynomial, PrecisionPolicy, Sign, SumSpec};
//!
//! // 1 / (n (n + 1/2))
//! let den = Polynomial::new(vec![arith::int(0), arith::rat(1, 2), arith::int(1)]);
//! let factors = arith::factor_linear(&den).unwrap();
//! let spec = SumSpec::new(Polynomial::one(), factors, Sign::Plain).unwrap();
//! let result = engine::sum(&spec, &PrecisionPolicy::default()).unwrap();
//! assert_eq!(result.exact.render(), "4 - 4*ln(2)");
//! ```

pub mod arith;
pub mod closed_form;
pub mod engine;
mod error;
pub mod numeric;
pub mod oracle;
pub mod partial_fractions;

pub use arith::{Factor, FactorList, Polynomial, Rational, RationalFunction};
pub use closed_form::{BasisSymbol, PsiTerm, SymbolicValue};
pub use engine::SumResult;
pub use error::{Error, Result};
pub use numeric::{BigFloat, PrecisionPolicy};
pub use partial_fractions::{decompose, PartialFractions, PfTerm, Sign, SumSpec};
