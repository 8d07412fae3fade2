//! Exact arithmetic: rationals, dense polynomials in `n`, reduced rational
//! functions, and splitting a polynomial into rational linear factors.

mod factor;
mod poly;
mod ratfunc;

pub use factor::{factor_linear, linear_factors, Factor, FactorList};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact arbitrary-precision rational; always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// True for -1, -2, -3, ...
pub fn is_negative_integer(value: &Rational) -> bool {
    value.is_integer() && value.is_negative()
}

/// True for 0, -1, -2, ...
pub fn is_non_positive_integer(value: &Rational) -> bool {
    value.is_integer() && !value.is_positive()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub(crate) fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub(crate) fn gcd_of<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Rational raised to a signed integer power.
pub fn rational_pow(base: &Rational, exp: i32) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), exp.unsigned_abs() as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3"), Some(int(3)));
        assert_eq!(parse_rational("-1/2"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("4/8"), Some(rat(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn canonical_form_is_stable() {
        let x = Rational::new(BigInt::from(-6), BigInt::from(-4));
        assert_eq!(x.numer(), &BigInt::from(3));
        assert_eq!(x.denom(), &BigInt::from(2));
        let y = Rational::new(x.numer().clone(), x.denom().clone());
        assert_eq!(x, y);
        assert_eq!(Rational::zero().denom(), &BigInt::one());
    }

    #[test]
    fn integer_predicates() {
        assert!(is_negative_integer(&int(-3)));
        assert!(!is_negative_integer(&int(0)));
        assert!(!is_negative_integer(&rat(-3, 2)));
        assert!(is_non_positive_integer(&int(0)));
        assert!(!is_non_positive_integer(&rat(1, 3)));
    }
}
