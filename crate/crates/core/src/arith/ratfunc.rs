use std::fmt;

use num_traits::{One, Zero};

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Reduced quotient `numerator / denominator` with a monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalFunction {
    /// Cancels the polynomial gcd and moves the denominator's leading
    /// coefficient into the numerator.
    pub fn normalize(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if numerator.is_zero() {
            return Ok(Self::from_polynomial(Polynomial::zero()));
        }
        let g = Polynomial::gcd(&numerator, &denominator);
        let (num, _) = numerator.div_rem(&g)?;
        let (den, _) = denominator.div_rem(&g)?;
        let lead = den.leading().recip();
        Ok(RationalFunction {
            numerator: num.scale(&lead),
            denominator: den.scale(&lead),
        })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction {
            numerator: p,
            denominator: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_polynomial(Polynomial::constant(c))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// `None` at a pole.
    pub fn eval(&self, n: &Rational) -> Option<Rational> {
        let d = self.denominator.eval(n);
        if d.is_zero() {
            None
        } else {
            Some(self.numerator.eval(n) / d)
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let num = &(&self.numerator * &rhs.denominator) + &(&rhs.numerator * &self.denominator);
        let den = &self.denominator * &rhs.denominator;
        Self::normalize(num, den).expect("product of nonzero denominators")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let num = &self.numerator * &rhs.numerator;
        let den = &self.denominator * &rhs.denominator;
        Self::normalize(num, den).expect("product of nonzero denominators")
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let num = &self.numerator * &rhs.denominator;
        let den = &self.denominator * &rhs.numerator;
        Self::normalize(num, den)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.degree() == Some(0) {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn cancels_common_factor() {
        let rf = RationalFunction::normalize(
            Polynomial::from_ints(&[-1, 1]),
            Polynomial::from_ints(&[-1, 0, 1]),
        )
        .unwrap();
        assert_eq!(rf.numerator(), &Polynomial::one());
        assert_eq!(rf.denominator(), &Polynomial::from_ints(&[1, 1]));
    }

    #[test]
    fn cancels_scalar() {
        let rf = RationalFunction::normalize(Polynomial::from_ints(&[2]), Polynomial::from_ints(&[0, 2]))
            .unwrap();
        assert_eq!(rf.numerator(), &Polynomial::one());
        assert_eq!(rf.denominator(), &Polynomial::var());
    }

    #[test]
    fn reduced_input_unchanged() {
        let den = Polynomial::new(vec![int(0), rat(1, 2), int(1)]);
        let rf = RationalFunction::normalize(Polynomial::one(), den.clone()).unwrap();
        assert_eq!(rf.numerator(), &Polynomial::one());
        assert_eq!(rf.denominator(), &den);
    }

    #[test]
    fn monic_denominator_absorbs_scale() {
        // 1 / (3n + 6) -> (1/3) / (n + 2)
        let rf = RationalFunction::normalize(Polynomial::one(), Polynomial::from_ints(&[6, 3])).unwrap();
        assert_eq!(rf.numerator(), &Polynomial::constant(rat(1, 3)));
        assert_eq!(rf.denominator(), &Polynomial::linear(int(2)));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::normalize(Polynomial::one(), Polynomial::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn field_operations() {
        let n = RationalFunction::from_polynomial(Polynomial::var());
        let one = RationalFunction::constant(int(1));
        // 1/n - 1/(n+1) = 1/(n(n+1))
        let inv_n = one.div(&n).unwrap();
        let inv_n1 = one.div(&n.add(&one)).unwrap();
        let diff = inv_n.sub(&inv_n1);
        assert_eq!(diff.numerator(), &Polynomial::one());
        assert_eq!(diff.denominator(), &Polynomial::from_ints(&[0, 1, 1]));
        assert_eq!(diff.eval(&int(1)), Some(rat(1, 2)));
        assert_eq!(diff.eval(&int(0)), None);
    }
}
