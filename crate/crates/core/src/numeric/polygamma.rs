//! ψ and ψ⁽ᵐ⁾ at arbitrary precision: upward recurrence into the asymptotic
//! region, then the Bernoulli-number expansion, truncated at the smallest
//! term.

use num_bigint::BigInt;
use num_traits::Signed;

use super::bernoulli::bernoulli_even;
use super::bigfloat::{self, bits_for, BigFloat};
use crate::arith::{factorial, Rational};
use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionPolicy {
    pub target_digits: u32,
    pub guard_digits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            target_digits: 30,
            guard_digits: 10,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(target_digits: u32) -> Self {
        assert!(target_digits >= 10, "target precision below 10 digits");
        PrecisionPolicy {
            target_digits,
            ..Default::default()
        }
    }

    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    /// `10^(-target_digits + slack)` at working precision.
    pub fn tolerance(&self, slack: i32) -> BigFloat {
        pow10(slack - self.target_digits as i32, self.working_digits())
    }
}

pub fn pow10(e: i32, digits: u32) -> BigFloat {
    BigFloat::from_int(10, digits).powi(e as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Gamma,
    Pi,
    Ln2,
}

pub fn constant(name: Constant, policy: &PrecisionPolicy) -> BigFloat {
    let wd = policy.working_digits();
    match name {
        Constant::Pi => bigfloat::pi(wd),
        Constant::Ln2 => bigfloat::ln2(wd),
        Constant::Gamma => -polygamma_unchecked(0, &BigFloat::one(wd), wd),
    }
}

pub fn digamma(x: &BigFloat, policy: &PrecisionPolicy) -> Result<BigFloat> {
    polygamma(0, x, policy)
}

pub fn polygamma(order: u32, x: &BigFloat, policy: &PrecisionPolicy) -> Result<BigFloat> {
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge(order));
    }
    let nearest = x.round();
    if !nearest.is_positive() {
        let gap = (x - &BigFloat::from_bigint(&nearest, x.digits())).abs();
        if gap < policy.tolerance(0) {
            return Err(Error::PoleArgument(x.to_decimal_string(policy.target_digits)));
        }
    }
    Ok(polygamma_unchecked(order, x, policy.working_digits()))
}

/// Polygamma at a rational argument; poles are detected exactly.
pub fn polygamma_rational(order: u32, x: &Rational, policy: &PrecisionPolicy) -> Result<BigFloat> {
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge(order));
    }
    if crate::arith::is_non_positive_integer(x) {
        return Err(Error::PoleArgument(x.to_string()));
    }
    let wd = policy.working_digits();
    Ok(polygamma_unchecked(order, &BigFloat::from_rational(x, wd), wd))
}

fn polygamma_unchecked(order: u32, x: &BigFloat, wd: u32) -> BigFloat {
    let digits = wd + 4;
    let x = x.with_digits(digits);
    let mut threshold = (20.0f64).max(0.8 * digits as f64) + order as f64;
    loop {
        if let Some(v) = shifted_asymptotic(order, &x, threshold, digits) {
            return v.with_digits(wd);
        }
        threshold *= 2.0;
    }
}

/// Shifts `x` up past `threshold` and evaluates the expansion there.
/// `None` if the expansion diverges before reaching full precision.
fn shifted_asymptotic(order: u32, x: &BigFloat, threshold: f64, digits: u32) -> Option<BigFloat> {
    let steps = (threshold - x.to_f64()).ceil().max(0.0) as i64;
    let m = order as i64;
    let one = BigFloat::one(digits);

    // sum_{i<steps} 1/(x+i)^(m+1)
    let mut recurrence = BigFloat::zero(digits);
    let mut xi = x.clone();
    for _ in 0..steps {
        recurrence = &recurrence + &xi.powi(m + 1).recip();
        xi = &xi + &one;
    }
    let y = xi;

    let eps_bits = bits_for(digits) as i64 + 4;
    let inv_y = y.recip();
    let inv_y2 = inv_y.square();
    let m_fact = BigFloat::from_bigint(&factorial(order), digits);

    let mut series = if order == 0 {
        &y.ln() - &inv_y.mul_pow2(-1)
    } else {
        let lead = &BigFloat::from_bigint(&factorial(order - 1), digits) * &inv_y.powi(m);
        let second = (&m_fact * &inv_y.powi(m + 1)).mul_pow2(-1);
        &lead + &second
    };

    // power = 1/y^(2k+m)
    let mut power = if order == 0 { inv_y2.clone() } else { &inv_y2 * &inv_y.powi(m) };
    let mut prev_mag = i64::MAX;
    let mut k = 1usize;
    loop {
        let coeff = if order == 0 {
            bernoulli_even(k) / Rational::from_integer(BigInt::from(2 * k))
        } else {
            // B_2k (2k+m-1)! / (2k)!
            let ratio: BigInt = ((2 * k as u32 + 1)..=(2 * k as u32 + order - 1))
                .fold(BigInt::from(1), |acc, v| acc * v);
            bernoulli_even(k) * Rational::from_integer(ratio)
        };
        let term = &BigFloat::from_rational(&coeff, digits) * &power;
        let mag = term.log2_floor();
        if term.is_zero() || mag < series.log2_floor() - eps_bits {
            break;
        }
        if mag > prev_mag {
            return None;
        }
        prev_mag = mag;
        series = if order == 0 { &series - &term } else { &series + &term };
        power = &power * &inv_y2;
        k += 1;
    }

    let value = if order == 0 {
        &series - &recurrence
    } else {
        // psi^(m)(y) = (-1)^(m+1) series; psi^(m)(x) = psi^(m)(y) - (-1)^m m! rec
        let correction = &m_fact * &recurrence;
        if order % 2 == 1 {
            &series + &correction
        } else {
            -(&series + &correction)
        }
    };
    Some(value)
}

/// ζ(k) for integer `k >= 2`, via ζ(k) = (-1)^k ψ⁽ᵏ⁻¹⁾(1) / (k-1)!.
pub fn zeta_int(k: u32, policy: &PrecisionPolicy) -> Result<BigFloat> {
    if k < 2 {
        return Err(Error::ZetaArgument(k));
    }
    let wd = policy.working_digits();
    if k - 1 > MAX_ORDER {
        return Ok(zeta_direct(k, wd));
    }
    let psi = polygamma_unchecked(k - 1, &BigFloat::one(wd), wd);
    let scaled = &psi / &BigFloat::from_bigint(&factorial(k - 1), wd);
    Ok(if k % 2 == 0 { scaled } else { -scaled })
}

/// Direct series for large `k`, where terms fall by at least 2^-31 per step.
fn zeta_direct(k: u32, wd: u32) -> BigFloat {
    let eps_bits = bits_for(wd) as i64 + 4;
    let mut sum = BigFloat::one(wd);
    let mut n = 2i64;
    loop {
        let term = BigFloat::from_int(n, wd).powi(-(k as i64));
        if term.log2_floor() < -eps_bits {
            break;
        }
        sum = &sum + &term;
        n += 1;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    const GAMMA_40: &str = "0.5772156649015328606065120900824024310422";
    const ZETA3_40: &str = "1.202056903159594285399738161511449990765";

    fn p() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    fn close(a: &BigFloat, b: &BigFloat, tol: f64) -> bool {
        (a - b).abs().to_f64() < tol
    }

    #[test]
    fn euler_gamma() {
        let g = constant(Constant::Gamma, &p());
        assert_eq!(g.to_decimal_string(40), GAMMA_40);
    }

    #[test]
    fn digamma_special_values() {
        let pol = p();
        let wd = pol.working_digits();
        let g = constant(Constant::Gamma, &pol);
        let l2 = constant(Constant::Ln2, &pol);
        let psi1 = digamma(&BigFloat::one(wd), &pol).unwrap();
        assert!(close(&psi1, &-&g, 1e-30));
        let psi_half = digamma(&BigFloat::from_rational(&rat(1, 2), wd), &pol).unwrap();
        assert!(close(&psi_half, &(-&g - l2.mul_pow2(1)), 1e-30));
        let psi2 = polygamma_rational(0, &int(2), &pol).unwrap();
        assert!(close(&psi2, &(&BigFloat::one(wd) - &g), 1e-30));
    }

    #[test]
    fn trigamma_and_tetragamma() {
        let pol = p();
        let wd = pol.working_digits();
        let pi2 = bigfloat::pi(wd).square();
        let t1 = polygamma_rational(1, &int(1), &pol).unwrap();
        assert!(close(&t1, &(&pi2 / &BigFloat::from_int(6, wd)), 1e-30));
        let t_half = polygamma_rational(1, &rat(1, 2), &pol).unwrap();
        assert!(close(&t_half, &pi2.mul_pow2(-1), 1e-30));
        let psi2 = polygamma_rational(2, &int(1), &pol).unwrap();
        assert_eq!((-psi2.mul_pow2(-1)).to_decimal_string(40), ZETA3_40);
    }

    #[test]
    fn zeta_values() {
        let pol = p();
        let wd = pol.working_digits();
        let z2 = zeta_int(2, &pol).unwrap();
        let pi2 = bigfloat::pi(wd).square();
        assert!(close(&z2, &(&pi2 / &BigFloat::from_int(6, wd)), 1e-30));
        assert_eq!(zeta_int(3, &pol).unwrap().to_decimal_string(40), ZETA3_40);
        let mut prev = z2;
        for k in 3..40 {
            let z = zeta_int(k, &pol).unwrap();
            assert!(z < prev && z > BigFloat::one(wd), "zeta({k})");
            prev = z;
        }
        assert_eq!(zeta_int(1, &pol), Err(Error::ZetaArgument(1)));
    }

    #[test]
    fn poles_and_limits() {
        let pol = p();
        assert!(matches!(polygamma_rational(0, &int(0), &pol), Err(Error::PoleArgument(_))));
        assert!(matches!(polygamma_rational(2, &int(-3), &pol), Err(Error::PoleArgument(_))));
        let near = BigFloat::from_rational(&(int(-2) + rat(1, 10i64.pow(15)).pow(3)), 60);
        assert!(matches!(digamma(&near, &pol), Err(Error::PoleArgument(_))));
        assert_eq!(
            polygamma_rational(31, &int(1), &pol),
            Err(Error::OrderTooLarge(31))
        );
    }

    #[test]
    fn negative_arguments_via_recurrence() {
        // psi(-1/2) = psi(1/2) + 2
        let pol = p();
        let a = polygamma_rational(0, &rat(-1, 2), &pol).unwrap();
        let b = polygamma_rational(0, &rat(1, 2), &pol).unwrap();
        assert!(close(&a, &(&b + &BigFloat::from_int(2, 40)), 1e-30));
    }
}
