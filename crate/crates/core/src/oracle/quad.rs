//! Quadrature of the integral representations of these sums.
//!
//! Two double-exponential rules: tanh-sinh on (0, 1) and exp-sinh on
//! (0, inf). Neither evaluates an endpoint. Tanh-sinh nodes carry `1 - t`
//! computed directly, so integrands with a removable singularity at `t = 1`
//! keep full relative precision there.

use num_traits::{ToPrimitive, Zero};

use crate::arith::{factorial, Rational};
use crate::error::{Error, Result};
use crate::numeric::bigfloat::{self, bits_for};
use crate::numeric::{pow10, BigFloat, PrecisionPolicy};
use crate::partial_fractions::PartialFractions;

/// Quadrature verifies, it does not compete: half the target digits,
/// capped so that wide requests stay fast.
const MAX_QUAD_DIGITS: u32 = 40;
const GUARD: u32 = 10;
const MAX_LEVEL: u32 = 12;
const MAX_ABSCISSA: f64 = 12.0;

/// Digits to which quadrature results are trusted under `policy`.
pub fn quad_digits(policy: &PrecisionPolicy) -> u32 {
    (policy.target_digits / 2).min(MAX_QUAD_DIGITS)
}

/// `10^-quad_digits`.
pub fn quad_tolerance(policy: &PrecisionPolicy) -> BigFloat {
    pow10(-(quad_digits(policy) as i32), policy.working_digits())
}

#[derive(Clone, Copy)]
enum Rule {
    TanhSinh,
    ExpSinh,
}

/// Abscissa, its complement `1 - x` (tanh-sinh only) and `dx/du`.
struct Node {
    x: BigFloat,
    comp: BigFloat,
    weight: BigFloat,
}

fn node(rule: Rule, u: &BigFloat, digits: u32) -> Node {
    let one = BigFloat::one(digits);
    let eu = u.exp();
    let inv = eu.recip();
    let sinh = (&eu - &inv).mul_pow2(-1);
    let cosh = (&eu + &inv).mul_pow2(-1);
    let pi = bigfloat::pi(digits);
    match rule {
        Rule::TanhSinh => {
            let s = &(&pi * &sinh).mul_pow2(-1);
            let e = (-s.abs().mul_pow2(1)).exp();
            let denom = &one + &e;
            let near_one = denom.recip();
            let near_zero = &e / &denom;
            let weight = &(&pi * &cosh) * &(&e / &denom.square());
            let (x, comp) = if u.is_negative() {
                (near_zero, near_one)
            } else {
                (near_one, near_zero)
            };
            Node { x, comp, weight }
        }
        Rule::ExpSinh => {
            let x = (&pi * &sinh).mul_pow2(-1).exp();
            let weight = (&(&x * &pi) * &cosh).mul_pow2(-1);
            Node {
                x,
                comp: BigFloat::zero(digits),
                weight,
            }
        }
    }
}

/// Sum of `weight * f` over the nodes `u = k h`, `k` stepping by `step`
/// from `start`, walking outward until the terms die off.
fn level_sum<F>(rule: Rule, f: &F, h: &BigFloat, start: i64, step: i64, digits: u32) -> BigFloat
where
    F: Fn(&Node) -> BigFloat,
{
    let eps = BigFloat::one(digits).mul_pow2(-(bits_for(digits) as i64) - 8);
    let mut total = BigFloat::zero(digits);
    for direction in [1i64, -1] {
        let mut k = match (direction, start) {
            (1, _) => start,
            (_, 0) => -step,
            _ => -start,
        };
        let mut small = 0;
        loop {
            let u = &BigFloat::from_int(k, digits) * h;
            if u.abs().to_f64() > MAX_ABSCISSA {
                break;
            }
            let nd = node(rule, &u, digits);
            let term = &nd.weight * &f(&nd);
            total = &total + &term;
            if term.abs() < eps && u.abs().to_f64() >= 1.0 {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
            k += direction * step;
        }
    }
    total
}

fn integrate<F>(rule: Rule, f: F, policy: &PrecisionPolicy) -> Result<BigFloat>
where
    F: Fn(&Node) -> BigFloat,
{
    let qd = quad_digits(policy);
    let digits = qd + GUARD;
    let tol = pow10(-(qd as i32) - 2, digits);
    let mut h = BigFloat::one(digits);
    let mut raw = level_sum(rule, &f, &h, 0, 1, digits);
    let mut estimate = &raw * &h;
    for level in 1..=MAX_LEVEL {
        h = h.mul_pow2(-1);
        raw = &raw + &level_sum(rule, &f, &h, 1, 2, digits);
        let next = &raw * &h;
        let change = (&next - &estimate).abs();
        estimate = next;
        if level >= 3 && change < tol {
            return Ok(estimate.with_digits(policy.working_digits()));
        }
    }
    Err(Error::NotApplicable(format!(
        "quadrature did not reach {qd} digits"
    )))
}

/// `ln(1 + z)`, accurate for tiny `z`.
fn ln_1p(z: &BigFloat) -> BigFloat {
    let digits = z.digits();
    let one = BigFloat::one(digits);
    if z.is_zero() || z.abs().log2_floor() >= -4 {
        return (&one + z).ln();
    }
    // 2 atanh(y), y = z / (2 + z)
    let y = z / &(&BigFloat::from_int(2, digits) + z);
    let y2 = y.square();
    let eps_bits = bits_for(digits) as i64 + 4;
    let mut power = y.clone();
    let mut sum = y.clone();
    let mut k = 1i64;
    loop {
        power = &power * &y2;
        let term = &power / &BigFloat::from_int(2 * k + 1, digits);
        if term.is_zero() || term.log2_floor() < sum.log2_floor() - eps_bits {
            break;
        }
        sum = &sum + &term;
        k += 1;
    }
    sum.mul_pow2(1)
}

/// `ln t` for a tanh-sinh node, using whichever of `t`, `1 - t` is exact.
fn ln_t(nd: &Node) -> BigFloat {
    if nd.comp.log2_floor() < -1 {
        ln_1p(&-&nd.comp)
    } else {
        nd.x.ln()
    }
}

fn pow_from_ln(a: &Rational, ln: &BigFloat) -> BigFloat {
    if a.is_zero() {
        return BigFloat::one(ln.digits());
    }
    (&BigFloat::from_rational(a, ln.digits()) * ln).exp()
}

fn require_above_minus_one(shifts: &[&Rational]) -> Result<()> {
    let minus_one = -Rational::from_integer(1.into());
    match shifts.iter().find(|a| ***a <= minus_one) {
        Some(a) => Err(Error::NotApplicable(format!(
            "the integral form needs every shift above -1, got {a}"
        ))),
        None => Ok(()),
    }
}

/// `sum_{n>=1} 1/((n+a)(n+b)) = 1/(a-b) int_0^1 (t^b - t^a)/(1-t) dt`.
pub fn quad_two_param(a: &Rational, b: &Rational, policy: &PrecisionPolicy) -> Result<BigFloat> {
    if a == b {
        return Err(Error::ParametersEqual);
    }
    require_above_minus_one(&[a, b])?;
    let diff = a - b;
    integrate(
        Rule::TanhSinh,
        |nd| {
            let lt = ln_t(nd);
            let d = nd.x.digits();
            // t^b - t^a = t^a expm1((b - a) ln t)
            let ta = pow_from_ln(a, &lt);
            let spread = (&BigFloat::from_rational(&-&diff, d) * &lt).exp_m1();
            &(&ta * &spread) / &(&nd.comp * &BigFloat::from_rational(&diff, d))
        },
        policy,
    )
}

/// `sum_{n>=1} 1/(n+a)^2 = -int_0^1 t^a ln t/(1-t) dt`.
pub fn quad_square(a: &Rational, policy: &PrecisionPolicy) -> Result<BigFloat> {
    require_above_minus_one(&[a])?;
    integrate(
        Rule::TanhSinh,
        |nd| {
            let lt = ln_t(nd);
            -(&(&pow_from_ln(a, &lt) * &lt) / &nd.comp)
        },
        policy,
    )
}

/// `sum_{n>=1} (-1)^(n+1)/(n+a) = int_0^1 t^a/(1+t) dt`.
pub fn quad_alternating(a: &Rational, policy: &PrecisionPolicy) -> Result<BigFloat> {
    require_above_minus_one(&[a])?;
    integrate(
        Rule::TanhSinh,
        |nd| {
            let one = BigFloat::one(nd.x.digits());
            &pow_from_ln(a, &ln_t(nd)) / &(&one + &nd.x)
        },
        policy,
    )
}

/// Alternating sum of a whole decomposition:
/// `sum A_ij / (j-1)! int_0^1 t^a_i (-ln t)^(j-1) / (1+t) dt`.
pub fn quad_alternating_general(pf: &PartialFractions, policy: &PrecisionPolicy) -> Result<BigFloat> {
    let shifts: Vec<&Rational> = pf.terms().iter().map(|t| &t.shift).collect();
    require_above_minus_one(&shifts)?;
    let weights: Vec<Rational> = pf
        .terms()
        .iter()
        .map(|t| &t.coeff / Rational::from_integer(factorial(t.order - 1)))
        .collect();
    integrate(
        Rule::TanhSinh,
        |nd| {
            let d = nd.x.digits();
            let lt = ln_t(nd);
            let neg_lt = -&lt;
            let mut acc = BigFloat::zero(d);
            for (t, w) in pf.terms().iter().zip(&weights) {
                if w.is_zero() {
                    continue;
                }
                let v = &pow_from_ln(&t.shift, &lt) * &neg_lt.powi(t.order as i64 - 1);
                acc = &acc + &(&BigFloat::from_rational(w, d) * &v);
            }
            &acc / &(&BigFloat::one(d) + &nd.x)
        },
        policy,
    )
}

/// Plain sum of a whole decomposition in the x-domain:
///
/// `sum_{j>=2} A_ij/(j-1)! int_0^inf x^(j-1) e^(-(a_i+1)x)/(1-e^-x) dx
///  + sum A_i1 int_0^inf (e^(-(a_i+1)x) - 1)/(1-e^-x) dx`.
///
/// The simple-pole integrals diverge one by one; only their combination
/// with `sum A_i1 = 0` converges, so the integrand is always combined.
pub fn quad_general(pf: &PartialFractions, policy: &PrecisionPolicy) -> Result<BigFloat> {
    let shifts: Vec<&Rational> = pf.terms().iter().map(|t| &t.shift).collect();
    require_above_minus_one(&shifts)?;
    let simple = pf.simple_pole_sum();
    if !simple.is_zero() {
        return Err(Error::ConstraintViolated(simple));
    }
    let live: Vec<(Rational, u32, Rational)> = pf
        .terms()
        .iter()
        .filter(|t| !t.coeff.is_zero())
        .map(|t| {
            let w = &t.coeff / Rational::from_integer(factorial(t.order - 1));
            (w, t.order, &t.shift + Rational::from_integer(1.into()))
        })
        .collect();
    if live.is_empty() {
        return Ok(BigFloat::zero(policy.working_digits()));
    }
    let slowest = live
        .iter()
        .map(|(_, _, c)| c.to_f64().unwrap_or(1.0))
        .fold(f64::INFINITY, f64::min);
    let top_order = live.iter().map(|(_, j, _)| *j).max().unwrap_or(1);

    integrate(
        Rule::ExpSinh,
        |nd| {
            let d = nd.x.digits();
            let x = &nd.x;
            let xf = x.to_f64();
            // far tail: the whole integrand is below the working precision
            let log_mag = -slowest * xf + (top_order as f64) * xf.max(1.0).ln();
            if log_mag < -(bits_for(d) as f64 + 40.0) * std::f64::consts::LN_2 {
                return BigFloat::zero(d);
            }
            let near_zero = xf < 1.0;
            let mut acc = BigFloat::zero(d);
            for (w, j, c) in &live {
                let cx = -&(&BigFloat::from_rational(c, d) * x);
                let v = if *j == 1 {
                    // the -1 terms cancel in total; keep them only where
                    // expm1 protects the small-x cancellation
                    if near_zero {
                        cx.exp_m1()
                    } else {
                        cx.exp()
                    }
                } else {
                    &x.powi(*j as i64 - 1) * &cx.exp()
                };
                acc = &acc + &(&BigFloat::from_rational(w, d) * &v);
            }
            let denom = -(-x).exp_m1();
            &acc / &denom
        },
        policy,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Factor, FactorList, Polynomial};
    use crate::numeric::Constant;
    use crate::partial_fractions::{decompose, Sign, SumSpec};

    fn p() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    fn close(a: &BigFloat, b: &BigFloat) -> bool {
        (a - b).abs() < quad_tolerance(&p())
    }

    fn consts() -> (BigFloat, BigFloat, u32) {
        let pol = p();
        (
            crate::numeric::constant(Constant::Pi, &pol),
            crate::numeric::constant(Constant::Ln2, &pol),
            pol.working_digits(),
        )
    }

    fn pf_of(fs: &[(Rational, u32)]) -> PartialFractions {
        let fl = FactorList::new(fs.iter().map(|(a, m)| Factor::new(a.clone(), *m)).collect())
            .unwrap();
        decompose(&SumSpec::new(Polynomial::one(), fl, Sign::Plain).unwrap()).unwrap()
    }

    #[test]
    fn two_param_values() {
        let (_, ln2, wd) = consts();
        let fisher = &BigFloat::from_int(4, wd) - &ln2.mul_pow2(2);
        assert!(close(&quad_two_param(&rat(1, 2), &int(0), &p()).unwrap(), &fisher));
        assert!(close(&quad_two_param(&int(0), &rat(1, 2), &p()).unwrap(), &fisher));
        assert!(close(&quad_two_param(&int(1), &int(0), &p()).unwrap(), &BigFloat::one(wd)));
        assert_eq!(quad_two_param(&int(1), &int(1), &p()), Err(Error::ParametersEqual));
        assert!(matches!(
            quad_two_param(&int(-1), &int(0), &p()),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn square_values() {
        let (pi, _, wd) = consts();
        let pi2 = pi.square();
        let z2 = &pi2 / &BigFloat::from_int(6, wd);
        assert!(close(&quad_square(&int(0), &p()).unwrap(), &z2));
        let half = &pi2.mul_pow2(-1) - &BigFloat::from_int(4, wd);
        assert!(close(&quad_square(&rat(1, 2), &p()).unwrap(), &half));
        assert!(close(&quad_square(&int(1), &p()).unwrap(), &(&z2 - &BigFloat::one(wd))));
        // singular but integrable at t = 0
        let r = quad_square(&rat(-1, 2), &p()).unwrap();
        // sum 1/(n-1/2)^2 = pi^2/2
        assert!(close(&r, &pi2.mul_pow2(-1)));
    }

    #[test]
    fn alternating_values() {
        let (pi, ln2, wd) = consts();
        assert!(close(&quad_alternating(&int(0), &p()).unwrap(), &ln2));
        let v = &BigFloat::from_int(2, wd) - &pi.mul_pow2(-1);
        assert!(close(&quad_alternating(&rat(1, 2), &p()).unwrap(), &v));
        let w = &BigFloat::one(wd) - &ln2;
        assert!(close(&quad_alternating(&int(1), &p()).unwrap(), &w));
    }

    #[test]
    fn general_values() {
        let (pi, ln2, wd) = consts();
        let pi2 = pi.square();
        let z2 = &pi2 / &BigFloat::from_int(6, wd);
        assert!(close(&quad_general(&pf_of(&[(int(0), 2)]), &p()).unwrap(), &z2));
        let fisher = &BigFloat::from_int(4, wd) - &ln2.mul_pow2(2);
        let pf = pf_of(&[(int(0), 1), (rat(1, 2), 1)]);
        assert!(close(&quad_general(&pf, &p()).unwrap(), &fisher));
        // pi^2/3 - 8 + 8 ln 2
        let ex3 = &(&(&pi2 / &BigFloat::from_int(3, wd)) - &BigFloat::from_int(8, wd)) + &ln2.mul_pow2(3);
        let pf = pf_of(&[(int(0), 2), (rat(1, 2), 1)]);
        assert!(close(&quad_general(&pf, &p()).unwrap(), &ex3));
    }

    #[test]
    fn general_domain_errors() {
        let pf = pf_of(&[(rat(-3, 2), 2)]);
        assert!(matches!(quad_general(&pf, &p()), Err(Error::NotApplicable(_))));
        let lone = PartialFractions::new(vec![crate::partial_fractions::PfTerm {
            shift: int(0),
            order: 1,
            coeff: int(1),
        }]);
        assert_eq!(quad_general(&lone, &p()), Err(Error::ConstraintViolated(int(1))));
        assert!(quad_general(&PartialFractions::default(), &p()).unwrap().is_zero());
    }

    #[test]
    fn alternating_general_matches_single() {
        let pf = PartialFractions::new(vec![crate::partial_fractions::PfTerm {
            shift: rat(1, 2),
            order: 1,
            coeff: int(1),
        }]);
        let a = quad_alternating_general(&pf, &p()).unwrap();
        let b = quad_alternating(&rat(1, 2), &p()).unwrap();
        assert!(close(&a, &b));
    }

    #[test]
    fn ln_1p_small() {
        let r = rat(1, 100_000_000_000_000_000);
        let v = ln_1p(&BigFloat::from_rational(&r, 40));
        // z - z^2/2 + z^3/3 - z^4/4, next term 1e-85
        let mut series = Rational::zero();
        let mut power = Rational::from_integer(1.into());
        for k in 1..=4 {
            power = &power * &r;
            let term = &power / int(k);
            series = if k % 2 == 1 { series + term } else { series - term };
        }
        let exact = BigFloat::from_rational(&series, 40);
        assert!((&(&v - &exact) / &exact).abs().to_f64() < 1e-38);
    }
}
