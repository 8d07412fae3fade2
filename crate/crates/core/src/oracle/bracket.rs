//! Truncated partial sums with a rigorous bound on the omitted tail.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{rational_pow, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::numeric::bigfloat::bits_for;
use crate::numeric::{BigFloat, PrecisionPolicy};
use crate::partial_fractions::{Sign, SumSpec};

/// An interval that provably contains the limit of the series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub lo: BigFloat,
    pub hi: BigFloat,
    pub terms_used: u64,
}

impl Bracket {
    pub fn contains(&self, x: &BigFloat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Membership with `slack` added on both sides.
    pub fn contains_within(&self, x: &BigFloat, slack: &BigFloat) -> bool {
        &(&self.lo - slack) <= x && x <= &(&self.hi + slack)
    }

    pub fn width(&self) -> BigFloat {
        &self.hi - &self.lo
    }
}

/// Integer coefficients and a common scale: `p(n) = ints(n) / scale`.
fn integer_form(p: &Polynomial) -> (Vec<BigInt>, BigInt) {
    let scale = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(scale.clone())).to_integer())
        .collect();
    (ints, scale)
}

fn horner(coeffs: &[BigInt], n: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * n + c)
}

/// `1 + max |c_k / c_lead|`: every root of `p` has modulus below this.
fn cauchy_bound(p: &Polynomial) -> Rational {
    let lead = p.leading().abs();
    let deg = p.degree().unwrap_or(0);
    let max = p.coeffs()[..deg]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    max + Rational::one()
}

/// `sum_{n=1}^{terms} (+-1)^(n+1) t(n)` in fixed point: returns `s` with
/// the exact sum in `[s, s + terms] * 2^-bits`.
fn fixed_point_sum(spec: &SumSpec, terms: u64, bits: u64) -> BigInt {
    let (q, q_scale) = integer_form(spec.numerator());
    let (p, p_scale) = integer_form(&spec.denominator());
    // t(n) = q(n) p_scale / (p(n) q_scale)
    let num_scale = p_scale << bits as usize;
    let alternating = spec.sign() == Sign::Alternating;
    let chunk = |range: std::ops::Range<u64>| -> BigInt {
        let mut acc = BigInt::zero();
        for n in range {
            let nb = BigInt::from(n);
            let mut num = horner(&q, &nb) * &num_scale;
            if alternating && n % 2 == 0 {
                num = -num;
            }
            let den = horner(&p, &nb) * &q_scale;
            acc += num.div_floor(&den);
        }
        acc
    };
    if terms < 20_000 {
        return chunk(1..terms + 1);
    }
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()) as u64;
    let step = terms.div_ceil(workers);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let lo = 1 + w * step;
                let hi = (lo + step).min(terms + 1);
                let chunk = &chunk;
                s.spawn(move || if lo < hi { chunk(lo..hi) } else { BigInt::zero() })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    })
}

/// Interval `[lo, hi]` known to contain the tail after `n` terms.
fn tail_bounds(spec: &SumSpec, n: u64) -> Result<(Rational, Rational)> {
    let q = spec.numerator();
    let Some(dq) = q.degree() else {
        return Ok((Rational::zero(), Rational::zero()));
    };
    let big_n = Rational::from_integer(n.into());
    let max_shift = spec
        .factors()
        .iter()
        .map(|f| f.shift.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let insufficient = |reason: &str| Error::InsufficientTerms {
        terms: n,
        reason: reason.to_string(),
    };

    // past the Cauchy bound Q keeps the sign of its leading coefficient;
    // every n + a_i is positive once n > max |a_i|
    let roots = if dq == 0 { Rational::zero() } else { cauchy_bound(q) };
    let settled = big_n > roots && big_n > max_shift;
    let lead_sign = if q.leading().is_positive() { 1 } else { -1 };

    match spec.sign() {
        Sign::Plain => {
            // |Q(m)| <= m^dq sum |q_k| N^(k-dq) and
            // P(m) >= m^degP prod (1 - |a_i|/N)^m_i for m >= N
            let upper: Rational = q
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| c.abs() * rational_pow(&big_n, k as i32 - dq as i32))
                .sum();
            let mut lower = Rational::one();
            for f in spec.factors().iter() {
                let r = Rational::one() - f.shift.abs() / &big_n;
                if !r.is_positive() {
                    return Err(insufficient("a shift exceeds the number of terms"));
                }
                lower *= rational_pow(&r, f.multiplicity as i32);
            }
            let k = upper / lower;
            let gap = spec.factors().degree() - dq;
            // sum_{m>N} m^-d <= N^(1-d) / (d-1)
            let bound = k * rational_pow(&big_n, 1 - gap as i32)
                / Rational::from_integer(BigInt::from(gap - 1));
            Ok(match (settled, lead_sign) {
                (true, 1) => (Rational::zero(), bound),
                (true, _) => (-bound, Rational::zero()),
                _ => (-bound.clone(), bound),
            })
        }
        Sign::Alternating => {
            // |t| decreases for m >= N once N > dq max|a| + (dq+1) R: then
            // |Q'/Q| <= dq/(m-R) < degP/(m+max|a|) <= sum m_i/(m+a_i)
            let dq_r = Rational::from_integer(dq.into());
            let needed = &dq_r * &max_shift + (dq_r + Rational::one()) * &roots;
            if !settled || big_n <= needed {
                return Err(insufficient("|t(n)| is not yet monotone"));
            }
            let next = Rational::from_integer((n + 1).into());
            let mut first = spec.term(&next);
            if n % 2 == 1 {
                first = -first;
            }
            Ok(if first.is_negative() {
                (first, Rational::zero())
            } else {
                (Rational::zero(), first)
            })
        }
    }
}

/// Rounds `r` to `digits` toward minus infinity (`up = false`) or plus
/// infinity.
fn round_directed(r: &Rational, digits: u32, up: bool) -> BigFloat {
    let x = BigFloat::from_rational(r, digits);
    let exact = x.to_rational();
    let off = if up { &exact < r } else { &exact > r };
    if !off {
        return x;
    }
    let ulp = BigFloat::one(digits).mul_pow2(x.log2_floor() - x.bits() as i64 + 1);
    if up {
        &x + &ulp
    } else {
        &x - &ulp
    }
}

/// Brackets the series limit from its first `n_terms` terms.
pub fn partial_sum_bracket(spec: &SumSpec, n_terms: u64, policy: &PrecisionPolicy) -> Result<Bracket> {
    let max_shift = spec
        .factors()
        .iter()
        .map(|f| f.shift.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let needed = (max_shift + Rational::one()) * Rational::from_integer(10.into());
    if Rational::from_integer(n_terms.into()) < needed {
        return Err(Error::InsufficientTerms {
            terms: n_terms,
            reason: format!("need at least {} terms", needed.ceil().to_integer()),
        });
    }
    let (tail_lo, tail_hi) = tail_bounds(spec, n_terms)?;

    let wd = policy.working_digits();
    let bits = bits_for(wd) + 64 - n_terms.leading_zeros() as u64 + 8;
    let fixed = fixed_point_sum(spec, n_terms, bits);
    let denom = BigInt::one() << bits as usize;
    let partial_lo = Rational::new(fixed.clone(), denom.clone());
    let partial_hi = Rational::new(fixed + n_terms, denom);

    Ok(Bracket {
        lo: round_directed(&(partial_lo + tail_lo), wd, false),
        hi: round_directed(&(partial_hi + tail_hi), wd, true),
        terms_used: n_terms,
    })
}
