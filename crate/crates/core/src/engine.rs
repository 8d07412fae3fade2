//! Evaluates a [`SumSpec`] through its partial fractions: every term
//! `A / (n + a)^j` becomes a multiple of ψ⁽ʲ⁻¹⁾ at a shifted argument, and
//! the pieces are reduced exactly and evaluated numerically side by side.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{factorial, rat, FactorList, Factor, Polynomial, Rational};
use crate::closed_form::{assemble, SymbolicValue};
use crate::error::{Error, Result};
use crate::numeric::{polygamma_rational, BigFloat, PrecisionPolicy};
use crate::partial_fractions::{decompose, PartialFractions, Sign, SumSpec};

#[derive(Debug, Clone)]
pub struct SumResult {
    pub exact: SymbolicValue,
    /// Computed from the ψ terms directly, not from `exact`.
    pub numeric: BigFloat,
    pub fully_reduced: bool,
    pub spec: SumSpec,
    pub pf: PartialFractions,
}

impl SumResult {
    /// `|exact - numeric|`, both at working precision.
    pub fn coherence_gap(&self, policy: &PrecisionPolicy) -> BigFloat {
        (&self.exact.to_numeric(policy) - &self.numeric).abs()
    }
}

/// `(coefficient, order, argument)` triples whose weighted ψ values sum to
/// the series.
fn psi_terms(pf: &PartialFractions, sign: Sign) -> Vec<(Rational, u32, Rational)> {
    let mut out = Vec::new();
    for t in pf.terms() {
        if t.coeff.is_zero() {
            continue;
        }
        let j = t.order;
        let parity = if j % 2 == 0 { 1 } else { -1 };
        let base = Rational::new(BigInt::from(parity), factorial(j - 1)) * &t.coeff;
        match sign {
            Sign::Plain => out.push((base, j - 1, &t.shift + Rational::one())),
            Sign::Alternating => {
                // n = 2k-1 and n = 2k halves, each a plain sum over k
                let c = base / Rational::from_integer(BigInt::one() << j);
                let lower = (&t.shift + Rational::one()) * rat(1, 2);
                let upper = (&t.shift + Rational::from_integer(2.into())) * rat(1, 2);
                out.push((-c.clone(), j - 1, upper));
                out.push((c, j - 1, lower));
            }
        }
    }
    out
}

fn evaluate(spec: &SumSpec, policy: &PrecisionPolicy) -> Result<SumResult> {
    let pf = decompose(spec)?;
    let terms = psi_terms(&pf, spec.sign());
    let exact = assemble(&terms)?;

    let wd = policy.working_digits();
    let mut numeric = BigFloat::zero(wd);
    for (c, order, arg) in &terms {
        let psi = polygamma_rational(*order, arg, policy)?;
        numeric = &numeric + &(&BigFloat::from_rational(c, wd) * &psi);
    }

    Ok(SumResult {
        fully_reduced: exact.is_fully_reduced(),
        exact,
        numeric,
        spec: spec.clone(),
        pf,
    })
}

/// `sum_{n>=1} Q(n)/P(n)`.
pub fn sum_plain(spec: &SumSpec, policy: &PrecisionPolicy) -> Result<SumResult> {
    assert_eq!(spec.sign(), Sign::Plain, "sum_plain on an alternating spec");
    evaluate(spec, policy)
}

/// `sum_{n>=1} (-1)^(n+1) Q(n)/P(n)`.
pub fn sum_alternating(spec: &SumSpec, policy: &PrecisionPolicy) -> Result<SumResult> {
    assert_eq!(spec.sign(), Sign::Alternating, "sum_alternating on a plain spec");
    evaluate(spec, policy)
}

/// Dispatches on the sign of `spec`.
pub fn sum(spec: &SumSpec, policy: &PrecisionPolicy) -> Result<SumResult> {
    evaluate(spec, policy)
}

/// `(1/k) sum_{j=1}^{k} 1/(j+a)`, which equals
/// `sum_{n>=1} 1/((n+a)(n+a+k))`.
pub fn telescope(a: &Rational, k: u32) -> Result<SymbolicValue> {
    assert!(k >= 1, "telescope needs k >= 1");
    let mut total = Rational::zero();
    for j in 1..=k {
        let d = a + Rational::from_integer(j.into());
        if d.is_zero() {
            return Err(Error::PoleArgument(d.to_string()));
        }
        total += d.recip();
    }
    Ok(SymbolicValue::rational(total / Rational::from_integer(k.into())))
}

/// `sum_{n>=1} 1/((n+a)(n+b))` as a spec, or `1/(n+a)^2` when `a == b`.
pub fn two_param_spec(a: &Rational, b: &Rational) -> Result<SumSpec> {
    let factors = FactorList::merged([Factor::new(a.clone(), 1), Factor::new(b.clone(), 1)])?;
    SumSpec::new(Polynomial::one(), factors, Sign::Plain)
}
