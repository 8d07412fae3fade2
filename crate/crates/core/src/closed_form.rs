//! Exact reduction of ψ⁽ᵐ⁾ at rational arguments to a rational combination
//! of `1, γ, ln 2, π, π², ζ(k)`, with whatever does not reduce kept as
//! symbolic residual terms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{factorial, is_non_positive_integer, rat, Rational};
use crate::error::{Error, Result};
use crate::numeric::{self, BigFloat, Constant, PrecisionPolicy};

/// Basis constants, declared in rendering order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisSymbol {
    One,
    Gamma,
    Ln2,
    Pi,
    PiSquared,
    /// ζ(k), k >= 3. ζ(2) is always stored as π²/6.
    Zeta(u32),
}

impl BasisSymbol {
    fn name(self) -> String {
        match self {
            BasisSymbol::One => "1".into(),
            BasisSymbol::Gamma => "gamma".into(),
            BasisSymbol::Ln2 => "ln(2)".into(),
            BasisSymbol::Pi => "pi".into(),
            BasisSymbol::PiSquared => "pi^2".into(),
            BasisSymbol::Zeta(k) => format!("zeta({k})"),
        }
    }

    pub fn to_numeric(self, policy: &PrecisionPolicy) -> BigFloat {
        let wd = policy.working_digits();
        match self {
            BasisSymbol::One => BigFloat::one(wd),
            BasisSymbol::Gamma => numeric::constant(Constant::Gamma, policy),
            BasisSymbol::Ln2 => numeric::constant(Constant::Ln2, policy),
            BasisSymbol::Pi => numeric::constant(Constant::Pi, policy),
            BasisSymbol::PiSquared => numeric::constant(Constant::Pi, policy).square(),
            BasisSymbol::Zeta(k) => numeric::zeta_int(k, policy).expect("k >= 3"),
        }
    }
}

/// An unreduced `ψ⁽order⁾(argument)` with `argument` in (0, 1].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PsiTerm {
    pub order: u32,
    pub argument: Rational,
}

impl fmt::Display for PsiTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "psi({}, {})", self.order, self.argument)
    }
}

/// Exact value: rational coefficients over the basis plus residual ψ terms.
/// Zero coefficients are never stored, so structural equality is value
/// equality within this representation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolicValue {
    basis: BTreeMap<BasisSymbol, Rational>,
    residuals: BTreeMap<PsiTerm, Rational>,
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    let slot = map.entry(key).or_insert_with(Rational::zero);
    *slot += coeff;
    if slot.is_zero() {
        map.retain(|_, v| !v.is_zero());
    }
}

impl SymbolicValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(r: Rational) -> Self {
        let mut v = Self::zero();
        v.add_basis(BasisSymbol::One, r);
        v
    }

    pub fn add_basis(&mut self, symbol: BasisSymbol, coeff: Rational) {
        let (symbol, coeff) = match symbol {
            BasisSymbol::Zeta(2) => (BasisSymbol::PiSquared, coeff * rat(1, 6)),
            BasisSymbol::Zeta(k) if k < 2 => panic!("zeta({k}) is not a basis constant"),
            s => (s, coeff),
        };
        accumulate(&mut self.basis, symbol, coeff);
    }

    fn add_residual(&mut self, term: PsiTerm, coeff: Rational) {
        accumulate(&mut self.residuals, term, coeff);
    }

    pub fn add_assign(&mut self, other: &SymbolicValue, scale: &Rational) {
        for (s, c) in &other.basis {
            self.add_basis(*s, c * scale);
        }
        for (t, c) in &other.residuals {
            self.add_residual(t.clone(), c * scale);
        }
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        let mut v = Self::zero();
        v.add_assign(self, k);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty() && self.residuals.is_empty()
    }

    pub fn is_fully_reduced(&self) -> bool {
        self.residuals.is_empty()
    }

    pub fn coefficient(&self, symbol: BasisSymbol) -> Rational {
        self.basis.get(&symbol).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn basis(&self) -> impl Iterator<Item = (&BasisSymbol, &Rational)> {
        self.basis.iter()
    }

    pub fn residuals(&self) -> impl Iterator<Item = (&PsiTerm, &Rational)> {
        self.residuals.iter()
    }

    /// The value as a plain rational, when only the `One` symbol is present.
    pub fn as_rational(&self) -> Option<Rational> {
        let pure = self.residuals.is_empty() && self.basis.keys().all(|s| *s == BasisSymbol::One);
        pure.then(|| self.coefficient(BasisSymbol::One))
    }

    pub fn render(&self) -> String {
        let mut parts: Vec<(Rational, Option<String>)> = self
            .basis
            .iter()
            .map(|(s, c)| (c.clone(), (*s != BasisSymbol::One).then(|| s.name())))
            .collect();
        parts.extend(self.residuals.iter().map(|(t, c)| (c.clone(), Some(t.to_string()))));
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (c, sym)) in parts.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            match sym {
                None => out.push_str(&mag.to_string()),
                Some(name) if mag.is_one() => out.push_str(name),
                Some(name) if mag.is_integer() => out.push_str(&format!("{mag}*{name}")),
                Some(name) => out.push_str(&format!("({mag})*{name}")),
            }
        }
        out
    }

    pub fn to_numeric(&self, policy: &PrecisionPolicy) -> BigFloat {
        let wd = policy.working_digits();
        let mut acc = BigFloat::zero(wd);
        for (s, c) in &self.basis {
            acc = &acc + &(&BigFloat::from_rational(c, wd) * &s.to_numeric(policy));
        }
        for (t, c) in &self.residuals {
            let v = numeric::polygamma_rational(t.order, &t.argument, policy)
                .expect("residual arguments lie in (0, 1]");
            acc = &acc + &(&BigFloat::from_rational(c, wd) * &v);
        }
        acc
    }
}

impl fmt::Display for SymbolicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `(-1)^(n+1) n! ζ(n+1)` scaled by `k`, added into `v`.
fn add_zeta_multiple(v: &mut SymbolicValue, order: u32, k: &Rational) {
    let sign = if order % 2 == 0 { -1 } else { 1 };
    let coeff = Rational::from_integer(factorial(order) * sign) * k;
    v.add_basis(BasisSymbol::Zeta(order + 1), coeff);
}

/// Exact ψ⁽ᵒʳᵈᵉʳ⁾(argument).
///
/// The argument is moved into (0, 1] by the recurrence
/// ψ⁽ᵐ⁾(z+1) = ψ⁽ᵐ⁾(z) + (-1)ᵐ m!/z^(m+1); the base value is then closed for
/// 1 and 1/2 at every order, and for 1/4 and 3/4 at order 0.
pub fn psi_closed(order: u32, argument: &Rational) -> Result<SymbolicValue> {
    if is_non_positive_integer(argument) {
        return Err(Error::PoleArgument(argument.to_string()));
    }
    let step = Rational::from_integer(factorial(order) * if order % 2 == 0 { 1 } else { -1 });
    let pow = |z: &Rational| crate::arith::rational_pow(z, order as i32 + 1);

    let mut correction = Rational::zero();
    let mut x = argument.clone();
    let one = Rational::one();
    while x > one {
        x -= &one;
        correction += &step / pow(&x);
    }
    while !x.is_positive() {
        correction -= &step / pow(&x);
        x += &one;
    }

    let mut v = SymbolicValue::rational(correction);
    let half = rat(1, 2);
    let (quarter, three_quarters) = (rat(1, 4), rat(3, 4));
    let minus = |k: i64| Rational::from_integer(BigInt::from(k));
    match order {
        0 if x.is_one() => v.add_basis(BasisSymbol::Gamma, minus(-1)),
        0 if x == half => {
            v.add_basis(BasisSymbol::Gamma, minus(-1));
            v.add_basis(BasisSymbol::Ln2, minus(-2));
        }
        0 if x == quarter || x == three_quarters => {
            v.add_basis(BasisSymbol::Gamma, minus(-1));
            v.add_basis(BasisSymbol::Ln2, minus(-3));
            let pi_sign = if x == quarter { -1 } else { 1 };
            v.add_basis(BasisSymbol::Pi, rat(pi_sign, 2));
        }
        n if x.is_one() => add_zeta_multiple(&mut v, n, &one),
        n if x == half => {
            let k = Rational::from_integer((BigInt::one() << (n + 1)) - 1);
            add_zeta_multiple(&mut v, n, &k);
        }
        n => v.add_residual(PsiTerm { order: n, argument: x }, one),
    }
    Ok(v)
}

/// Exact `sum coeff * ψ⁽ᵒʳᵈᵉʳ⁾(argument)`.
pub fn assemble<'a, I>(terms: I) -> Result<SymbolicValue>
where
    I: IntoIterator<Item = &'a (Rational, u32, Rational)>,
{
    let mut v = SymbolicValue::zero();
    for (coeff, order, argument) in terms {
        if coeff.is_zero() {
            continue;
        }
        v.add_assign(&psi_closed(*order, argument)?, coeff);
    }
    Ok(v)
}
