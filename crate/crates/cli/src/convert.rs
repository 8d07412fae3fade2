//! Folds a parsed expression into a validated [`SumSpec`].

use exactsum_core::arith::factor_linear;
use exactsum_core::{FactorList, Polynomial, RationalFunction, Result, Sign, SumSpec};

use crate::parse::Expr;

/// Exact value of `expr` as a reduced rational function of `n`.
pub fn fold(expr: &Expr) -> Result<RationalFunction> {
    Ok(match expr {
        Expr::Num(r) => RationalFunction::constant(r.clone()),
        Expr::Var => RationalFunction::from_polynomial(Polynomial::var()),
        Expr::Neg(e) => fold(e)?.neg(),
        Expr::Add(a, b) => fold(a)?.add(&fold(b)?),
        Expr::Sub(a, b) => fold(a)?.sub(&fold(b)?),
        Expr::Mul(a, b) => fold(a)?.mul(&fold(b)?),
        Expr::Div(a, b) => fold(a)?.div(&fold(b)?)?,
        Expr::Pow(a, k) => fold(a)?.pow(*k),
    })
}

/// Reduces, factors the denominator and checks convergence. Poles inside
/// the summation range are reported before degree problems.
pub fn ast_to_spec(expr: &Expr, sign: Sign) -> Result<SumSpec> {
    let rf = fold(expr)?;
    let den = rf.denominator();
    let factors = match den.degree() {
        Some(0) => FactorList::default(),
        _ => factor_linear(den)?,
    };
    SumSpec::new(rf.numerator().clone(), factors, sign)
}
