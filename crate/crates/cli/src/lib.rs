//! Front end for `exactsum`: parse a summand, evaluate the series, render
//! the result and optionally check it against the oracles.

pub mod convert;
pub mod parse;

use std::fmt::Write as _;

use exactsum_core::oracle::{self, Verification};
use exactsum_core::{engine, BigFloat, PrecisionPolicy, Sign, SumResult};
use serde::Serialize;

pub use convert::ast_to_spec;
pub use parse::{parse_expression, Expr, SyntaxError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

pub const MIN_DIGITS: u32 = 10;
pub const MAX_DIGITS: u32 = 1000;
pub const MIN_ORACLE_TERMS: u64 = 1_000;
pub const MAX_ORACLE_TERMS: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Exact,
    Numeric,
    Both,
    Json,
}

#[derive(Debug, Clone)]
pub struct Request {
    pub expression: String,
    pub sign: Sign,
    pub digits: u32,
    pub format: Format,
    pub verify: bool,
    pub oracle_terms: u64,
}

impl Request {
    pub fn new(expression: impl Into<String>) -> Self {
        Request {
            expression: expression.into(),
            sign: Sign::Plain,
            digits: 30,
            format: Format::Both,
            verify: false,
            oracle_terms: 1_000_000,
        }
    }

    fn validate(&self) -> Result<(), String> {
        if !(MIN_DIGITS..=MAX_DIGITS).contains(&self.digits) {
            return Err(format!(
                "digits must be between {MIN_DIGITS} and {MAX_DIGITS}, got {}",
                self.digits
            ));
        }
        if !(MIN_ORACLE_TERMS..=MAX_ORACLE_TERMS).contains(&self.oracle_terms) {
            return Err(format!(
                "oracle terms must be between {MIN_ORACLE_TERMS} and {MAX_ORACLE_TERMS}, got {}",
                self.oracle_terms
            ));
        }
        Ok(())
    }
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(message: String) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Serialize)]
struct JsonTerm {
    shift: String,
    order: u32,
    coeff: String,
}

#[derive(Serialize)]
struct JsonResidual {
    order: u32,
    argument: String,
    coeff: String,
}

#[derive(Serialize)]
struct JsonVerify {
    bracket_lo: String,
    bracket_hi: String,
    quadrature: Option<String>,
    agree: bool,
}

#[derive(Serialize)]
struct JsonReport {
    expression: String,
    sign: &'static str,
    exact: Option<String>,
    fully_reduced: bool,
    numeric: String,
    digits: u32,
    residuals: Vec<JsonResidual>,
    verify: Option<JsonVerify>,
    partial_fractions: Vec<JsonTerm>,
}

fn decimal(x: &BigFloat, digits: u32) -> String {
    x.to_decimal_string(digits)
}

fn json_report(req: &Request, result: &SumResult, check: Option<&Verification>) -> String {
    let report = JsonReport {
        expression: req.expression.clone(),
        sign: req.sign.as_str(),
        exact: Some(result.exact.render()),
        fully_reduced: result.fully_reduced,
        numeric: decimal(&result.numeric, req.digits),
        digits: req.digits,
        residuals: result
            .exact
            .residuals()
            .map(|(t, c)| JsonResidual {
                order: t.order,
                argument: t.argument.to_string(),
                coeff: c.to_string(),
            })
            .collect(),
        verify: check.map(|v| JsonVerify {
            bracket_lo: decimal(&v.bracket.lo, req.digits),
            bracket_hi: decimal(&v.bracket.hi, req.digits),
            quadrature: v.quadrature.as_ref().map(|q| decimal(q, oracle::quad_digits(&PrecisionPolicy::new(req.digits)))),
            agree: v.agree(),
        }),
        partial_fractions: result
            .pf
            .terms()
            .iter()
            .map(|t| JsonTerm {
                shift: t.shift.to_string(),
                order: t.order,
                coeff: t.coeff.to_string(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&report).expect("report serializes");
    out.push('\n');
    out
}

fn text_report(req: &Request, result: &SumResult, check: Option<&Verification>) -> String {
    let mut out = String::new();
    let exact = result.exact.render();
    let numeric = decimal(&result.numeric, req.digits);
    match req.format {
        // a residual-bearing form is always paired with its value
        Format::Exact if result.fully_reduced => writeln!(out, "{exact}"),
        Format::Numeric => writeln!(out, "{numeric}"),
        _ => writeln!(out, "exact: {exact}\nnumeric: {numeric}"),
    }
    .expect("writing to a String");
    if let Some(v) = check {
        let qd = oracle::quad_digits(&PrecisionPolicy::new(req.digits));
        let quad = v
            .quadrature
            .as_ref()
            .map_or_else(|| "not applicable".to_string(), |q| decimal(q, qd));
        let _ = writeln!(
            out,
            "bracket: [{}, {}] ({} terms)\nquadrature: {quad}\nagree: {}",
            decimal(&v.bracket.lo, req.digits),
            decimal(&v.bracket.hi, req.digits),
            v.bracket.terms_used,
            v.agree()
        );
    }
    out
}

/// Runs one request end to end.
pub fn run(req: &Request) -> Outcome {
    if let Err(msg) = req.validate() {
        return Outcome::input_error(msg);
    }
    let ast = match parse_expression(&req.expression) {
        Ok(ast) => ast,
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    let policy = PrecisionPolicy::new(req.digits);
    let result = match ast_to_spec(&ast, req.sign).and_then(|spec| engine::sum(&spec, &policy)) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    let check = if req.verify {
        match oracle::verify(&result, req.oracle_terms, &policy) {
            Ok(v) => Some(v),
            Err(e) => return Outcome::input_error(format!("cannot verify: {e}")),
        }
    } else {
        None
    };
    let stdout = match req.format {
        Format::Json => json_report(req, &result, check.as_ref()),
        _ => text_report(req, &result, check.as_ref()),
    };
    let agreed = check.as_ref().is_none_or(Verification::agree);
    Outcome {
        code: if agreed { EXIT_OK } else { EXIT_VERIFY },
        stderr: if agreed {
            String::new()
        } else {
            "error: verification failed: the oracles disagree with the computed value\n".into()
        },
        stdout,
    }
}
