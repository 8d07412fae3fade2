use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use exactsum::{run, Format, Request, MAX_DIGITS, MIN_DIGITS};
use exactsum_core::Sign;

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Exact,
    Numeric,
    Both,
    Json,
}

/// Exact value of sum_{n>=1} Q(n)/P(n) for P splitting over the rationals.
#[derive(Parser)]
#[command(name = "exactsum", version)]
struct Args {
    /// Summand in n, e.g. "1/(n^2+n/2)".
    #[arg(allow_hyphen_values = true)]
    expression: String,

    /// Sum (-1)^(n+1) times the summand.
    #[arg(long)]
    alternating: bool,

    /// Significant digits of the numeric value.
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(MIN_DIGITS as i64..=MAX_DIGITS as i64))]
    digits: u32,

    #[arg(long, value_enum, default_value_t = FormatArg::Both)]
    format: FormatArg,

    /// Check the value against a partial-sum bracket and quadrature.
    #[arg(long)]
    verify: bool,

    /// Terms summed by the bracket oracle; accepts forms like 1e6.
    #[arg(long, default_value = "1000000", value_parser = parse_terms)]
    oracle_terms: u64,
}

fn parse_terms(text: &str) -> Result<u64, String> {
    let value: f64 = text.parse().map_err(|_| format!("not a number: {text}"))?;
    if value.fract() != 0.0 || !(1e3..=1e8).contains(&value) {
        return Err("must be an integer between 1e3 and 1e8".into());
    }
    Ok(value as u64)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let request = Request {
        expression: args.expression,
        sign: if args.alternating { Sign::Alternating } else { Sign::Plain },
        digits: args.digits,
        format: match args.format {
            FormatArg::Exact => Format::Exact,
            FormatArg::Numeric => Format::Numeric,
            FormatArg::Both => Format::Both,
            FormatArg::Json => Format::Json,
        },
        verify: args.verify,
        oracle_terms: args.oracle_terms,
    };
    let outcome = run(&request);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
