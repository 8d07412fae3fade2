#![allow(dead_code)]

use exactsum_core::arith::{int, parse_rational};
use exactsum_core::{BigFloat, Factor, FactorList, Polynomial, Rational, Sign, SumSpec};
use num_bigint::BigInt;
use num_traits::{One, Zero};

// reference values from published tables
pub const PI: &str = "3.14159265358979323846264338327950288419716939937510582097494";
pub const LN2: &str = "0.69314718055994530941723212145817656807550013436025525412068";
pub const GAMMA: &str = "0.57721566490153286060651209008240243104215933593992359880577";

/// Decimal literal to BigFloat, exactly rounded.
pub fn lit(text: &str, digits: u32) -> BigFloat {
    let (int_part, frac) = text.split_once('.').unwrap_or((text, ""));
    let scale = BigInt::from(10).pow(frac.len() as u32);
    let mant: BigInt = format!("{int_part}{frac}").parse().unwrap();
    BigFloat::from_rational(&Rational::new(mant, scale), digits)
}

pub fn r(text: &str) -> Rational {
    parse_rational(text).unwrap()
}

pub fn bf(x: &Rational, digits: u32) -> BigFloat {
    BigFloat::from_rational(x, digits)
}

pub fn spec(q: Polynomial, fs: &[(Rational, u32)], sign: Sign) -> SumSpec {
    let fl = FactorList::new(fs.iter().map(|(a, m)| Factor::new(a.clone(), *m)).collect()).unwrap();
    SumSpec::new(q, fl, sign).unwrap()
}

pub fn plain(fs: &[(&str, u32)]) -> SumSpec {
    let fs: Vec<_> = fs.iter().map(|(a, m)| (r(a), *m)).collect();
    spec(Polynomial::one(), &fs, Sign::Plain)
}

pub fn alternating(fs: &[(&str, u32)]) -> SumSpec {
    let fs: Vec<_> = fs.iter().map(|(a, m)| (r(a), *m)).collect();
    spec(Polynomial::one(), &fs, Sign::Alternating)
}

/// `B_0..B_m` from `sum_{j<=m} C(m+1, j) B_j = 0`.
fn bernoulli_table(m: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for k in 1..=m {
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * Rational::from_integer(binom.clone());
            binom = binom * (k + 1 - j) / (j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(k + 1)));
    }
    b
}

/// ζ(s) for integer `s >= 2` by a direct sum to `N = 40` and an
/// Euler-Maclaurin tail, all in exact rationals. Good to far beyond 40
/// digits for `s <= 10`.
pub fn zeta_reference(s: u32, digits: u32) -> BigFloat {
    let n = 40i64;
    let pow = |base: i64, e: u32| Rational::from_integer(BigInt::from(base).pow(e));
    let mut sum: Rational = (1..n).map(|k| pow(k, s).recip()).sum();
    let big_n = pow(n, 1);
    // N^(1-s)/(s-1) + N^-s/2
    sum += pow(n, s - 1).recip() / int(s as i64 - 1);
    sum += pow(n, s).recip() / int(2);
    let b = bernoulli_table(40);
    // + sum_j B_2j/(2j)! s(s+1)...(s+2j-2) N^(-s-2j+1)
    let mut rising = Rational::from_integer(BigInt::from(s));
    let mut fact = Rational::from_integer(BigInt::from(2));
    let mut npow = pow(n, s + 1);
    for j in 1..=20usize {
        sum += &b[2 * j] / &fact * &rising / &npow;
        let k = (s as usize + 2 * j - 1) as i64;
        rising = rising * int(k) * int(k + 1);
        fact = fact * int(2 * j as i64 + 1) * int(2 * j as i64 + 2);
        npow = npow * &big_n * &big_n;
    }
    BigFloat::from_rational(&sum, digits)
}

pub fn close(a: &BigFloat, b: &BigFloat, tol: f64) -> bool {
    (a - b).abs().to_f64() < tol
}
