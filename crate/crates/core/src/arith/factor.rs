//! Splitting a polynomial into rational linear factors with the rational
//! root theorem.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{is_negative_integer, Polynomial, Rational};
use crate::error::{Error, Result};

/// One factor `(n + shift)^multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factor {
    pub shift: Rational,
    pub multiplicity: u32,
}

impl Factor {
    pub fn new(shift: Rational, multiplicity: u32) -> Self {
        Factor { shift, multiplicity }
    }
}

/// Denominator `P(n) = (n + a_1)^m_1 ... (n + a_k)^m_k`, sorted by ascending
/// shift. Shifts are distinct, multiplicities positive, and no shift is a
/// negative integer (that would be a pole at some n >= 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FactorList {
    factors: Vec<Factor>,
}

impl FactorList {
    pub fn new(mut factors: Vec<Factor>) -> Result<Self> {
        factors.sort_by(|a, b| a.shift.cmp(&b.shift));
        for f in &factors {
            if f.multiplicity == 0 {
                return Err(Error::ZeroMultiplicity(f.shift.clone()));
            }
            if is_negative_integer(&f.shift) {
                return Err(Error::NegativeIntegerShift(f.shift.clone()));
            }
        }
        if let Some(w) = factors.windows(2).find(|w| w[0].shift == w[1].shift) {
            return Err(Error::DuplicateShift(w[0].shift.clone()));
        }
        Ok(FactorList { factors })
    }

    /// Like [`FactorList::new`], but repeated shifts are merged by adding
    /// their multiplicities.
    pub fn merged(factors: impl IntoIterator<Item = Factor>) -> Result<Self> {
        let mut out: Vec<Factor> = Vec::new();
        for f in factors {
            match out.iter_mut().find(|g| g.shift == f.shift) {
                Some(g) => g.multiplicity += f.multiplicity,
                None => out.push(f),
            }
        }
        Self::new(out)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn iter(&self) -> impl Iterator<Item = &Factor> {
        self.factors.iter()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total degree N = sum of multiplicities.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.multiplicity as usize).sum()
    }

    /// The monic polynomial the factors multiply out to.
    pub fn expand(&self) -> Polynomial {
        self.factors.iter().fold(Polynomial::one(), |acc, f| {
            &acc * &Polynomial::linear(f.shift.clone()).pow(f.multiplicity)
        })
    }
}

impl fmt::Display for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| format!("(a={}, m={})", x.shift, x.multiplicity))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Factors `p` as `leading(p) * prod (n + a_i)^m_i` with rational `a_i`.
///
/// Fails with [`Error::NonLinearFactor`] when a factor without rational
/// roots remains, and with [`Error::NegativeIntegerShift`] when a root is a
/// positive integer (the factor list cannot hold it).
pub fn factor_linear(p: &Polynomial) -> Result<FactorList> {
    FactorList::new(linear_factors(p)?)
}

/// Rational linear factors of `p`, without the factor-list restrictions on
/// shifts.
pub fn linear_factors(p: &Polynomial) -> Result<Vec<Factor>> {
    match p.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(_) => {}
    }
    let (mut ints, _) = p.primitive_part();
    let mut factors = Vec::new();

    let zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        ints.drain(..zeros);
        factors.push(Factor::new(Rational::zero(), zeros as u32));
    }

    if ints.len() > 1 {
        let bound = cauchy_bound(&ints);
        let numerators = divisors(&ints[0]);
        let denominators = divisors(ints.last().expect("nonempty"));
        'outer: for q in &denominators {
            for num in &numerators {
                if !num.gcd(q).is_one() {
                    continue;
                }
                for root_num in [num.clone(), -num] {
                    if ints.len() == 1 {
                        break 'outer;
                    }
                    let root = Rational::new(root_num.clone(), q.clone());
                    if root.abs() > bound {
                        continue;
                    }
                    let mut mult = 0;
                    while ints.len() > 1 && eval_scaled(&ints, &root_num, q).is_zero() {
                        ints = deflate(&ints, &root_num, q);
                        mult += 1;
                    }
                    if mult > 0 {
                        factors.push(Factor::new(-root, mult));
                    }
                }
            }
        }
    }

    if ints.len() > 1 {
        let rest = Polynomial::new(ints.into_iter().map(Rational::from_integer).collect());
        return Err(Error::NonLinearFactor {
            remainder: rest.to_string(),
        });
    }
    factors.sort_by(|a, b| a.shift.cmp(&b.shift));
    Ok(factors)
}

/// `q^d * f(p/q)` for integer coefficients, exact.
fn eval_scaled(ints: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut q_pow = BigInt::one();
    let mut terms = Vec::with_capacity(ints.len());
    for _ in 0..ints.len() {
        terms.push(q_pow.clone());
        q_pow *= q;
    }
    let d = ints.len() - 1;
    let mut p_pow = BigInt::one();
    for (i, a) in ints.iter().enumerate() {
        acc += a * &p_pow * &terms[d - i];
        p_pow *= p;
    }
    acc
}

/// Exact division of a primitive integer polynomial by `q n - p`.
fn deflate(ints: &[BigInt], p: &BigInt, q: &BigInt) -> Vec<BigInt> {
    let d = ints.len() - 1;
    let mut out = vec![BigInt::zero(); d];
    let mut carry = BigInt::zero();
    for k in (1..=d).rev() {
        let b = (&ints[k] + &carry) / q;
        carry = p * &b;
        out[k - 1] = b;
    }
    out
}

fn cauchy_bound(ints: &[BigInt]) -> Rational {
    let lead = ints.last().expect("nonempty").abs();
    let max = ints[..ints.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    Rational::one() + Rational::new(max, lead)
}

/// Positive divisors of `|n|`; `n = 0` yields only 1 (a zero constant term
/// is handled before enumeration).
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() || n.is_one() {
        return vec![BigInt::one()];
    }
    let mut primes = Vec::new();
    prime_factors(n, &mut primes);
    primes.sort();
    let mut divs = vec![BigInt::one()];
    let mut i = 0;
    while i < primes.len() {
        let prime = primes[i].clone();
        let mut count = 0;
        while i < primes.len() && primes[i] == prime {
            count += 1;
            i += 1;
        }
        let mut next = Vec::with_capacity(divs.len() * (count + 1));
        for d in &divs {
            let mut pw = d.clone();
            next.push(pw.clone());
            for _ in 0..count {
                pw *= &prime;
                next.push(pw.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

fn prime_factors(mut n: BigInt, out: &mut Vec<BigInt>) {
    for p in 2u32..1000 {
        let p = BigInt::from(p);
        if &p * &p > n {
            break;
        }
        while (&n % &p).is_zero() {
            out.push(p.clone());
            n /= &p;
        }
    }
    split_large(n, out);
}

fn split_large(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(&n);
    split_large(d.clone(), out);
    split_large(n / d, out);
}

fn is_probable_prime(n: &BigInt) -> bool {
    const BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    if *n < BigInt::from(2) {
        return false;
    }
    for b in BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for b in BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard's rho with Floyd cycle detection; `n` must be composite.
fn pollard_rho(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    for c in 1u32..=64 {
        let f = |x: &BigInt| (x * x + c) % n;
        let (mut x, mut y) = (BigInt::from(2), BigInt::from(2));
        let d = loop {
            x = f(&x);
            y = f(&f(&y));
            let d = (&x - &y).abs().gcd(n);
            if !d.is_one() {
                break d;
            }
        };
        if &d != n {
            return d;
        }
    }
    // Could not split: the divisor list then misses candidates, which can
    // only surface as a spurious NonLinearFactor.
    n.clone()
}
