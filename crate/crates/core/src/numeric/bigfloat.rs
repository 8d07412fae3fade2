//! Binary floating point with a decimal precision budget: `mant * 2^exp`,
//! mantissa rounded to nearest at `bits_for(digits)` bits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rational;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Mantissa bits used for a decimal precision.
pub fn bits_for(digits: u32) -> u64 {
    (digits as f64 * LOG2_10).ceil() as u64 + 8
}

#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    digits: u32,
}

/// `a * b / 2^wb`, truncated toward zero so series terms of either sign
/// reach zero.
fn mul_shift(a: &BigInt, b: &BigInt, wb: u64) -> BigInt {
    let p = a * b;
    let mag = p.magnitude() >> wb as usize;
    BigInt::from_biguint(p.sign(), mag)
}

fn bit_len(m: &BigInt) -> i64 {
    m.bits() as i64
}

/// Rounds `mant * 2^exp` to at most `bits` mantissa bits, ties away from zero.
fn round_to(mant: BigInt, exp: i64, bits: u64) -> (BigInt, i64) {
    let len = mant.bits();
    if len <= bits {
        return (mant, exp);
    }
    let shift = len - bits;
    let (sign, mag) = (mant.sign(), mant.magnitude().clone());
    let mut q: BigUint = &mag >> shift;
    if mag.bit(shift - 1) {
        q += 1u32;
    }
    (BigInt::from_biguint(sign, q), exp + shift as i64)
}

impl BigFloat {
    pub fn zero(digits: u32) -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
            digits,
        }
    }

    pub fn one(digits: u32) -> Self {
        Self::from_int(1, digits)
    }

    pub fn from_int(v: i64, digits: u32) -> Self {
        Self::from_parts(BigInt::from(v), 0, digits)
    }

    pub fn from_bigint(v: &BigInt, digits: u32) -> Self {
        Self::from_parts(v.clone(), 0, digits)
    }

    /// `mant * 2^exp`, rounded to `digits`.
    pub fn from_parts(mant: BigInt, exp: i64, digits: u32) -> Self {
        let (mant, exp) = round_to(mant, exp, bits_for(digits));
        BigFloat { mant, exp, digits }
    }

    pub fn from_rational(r: &Rational, digits: u32) -> Self {
        let bits = bits_for(digits);
        if r.is_zero() {
            return Self::zero(digits);
        }
        let (n, d) = (r.numer(), r.denom());
        let shift = (bits as i64 + 2 + bit_len(d) - bit_len(n)).max(0);
        let (q, rem) = (n << shift as usize).div_rem(d);
        let sticky = if rem.is_zero() { 0 } else { q.signum().to_i64().unwrap_or(1) };
        let q = (q << 1u32) + sticky;
        Self::from_parts(q, -shift - 1, digits)
    }

    pub fn from_f64(v: f64, digits: u32) -> Self {
        if v == 0.0 {
            return Self::zero(digits);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Self::from_parts(BigInt::from(m) * sign, e, digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> u64 {
        bits_for(self.digits)
    }

    pub fn with_digits(&self, digits: u32) -> Self {
        Self::from_parts(self.mant.clone(), self.exp, digits)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
            digits: self.digits,
        }
    }

    /// Position of the leading bit: `2^(top-1) <= |x| < 2^top`.
    fn top(&self) -> i64 {
        self.exp + bit_len(&self.mant)
    }

    /// Approximate base-2 exponent; `i64::MIN` for zero.
    pub fn log2_floor(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.top() - 1
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        BigFloat {
            mant: self.mant.clone(),
            exp: self.exp + k,
            digits: self.digits,
        }
    }

    /// Exact value.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as usize)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (m, e) = round_to(self.mant.clone(), self.exp, 60);
        let m = m.to_f64().unwrap_or(0.0);
        if e > 2000 {
            m.signum() * f64::INFINITY
        } else if e < -2200 {
            0.0
        } else {
            m * 2f64.powi(e as i32)
        }
    }

    /// Nearest integer, ties away from zero.
    pub fn round(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as usize;
        }
        let shift = (-self.exp) as u64;
        if shift > self.mant.bits() + 1 {
            return BigInt::zero();
        }
        let mag = self.mant.magnitude();
        let mut q: BigUint = mag >> shift;
        if mag.bit(shift - 1) {
            q += 1u32;
        }
        BigInt::from_biguint(self.mant.sign(), q)
    }

    pub fn recip(&self) -> Self {
        Self::one(self.digits) / self
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn powi(&self, mut n: i64) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut base = self.with_digits(self.digits + 5);
        let mut acc = BigFloat::one(self.digits + 5);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc.with_digits(self.digits)
    }

    fn to_fixed(&self, frac_bits: u64) -> BigInt {
        let shift = self.exp + frac_bits as i64;
        if shift >= 0 {
            &self.mant << shift as usize
        } else {
            let s = (-shift) as u64;
            if s > self.mant.bits() + 1 {
                return BigInt::zero();
            }
            let mag = self.mant.magnitude();
            let mut q: BigUint = mag >> s;
            if mag.bit(s - 1) {
                q += 1u32;
            }
            BigInt::from_biguint(self.mant.sign(), q)
        }
    }

    fn from_fixed(v: BigInt, frac_bits: u64, digits: u32) -> Self {
        Self::from_parts(v, -(frac_bits as i64), digits)
    }

    pub fn exp(&self) -> Self {
        let digits = self.digits;
        if self.is_zero() {
            return Self::one(digits);
        }
        let bits = bits_for(digits);
        let k = (self.to_f64() / std::f64::consts::LN_2).round();
        assert!(k.is_finite() && k.abs() < 1e17, "exp argument out of range");
        let k = k as i64;
        let k_bits = 64 - k.unsigned_abs().leading_zeros() as u64;
        let halvings = ((bits as f64).sqrt() as u64 / 2).max(4);
        let wb = bits + k_bits + halvings + 32;

        let work = (wb as f64 / LOG2_10) as u32 + 2;
        let r = &self.with_digits(work) - &(&ln2(work) * &Self::from_int(k, work));
        // |r| <= ln2/2; divide by 2^halvings, sum Taylor, square back
        let y = r.to_fixed(wb) >> halvings as usize;
        let one = BigInt::one() << wb as usize;
        let mut sum = one.clone();
        let mut term = one;
        let mut n = 1u32;
        loop {
            term = mul_shift(&term, &y, wb);
            term /= n;
            if term.is_zero() {
                break;
            }
            sum += &term;
            n += 1;
        }
        for _ in 0..halvings {
            sum = mul_shift(&sum, &sum, wb);
        }
        Self::from_parts(sum, k - wb as i64, digits)
    }

    /// `exp(x) - 1`, accurate for small `|x|`.
    pub fn exp_m1(&self) -> Self {
        if self.log2_floor() >= -2 {
            return &self.exp() - &Self::one(self.digits);
        }
        let digits = self.digits + 2;
        let eps_top = -(bits_for(digits) as i64) - 4;
        let x = self.with_digits(digits);
        let mut sum = x.clone();
        let mut term = x.clone();
        let mut n = 2;
        loop {
            term = &(&term * &x) / &Self::from_int(n, digits);
            if term.is_zero() || term.log2_floor() - sum.log2_floor() < eps_top {
                break;
            }
            sum = &sum + &term;
            n += 1;
        }
        sum.with_digits(self.digits)
    }

    /// Natural logarithm; panics for non-positive input.
    pub fn ln(&self) -> Self {
        assert!(!self.is_zero() && !self.is_negative(), "ln of non-positive value");
        let digits = self.digits;
        let bits = bits_for(digits);
        // x = m * 2^e, m in [1/sqrt2, sqrt2)
        let len = bit_len(&self.mant);
        let mut e = self.exp + len;
        let mut m = BigFloat {
            mant: self.mant.clone(),
            exp: -len,
            digits: digits + 4,
        };
        if m.to_f64() < std::f64::consts::FRAC_1_SQRT_2 {
            m = m.mul_pow2(1);
            e -= 1;
        }
        let e_bits = 64 - e.unsigned_abs().leading_zeros() as u64;
        let wb = bits + e_bits + 32;
        let work = (wb as f64 / LOG2_10) as u32 + 2;
        let one = BigFloat::one(work);
        let m = m.with_digits(work);
        let z = &(&m - &one) / &(&m + &one);
        let zf = z.to_fixed(wb);
        let z2 = mul_shift(&zf, &zf, wb);
        let mut sum = BigInt::zero();
        let mut power = zf;
        let mut k = 1u32;
        while !power.is_zero() {
            sum += &power / k;
            power = mul_shift(&power, &z2, wb);
            k += 2;
        }
        let ln_m = Self::from_fixed(sum << 1u32, wb, work);
        let result = &ln_m + &(&ln2(work) * &Self::from_int(e, work));
        result.with_digits(digits)
    }

    /// `self^y = exp(y ln self)` for positive `self`.
    pub fn powf(&self, y: &BigFloat) -> Self {
        if y.is_zero() {
            return Self::one(self.digits);
        }
        (&self.ln() * y).exp()
    }

    /// `(sin x, cos x)`.
    pub fn sin_cos(&self) -> (Self, Self) {
        let digits = self.digits;
        let bits = bits_for(digits);
        let k = (self.to_f64() / std::f64::consts::FRAC_PI_2).round();
        assert!(k.is_finite() && k.abs() < 1e17, "trig argument out of range");
        let k = k as i64;
        let k_bits = 64 - k.unsigned_abs().leading_zeros() as u64;
        let wb = bits + k_bits + 32;
        let work = (wb as f64 / LOG2_10) as u32 + 2;
        let half_pi = pi(work).mul_pow2(-1);
        let r = &self.with_digits(work) - &(&half_pi * &Self::from_int(k, work));
        let rf = r.to_fixed(wb);
        let r2 = mul_shift(&rf, &rf, wb);
        let one = BigInt::one() << wb as usize;
        // sin: r - r^3/3! + ...   cos: 1 - r^2/2! + ...
        let (mut sin, mut cos) = (rf.clone(), one.clone());
        let (mut st, mut ct) = (rf, one);
        let mut n = 1u32;
        loop {
            st = -mul_shift(&st, &r2, wb) / ((2 * n) * (2 * n + 1));
            ct = -mul_shift(&ct, &r2, wb) / ((2 * n - 1) * (2 * n));
            if st.is_zero() && ct.is_zero() {
                break;
            }
            sin += &st;
            cos += &ct;
            n += 1;
        }
        let s = Self::from_fixed(sin, wb, digits);
        let c = Self::from_fixed(cos, wb, digits);
        match k.rem_euclid(4) {
            0 => (s, c),
            1 => (c, -&s),
            2 => (-&s, -&c),
            _ => (-&c, s),
        }
    }

    pub fn cot(&self) -> Self {
        let (s, c) = self.sin_cos();
        &c / &s
    }

    /// Plain decimal notation with exactly `sig` significant digits,
    /// rounded to nearest.
    pub fn to_decimal_string(&self, sig: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1);
        let value = self.to_rational().abs();
        let ten = Rational::from_integer(BigInt::from(10));
        let mut e10 = (self.log2_floor() as f64 / LOG2_10).floor() as i64;
        // fix the estimate so that 10^e10 <= value < 10^(e10+1)
        while crate::arith::rational_pow(&ten, e10 as i32) > value {
            e10 -= 1;
        }
        while crate::arith::rational_pow(&ten, e10 as i32 + 1) <= value {
            e10 += 1;
        }
        let scaled = value * crate::arith::rational_pow(&ten, sig as i32 - 1 - e10 as i32);
        let mut digits_int = (scaled + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
        if digits_int.to_string().len() > sig as usize {
            digits_int /= 10;
            e10 += 1;
        }
        let s = digits_int.to_string();
        let sig = sig as i64;
        let body = if e10 >= sig - 1 {
            format!("{s}{}", "0".repeat((e10 - sig + 1) as usize))
        } else if e10 >= 0 {
            let (int_part, frac) = s.split_at(e10 as usize + 1);
            format!("{int_part}.{frac}")
        } else {
            format!("0.{}{s}", "0".repeat((-e10 - 1) as usize))
        };
        if self.is_negative() {
            format!("-{body}")
        } else {
            body
        }
    }

    fn aligned_cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.mant.sign(), other.mant.sign());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let by_top = self.top().cmp(&other.top());
        if by_top != Ordering::Equal {
            return if sa == Sign::Plus { by_top } else { by_top.reverse() };
        }
        self.aligned_cmp(other)
    }
}

impl Add for &BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &BigFloat) -> BigFloat {
        let digits = self.digits.max(rhs.digits);
        if rhs.is_zero() {
            return self.with_digits(digits);
        }
        if self.is_zero() {
            return rhs.with_digits(digits);
        }
        let bits = bits_for(digits) as i64;
        let (hi, lo) = if self.top() >= rhs.top() { (self, rhs) } else { (rhs, self) };
        if hi.top() - lo.top() > bits + 2 {
            // lo only affects rounding; keep a sticky contribution
            let m = (&hi.mant << (bits + 4) as usize) + lo.mant.signum();
            return BigFloat::from_parts(m, hi.exp - bits - 4, digits);
        }
        let e = self.exp.min(rhs.exp);
        let m = (&self.mant << (self.exp - e) as usize) + (&rhs.mant << (rhs.exp - e) as usize);
        BigFloat::from_parts(m, e, digits)
    }
}

impl Sub for &BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &BigFloat) -> BigFloat {
        self + &(-rhs)
    }
}

impl Mul for &BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &BigFloat) -> BigFloat {
        BigFloat::from_parts(&self.mant * &rhs.mant, self.exp + rhs.exp, self.digits.max(rhs.digits))
    }
}

impl Div for &BigFloat {
    type Output = BigFloat;
    fn div(self, rhs: &BigFloat) -> BigFloat {
        assert!(!rhs.is_zero(), "BigFloat division by zero");
        let digits = self.digits.max(rhs.digits);
        if self.is_zero() {
            return BigFloat::zero(digits);
        }
        let bits = bits_for(digits) as i64;
        let shift = (bits + 2 + bit_len(&rhs.mant) - bit_len(&self.mant)).max(0);
        let (q, r) = (&self.mant << shift as usize).div_rem(&rhs.mant);
        let sticky = if r.is_zero() { BigInt::zero() } else { q.signum() };
        let q = (q << 1u32) + sticky;
        BigFloat::from_parts(q, self.exp - rhs.exp - shift - 1, digits)
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
            digits: self.digits,
        }
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string(self.digits))
    }
}

/// Machin-type constants in fixed point, cached at the widest precision
/// computed so far.
struct ConstCache {
    frac_bits: u64,
    value: BigInt,
}

static PI_CACHE: Mutex<Option<ConstCache>> = Mutex::new(None);
static LN2_CACHE: Mutex<Option<ConstCache>> = Mutex::new(None);

fn cached(cache: &Mutex<Option<ConstCache>>, digits: u32, compute: fn(u64) -> BigInt) -> BigFloat {
    let need = bits_for(digits) + 16;
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if guard.as_ref().is_none_or(|c| c.frac_bits < need) {
        let wb = need.max(256) * 2;
        *guard = Some(ConstCache {
            frac_bits: wb,
            value: compute(wb),
        });
    }
    let c = guard.as_ref().expect("filled above");
    BigFloat::from_fixed(c.value.clone(), c.frac_bits, digits)
}

/// `sum (+-1)^k / ((2k+1) x^(2k+1))` in fixed point with `wb` fraction bits.
fn arctan_inv(x: u64, wb: u64, hyperbolic: bool) -> BigInt {
    let guard = 16;
    let one = BigInt::one() << (wb + guard) as usize;
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = one / x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k % 2 == 1 && !hyperbolic {
            sum -= term;
        } else {
            sum += term;
        }
        power /= &x2;
        k += 1;
    }
    sum >> guard as usize
}

fn compute_pi(wb: u64) -> BigInt {
    arctan_inv(5, wb, false) * 16 - arctan_inv(239, wb, false) * 4
}

fn compute_ln2(wb: u64) -> BigInt {
    arctan_inv(26, wb, true) * 18 - arctan_inv(4801, wb, true) * 2 + arctan_inv(8749, wb, true) * 8
}

pub fn pi(digits: u32) -> BigFloat {
    cached(&PI_CACHE, digits, compute_pi)
}

pub fn ln2(digits: u32) -> BigFloat {
    cached(&LN2_CACHE, digits, compute_ln2)
}
