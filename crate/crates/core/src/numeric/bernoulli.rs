//! Even-index Bernoulli numbers `B_2, B_4, ...` from tangent numbers.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::Rational;

static CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Tangent numbers `T_1..T_n` (1, 2, 16, 272, ...), integer-only recurrence.
fn tangent_numbers(n: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::from(0); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * (k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * (j - k) + &t[j] * (j - k + 2);
        }
    }
    t
}

fn compute(count: usize) -> Vec<Rational> {
    let t = tangent_numbers(count);
    (1..=count)
        .map(|k| {
            let four_k = BigInt::one() << (2 * k);
            let den = &four_k * (&four_k - 1u32);
            let num = &t[k] * (2 * k);
            let b = Rational::new(num, den);
            if k % 2 == 1 {
                b
            } else {
                -b
            }
        })
        .collect()
}

/// `B_{2k}` for `k >= 1`.
pub fn bernoulli_even(k: usize) -> Rational {
    assert!(k >= 1, "B_0 and odd indices are not tabulated");
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if cache.len() < k {
        let count = k.max(2 * cache.len()).max(32);
        *cache = compute(count);
    }
    cache[k - 1].clone()
}
