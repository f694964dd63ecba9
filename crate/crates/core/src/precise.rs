//! Fixed-point natural logarithms for resolving ceilings that land close to an integer.
//!
//! Values carry [`FRAC_BITS`] fractional bits (about 77 decimal digits).

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub const FRAC_BITS: u32 = 256;

/// Series terms carry this many guard bits beyond [`FRAC_BITS`].
const GUARD_BITS: u32 = 32;

fn scale(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// `2·atanh(num/den)` at `bits` fractional bits, for `0 ≤ num/den ≤ 1/3`.
fn two_atanh(num: &BigInt, den: &BigInt, bits: u32) -> BigInt {
    let one = scale(bits);
    let z = (&one * num) / den;
    let z2 = (&z * &z) >> bits;
    let mut power = z.clone();
    let mut sum = BigInt::zero();
    let mut j = 1u32;
    while !power.is_zero() {
        sum += &power / BigInt::from(j);
        power = (&power * &z2) >> bits;
        j += 2;
    }
    sum * 2
}

/// `ln(x)` for an integer `x ≥ 1`, scaled by `2^FRAC_BITS`.
pub fn ln_fixed(x: u64) -> BigInt {
    assert!(x >= 1);
    let bits = FRAC_BITS + GUARD_BITS;
    // x = 2^k · y with y in [1, 2); ln y = 2 atanh((y-1)/(y+1)), and (y-1)/(y+1) < 1/3.
    let k = 63 - x.leading_zeros();
    let ln2 = two_atanh(&BigInt::from(1), &BigInt::from(3), bits);
    let mantissa_num = BigInt::from(x) - (BigInt::one() << k);
    let mantissa_den = BigInt::from(x) + (BigInt::one() << k);
    let ln_y = two_atanh(&mantissa_num, &mantissa_den, bits);
    (ln2 * k + ln_y) >> GUARD_BITS
}

/// `⌈√(3 q ln q)⌉`, exact.
///
/// The double-precision estimate is accepted unless the root lies within `1e-9` of an
/// integer; then `k² ≥ 3 q ln q` is decided in fixed point. Equality cannot occur since
/// `ln q` is irrational for `q ≥ 2`.
pub fn ceil_sqrt_three_q_ln_q(q: u64) -> u64 {
    let y = 3.0 * q as f64 * (q as f64).ln();
    let root = y.sqrt();
    if (root - root.round()).abs() > 1e-9 {
        return root.ceil() as u64;
    }
    ceil_sqrt_three_q_ln_q_fixed(q, root.round() as u64)
}

/// Fixed-point resolution of `⌈√(3 q ln q)⌉`, searching outward from `guess`.
pub fn ceil_sqrt_three_q_ln_q_fixed(q: u64, guess: u64) -> u64 {
    let target = ln_fixed(q) * BigInt::from(3 * q);
    let covers = |k: u64| (BigInt::from(k) * BigInt::from(k)) << FRAC_BITS >= target;
    let mut k = guess;
    while k > 0 && covers(k - 1) {
        k -= 1;
    }
    while !covers(k) {
        k += 1;
    }
    k
}

/// `⌈(√q + 1)/2⌉`, exact: the least `m ≥ 1` with `(2m − 1)² ≥ q`.
pub fn ceil_half_sqrt_plus_one(q: u64) -> u64 {
    let mut m = (((q as f64).sqrt() + 1.0) / 2.0).ceil().max(1.0) as u64;
    while m > 1 && (2 * m - 3) * (2 * m - 3) >= q {
        m -= 1;
    }
    while (2 * m - 1) * (2 * m - 1) < q {
        m += 1;
    }
    m
}
