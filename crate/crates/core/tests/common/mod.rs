#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Fractional bits of the fixed-point accumulator.
const FRAC_BITS: u32 = 400;

/// `J0(x)` from the power series `sum (-1)^k (x^2/4)^k / (k!)^2`, summed in
/// exact-input fixed point with 400 fractional bits. The largest term for
/// `|x| <= 50` is about `1e20`, so cancellation costs roughly 70 of them.
pub fn j0_bigint(x: f64) -> f64 {
    assert!(x.is_finite());
    let x = x.abs();
    if x == 0.0 {
        return 1.0;
    }
    // x = mant * 2^exp exactly.
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let (mant, exp) = if raw_exp == 0 {
        (bits & ((1 << 52) - 1), -1074)
    } else {
        ((bits & ((1 << 52) - 1)) | (1 << 52), raw_exp - 1075)
    };
    // x^2 / 4 = mant^2 * 2^(2 exp - 2)
    let num = BigInt::from(mant) * BigInt::from(mant);
    let shift = 2 * exp - 2;

    let mut term: BigInt = BigInt::one() << FRAC_BITS;
    let mut sum = term.clone();
    let quarter_sq = (x * x / 4.0).ceil() as u64;
    let mut k: u64 = 1;
    loop {
        term *= &num;
        if shift >= 0 {
            term <<= shift as usize;
        } else {
            term >>= (-shift) as usize;
        }
        term /= BigInt::from(k * k);
        term = -term;
        sum += &term;
        if term.is_zero() || (k > quarter_sq && term.abs() < BigInt::one()) {
            break;
        }
        k += 1;
    }
    // Keep 80 bits of the result before converting.
    let top = &sum >> (FRAC_BITS - 80);
    top.to_f64().unwrap() / 2f64.powi(80)
}

/// Root of a continuous function on `[lo, hi]` by bisection, assuming a sign
/// change.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    assert!(flo * f(hi) <= 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}
