//! Zero-order Bessel function of the first kind.
//!
//! Three branches cover the real line:
//!
//! - `|x| < 8`: ascending power series `sum (-x^2/4)^k / (k!)^2`.
//! - `8 <= |x| < 25`: trapezoidal rule on `J0(x) = (1/2pi) int cos(x sin t) dt`.
//!   The integrand is periodic and entire, so an `n`-point rule is exact up to
//!   `2 J_n(x)`, which is below 1e-30 for `n = 64` on this interval.
//! - `|x| >= 25`: Hankel asymptotic expansion, truncated at the smallest term.
//!
//! Every branch is accurate to a few ulps of 1.0 where it is used, and
//! neighbouring branches agree to better than 1e-13 at both switch points.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use crate::{Error, Result};

/// Switch from the power series to quadrature.
pub const SERIES_LIMIT: f64 = 8.0;
/// Switch from quadrature to the asymptotic expansion.
pub const ASYMPTOTIC_LIMIT: f64 = 25.0;

const QUADRATURE_NODES: usize = 64;

/// `J0(x)` with a domain check.
pub fn bessel_j0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("bessel_j0 argument {x} is not finite")));
    }
    Ok(j0(x))
}

/// `J0(x)` without the domain check; returns NaN for non-finite input.
///
/// This is the form used in the hot loops of the analysis module, where the
/// arguments are products of validated parameters.
pub fn j0(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let x = x.abs();
    if x < SERIES_LIMIT {
        j0_series(x)
    } else if x < ASYMPTOTIC_LIMIT {
        j0_quadrature(x)
    } else {
        j0_asymptotic(x)
    }
}

pub(crate) fn j0_series(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= -y / (k * k);
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
        k += 1.0;
    }
    sum
}

pub(crate) fn j0_quadrature(x: f64) -> f64 {
    // cos(x sin t) is even about t = pi/2 and t = pi, so a quarter period
    // with endpoint weights 1/2 carries the full periodic rule.
    let quarter = QUADRATURE_NODES / 4;
    let step = TAU / QUADRATURE_NODES as f64;
    let mut sum = 0.5 * (1.0 + x.cos());
    for j in 1..quarter {
        sum += (x * (step * j as f64).sin()).cos();
    }
    sum / quarter as f64
}

pub(crate) fn j0_asymptotic(x: f64) -> f64 {
    // Term k of the Hankel series is prod_{i<=k} (-(2i-1)^2) / (k! (8x)^k);
    // even k feed P with alternating sign, odd k feed Q likewise.
    let eight_x = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut k = 1usize;
    loop {
        let odd = (2 * k - 1) as f64;
        let next = term * (-(odd * odd)) / (k as f64 * eight_x);
        if next.abs() >= term.abs() || next.abs() < 1e-18 {
            break;
        }
        term = next;
        // (-1)^{floor(k/2)} sign convention of the P/Q split.
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        k += 1;
    }
    let (s, c) = x.sin_cos();
    // cos(x - pi/4) and sin(x - pi/4) without forming x - pi/4.
    let cos_chi = (c + s) * FRAC_1_SQRT_2;
    let sin_chi = (s - c) * FRAC_1_SQRT_2;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_zero_is_one() {
        assert_eq!(j0(0.0), 1.0);
        assert_eq!(bessel_j0(0.0).unwrap(), 1.0);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(bessel_j0(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(bessel_j0(f64::INFINITY), Err(Error::Domain(_))));
        assert!(j0(f64::NEG_INFINITY).is_nan());
    }

    #[test]
    fn even_function() {
        for x in [0.3, 5.0, 12.5, 40.0, 700.0] {
            assert_eq!(j0(x), j0(-x));
        }
    }

    #[test]
    fn branches_agree_at_switch_points() {
        for x in [SERIES_LIMIT - 1e-9, SERIES_LIMIT, SERIES_LIMIT + 1e-9] {
            let d = (j0_series(x) - j0_quadrature(x)).abs();
            assert!(d < 1e-13, "series/quadrature differ by {d:e} at {x}");
        }
        for x in [ASYMPTOTIC_LIMIT - 1e-9, ASYMPTOTIC_LIMIT, ASYMPTOTIC_LIMIT + 1e-9] {
            let d = (j0_quadrature(x) - j0_asymptotic(x)).abs();
            assert!(d < 1e-13, "quadrature/asymptotic differ by {d:e} at {x}");
        }
    }

    #[test]
    fn quadrature_matches_asymptotic_far_out() {
        // The 64-node rule stays exact a little past its branch; use it as a
        // cross-check for the asymptotic branch on [25, 28].
        for i in 0..100 {
            let x = 25.0 + 0.03 * i as f64;
            let d = (j0_quadrature(x) - j0_asymptotic(x)).abs();
            assert!(d < 1e-13, "{x}: {d:e}");
        }
    }

    #[test]
    fn known_values() {
        // Abramowitz & Stegun table 9.1 / standard references.
        let table = [
            (1.0, 0.765_197_686_557_966_6),
            (2.0, 0.223_890_779_141_235_67),
            (5.0, -0.177_596_771_314_338_3),
            (10.0, -0.245_935_764_451_348_3),
        ];
        for (x, want) in table {
            assert!((j0(x) - want).abs() < 1e-14, "J0({x}) = {}", j0(x));
        }
    }

    #[test]
    fn bounded_by_one_for_positive_arguments() {
        let mut x = 1e-3;
        while x < 2000.0 {
            assert!(j0(x).abs() < 1.0, "{x}");
            x *= 1.01;
        }
    }
}
