//! Base-2 numerics shared by the evaluators, the engine and the bounds.

use std::f64::consts::LN_2;

/// `lg` of the sum of `2^x` over `exponents`, shifted by the maximum so that
/// exponents in the thousands neither overflow nor underflow.
pub fn log2_sum_exp2(exponents: &[f64]) -> f64 {
    let max = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY || max == f64::INFINITY {
        return max;
    }
    let sum: f64 = exponents.iter().map(|&x| (x - max).exp2()).sum();
    max + sum.log2()
}

/// `lg(2^a + 2^b)`.
pub fn log2_add_exp2(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + ((lo - hi) * LN_2).exp().ln_1p() / LN_2
}

/// Smallest `lambda >= 0` with `p * 2^lambda >= 1`, i.e. `ceil(-lg p)`.
///
/// Doubling a float is exact, so exact powers of two land on the right
/// integer where `(-p.log2()).ceil()` can be off by one.
pub fn ceil_neg_lg(p: f64) -> u32 {
    debug_assert!(p > 0.0, "ceil_neg_lg needs a positive argument");
    let mut x = p;
    let mut lambda = 0;
    while x < 1.0 {
        x *= 2.0;
        lambda += 1;
    }
    lambda
}

/// Binary entropy `H(x) = -x lg x - (1-x) lg(1-x)`, with `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |t: f64| if t <= 0.0 { 0.0 } else { -t * t.log2() };
    term(x) + term(1.0 - x)
}

/// Relative-plus-absolute closeness used by argmin collection and tests.
pub fn nearly_equal(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
