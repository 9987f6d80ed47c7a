//! Tight bounds on the minimum maximum pointwise redundancy given one
//! probability, and the matching codeword-length guarantees.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::math::ceil_neg_lg;
use crate::report::{BoundKind, BoundReport};

/// `lambda = ceil(-lg p)`, so that `p` lies in `[2^-lambda, 2^(1-lambda))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LambdaJ(u32);

impl LambdaJ {
    pub fn of(p: f64) -> Result<Self> {
        check_prob(p)?;
        Ok(Self(ceil_neg_lg(p)))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

pub(crate) fn check_prob(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::POutOfRange(p))
    }
}

pub(crate) fn check_open_prob(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::POutOfRange(p))
    }
}

/// `1 + lg((1-p)/(1-2^-lambda))`, the j-Shannon bound on the other symbols.
fn shannon_rest(p: f64, lambda: u32) -> f64 {
    1.0 + ((1.0 - p) / (1.0 - 0.5f64.powi(lambda as i32))).log2()
}

/// `lg((1-p)/(1-2^(1-lambda)))`.
fn level_lower(p: f64, lambda: u32) -> f64 {
    ((1.0 - p) / (1.0 - 0.5f64.powi(lambda as i32 - 1))).log2()
}

/// Bounds on the optimal maximum pointwise redundancy of any `Pmf` containing
/// probability `p_j`. The bounds are the same whether or not `p_j` is the
/// largest probability.
///
/// `p_j = 1` means a single symbol, coded with the empty codeword: exactly 0.
pub fn mmpr_bounds(p_j: f64) -> Result<BoundReport> {
    use BoundKind::{Achievable, Approachable};
    check_prob(p_j)?;
    let p = p_j;
    if p == 1.0 {
        return Ok(BoundReport::exact(0.0));
    }
    if p >= 2.0 / 3.0 {
        return Ok(BoundReport::exact(1.0 + p.log2()));
    }
    if p >= 0.5 {
        let upper = shannon_rest(p, 1);
        debug_assert!((upper - (2.0 + (1.0 - p).log2())).abs() < 1e-12);
        return Ok(BoundReport::new(1.0 + p.log2(), Achievable, upper, Approachable));
    }
    let lambda = ceil_neg_lg(p);
    let scale = 2f64.powi(lambda as i32);
    let direct = lambda as f64 + p.log2();
    if p < 1.0 / (scale - 1.0) {
        Ok(BoundReport::new(direct, Achievable, shannon_rest(p, lambda), Approachable))
    } else if p < 2.0 / (scale + 1.0) {
        Ok(BoundReport::new(
            level_lower(p, lambda),
            Achievable,
            shannon_rest(p, lambda),
            Approachable,
        ))
    } else {
        Ok(BoundReport::new(level_lower(p, lambda), Achievable, direct, Achievable))
    }
}

/// Codeword-length guarantees for optimal maximum-pointwise-redundancy codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LengthBounds {
    /// Every optimal code has `l_j <= nu_upper` (smallest `nu` with `p_j >= 2^-nu`).
    pub nu_upper: u32,
    /// Some optimal code has `l_j >= nu_lower` (largest `nu` with `p_j <= 1/(2^nu - 1)`).
    pub nu_lower: u32,
}

pub fn mmpr_length_bounds(p_j: f64) -> Result<LengthBounds> {
    check_open_prob(p_j)?;
    let mut nu_lower = 1;
    while nu_lower < 1023 && p_j <= 1.0 / (2f64.powi(nu_lower as i32 + 1) - 1.0) {
        nu_lower += 1;
    }
    Ok(LengthBounds {
        nu_upper: ceil_neg_lg(p_j),
        nu_lower,
    })
}
