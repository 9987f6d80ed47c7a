//! Average-redundancy bounds given one probability, and the d-th exponential
//! redundancy bounds assembled from them.

use std::f64::consts::LN_2;

use super::mmpr::{check_open_prob, check_prob, mmpr_bounds};
use crate::error::Result;
use crate::math::binary_entropy;
use crate::objective::DParam;
use crate::report::{BoundKind, BoundReport};

/// Tight lower bound on optimal average redundancy given any `p_j`:
/// `xi - (1-p) lg(2^xi - 1) - H(p)` with
/// `xi = ceil(lg((1 - 2^(1/(p-1))) / (1 - 2^(p/(p-1)))))`.
pub fn avg_redundancy_lower(p_j: f64) -> Result<f64> {
    check_open_prob(p_j)?;
    let p = p_j;
    // Dyadic p is coded with zero redundancy; the formula leaves rounding residue.
    if p.log2().fract() == 0.0 {
        return Ok(0.0);
    }
    // 1 - 2^x as -expm1(x ln 2): both terms vanish as p -> 1.
    let num = -(LN_2 / (p - 1.0)).exp_m1();
    let den = -(LN_2 * p / (p - 1.0)).exp_m1();
    let xi = (num / den).log2().ceil().max(1.0);
    let value = xi - (1.0 - p) * (xi.exp2() - 1.0).log2() - binary_entropy(p);
    Ok(value.max(0.0))
}

/// Upper bound on optimal average redundancy given the largest probability:
/// `2 - H(p_1) - p_1` for `p_1 >= 0.5`, else `p_1 + 0.086`.
pub fn avg_redundancy_upper_gallager(p_1: f64) -> Result<f64> {
    check_open_prob(p_1)?;
    if p_1 >= 0.5 {
        Ok(2.0 - binary_entropy(p_1) - p_1)
    } else {
        Ok(p_1 + 0.086)
    }
}

/// Bounds on optimal d-th exponential redundancy given `p_j`.
///
/// For `d > 0`: `[avg lower, mmpr upper]`. For `d < 0`: `[0, mmpr upper]`,
/// tightened by the average-redundancy upper bound when `p_j` is the largest.
pub fn dth_bounds(p_j: f64, d: f64, is_p1: bool) -> Result<BoundReport> {
    let d = DParam::new(d)?.get();
    check_prob(p_j)?;
    if p_j == 1.0 {
        return Ok(BoundReport::exact(0.0));
    }
    let mmpr = mmpr_bounds(p_j)?;
    let (upper, upper_kind) = match mmpr.upper_kind {
        BoundKind::Exact => (mmpr.upper, BoundKind::Achievable),
        kind => (mmpr.upper, kind),
    };
    if d > 0.0 {
        let lower = avg_redundancy_lower(p_j)?;
        return Ok(BoundReport::new(lower, BoundKind::Achievable, upper, upper_kind));
    }
    if is_p1 {
        let gallager = avg_redundancy_upper_gallager(p_j)?;
        if gallager < upper {
            return Ok(BoundReport::new(0.0, BoundKind::Achievable, gallager, BoundKind::Achievable));
        }
    }
    Ok(BoundReport::new(0.0, BoundKind::Achievable, upper, upper_kind))
}
