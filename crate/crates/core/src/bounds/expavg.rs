//! Bounds on optimal exponential-average cost, and when `l_1 = 1` is optimal.

use serde::Serialize;

use super::mmpr::check_prob;
use super::redundancy::dth_bounds;
use crate::error::{Error, Result};
use crate::math::log2_sum_exp2;
use crate::objective::{alpha_of_q, renyi_raw};
use crate::pmf::Pmf;
use crate::report::{BoundKind, BoundReport};

/// `[H_alpha, H_alpha + 1)` with `alpha = 1/(1 + lg q)`.
pub fn exp_avg_unit_bounds(p: &Pmf, q: f64) -> Result<BoundReport> {
    let alpha = alpha_of_q(q)?;
    let h = renyi_raw(p.probs(), alpha);
    Ok(BoundReport::new(h, BoundKind::Achievable, h + 1.0, BoundKind::Approachable))
}

/// `p_i^alpha / sum_k p_k^alpha`, computed in the log domain.
///
/// Under this map, d-th exponential redundancy with `d = lg q` equals
/// exponential-average cost minus `H_alpha`, for every length vector.
pub fn hat_transform(p: &Pmf, q: f64) -> Result<Pmf> {
    let alpha = alpha_of_q(q)?;
    let exps: Vec<f64> = p.probs().iter().map(|&x| alpha * x.log2()).collect();
    let norm = log2_sum_exp2(&exps);
    Ok(Pmf::from_sorted_unchecked(
        exps.iter().map(|&e| (e - norm).exp2()).collect(),
    ))
}

/// Bounds on optimal cost from one transformed probability `p̂_j` (`j` 0-based).
///
/// For `q > 1` the d-th redundancy bounds at `d = lg q` apply to `p̂_j`. For
/// `q` in `(0.5, 1)` only `j = 0` has a sharper upper bound; other `j` fall
/// back to the unit bound and set `unit_fallback`.
pub fn exp_avg_bounds(p: &Pmf, q: f64, j: usize) -> Result<BoundReport> {
    let alpha = alpha_of_q(q)?;
    p.get(j)?;
    let h = renyi_raw(p.probs(), alpha);
    let hat = hat_transform(p, q)?;
    let pj = hat.probs()[j];
    if q > 1.0 {
        return Ok(dth_bounds(pj, q.log2(), j == 0)?.shifted(h));
    }
    if j == 0 {
        return Ok(dth_bounds(pj, q.log2(), true)?.shifted(h));
    }
    let mut unit = exp_avg_unit_bounds(p, q)?;
    unit.unit_fallback = true;
    Ok(unit)
}

/// Cost and success-probability bounds for `q` in `(0.5, 1)` when the most
/// likely symbol is guaranteed a one-bit codeword.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct L1Bounds {
    /// `[1 + log_q(K + p_1), 1 + log_q(qK + p_1))`.
    pub cost: BoundReport,
    /// Success probability lies in `(success_lower, success_upper]`.
    pub success_lower: f64,
    pub success_upper: f64,
}

/// Bounds from coding `p_1` with one bit and the rest as a subtree.
///
/// `K = (sum_{i>=2} p_i^alpha)^(1/alpha)`, which equals
/// `(q^(alpha H_alpha) - p_1^alpha)^(1/alpha)` but avoids the cancellation.
pub fn exp_avg_bounds_l1(p: &Pmf, q: f64) -> Result<L1Bounds> {
    if !(q > 0.5 && q < 1.0) {
        return Err(Error::PreconditionUnmet(format!("q = {q} is not in (0.5, 1)")));
    }
    let p1 = p.p1();
    let threshold = l1_threshold(q);
    if p1 < threshold {
        return Err(Error::PreconditionUnmet(format!(
            "p_1 = {p1} is below 2q/(2q+3) = {threshold}"
        )));
    }
    if p.len() < 2 {
        return Err(Error::PreconditionUnmet("needs at least two symbols".into()));
    }
    let alpha = alpha_of_q(q)?;
    let k = rest_norm(p, alpha);
    let log_q = |x: f64| x.ln() / q.ln();
    let lower = 1.0 + log_q(k + p1);
    let upper = 1.0 + log_q(q * k + p1);
    Ok(L1Bounds {
        cost: BoundReport::new(lower, BoundKind::Achievable, upper, BoundKind::Approachable),
        success_lower: q * (q * k + p1),
        success_upper: q * (k + p1),
    })
}

/// `(sum_{i>=2} p_i^alpha)^(1/alpha)`.
pub(crate) fn rest_norm(p: &Pmf, alpha: f64) -> f64 {
    let exps: Vec<f64> = p.probs()[1..].iter().map(|&x| alpha * x.log2()).collect();
    (log2_sum_exp2(&exps) / alpha).exp2()
}

/// Whether some optimal exponential-average code gives the most likely
/// symbol a one-bit codeword, from `q` and `p_1` alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum L1Region {
    /// `q <= 0.5`: the unary code is optimal for every source.
    AlwaysUnary,
    /// `q` in `(0.5, 1]` and `p_1 >= 2q/(2q+3)`.
    GuaranteedL1,
    NotGuaranteed,
}

/// Smallest `p_1` that guarantees `l_1 = 1`: `0` for `q <= 0.5`,
/// `2q/(2q+3)` on `(0.5, 1]`, and `1` (never attained) for `q > 1`.
pub fn l1_threshold(q: f64) -> f64 {
    if q <= 0.5 {
        0.0
    } else if q <= 1.0 {
        2.0 * q / (2.0 * q + 3.0)
    } else {
        1.0
    }
}

/// A single symbol (`p_1 = 1`) is reported as guaranteed for every `q`.
pub fn l1_region(q: f64, p_1: f64) -> L1Region {
    debug_assert!(q > 0.0 && check_prob(p_1).is_ok());
    if q <= 0.5 {
        L1Region::AlwaysUnary
    } else if p_1 >= 1.0 || (q <= 1.0 && p_1 >= l1_threshold(q)) {
        L1Region::GuaranteedL1
    } else {
        L1Region::NotGuaranteed
    }
}
