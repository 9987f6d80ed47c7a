//! Objective selection and evaluation of every entropy and redundancy functional.
//!
//! All evaluators take lengths in the same (sorted) order as the `Pmf`.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::math::log2_sum_exp2;
use crate::pmf::Pmf;

/// Exponent parameter of d-th exponential redundancy, in `(-1, 0) ∪ (0, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DParam(f64);

impl DParam {
    pub fn new(d: f64) -> Result<Self> {
        if d.is_finite() && d > -1.0 && d != 0.0 {
            Ok(Self(d))
        } else {
            Err(Error::DOutOfRange(d))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Base of the exponential-average cost, in `(0, inf) \ {1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct QParam(f64);

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q > 0.0 && q != 1.0 {
            Ok(Self(q))
        } else {
            Err(Error::QOutOfRange(q))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// What a code is optimized for. Every objective is minimized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "param")]
pub enum Objective {
    AvgRedundancy,
    MaxPointwise,
    DthExp(DParam),
    ExpAverage(QParam),
}

impl Objective {
    pub fn dth_exp(d: f64) -> Result<Self> {
        DParam::new(d).map(Objective::DthExp)
    }

    pub fn exp_average(q: f64) -> Result<Self> {
        QParam::new(q).map(Objective::ExpAverage)
    }

    /// Short name used on the command line and in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Objective::AvgRedundancy => "avg",
            Objective::MaxPointwise => "mmpr",
            Objective::DthExp(_) => "dexp",
            Objective::ExpAverage(_) => "expavg",
        }
    }

    pub fn param(&self) -> Option<f64> {
        match self {
            Objective::DthExp(d) => Some(d.get()),
            Objective::ExpAverage(q) => Some(q.get()),
            _ => None,
        }
    }

    pub fn evaluate(&self, p: &Pmf, lengths: &[u32]) -> Result<f64> {
        check_dims(p, lengths)?;
        Ok(self.evaluate_raw(p.probs(), lengths))
    }

    /// Unchecked evaluation over raw slices of equal length.
    pub fn evaluate_raw(&self, probs: &[f64], lengths: &[u32]) -> f64 {
        debug_assert_eq!(probs.len(), lengths.len());
        match *self {
            Objective::AvgRedundancy => avg_raw(probs, lengths),
            Objective::MaxPointwise => max_pointwise_raw(probs, lengths),
            Objective::DthExp(d) => dth_raw(probs, lengths, d.get()),
            Objective::ExpAverage(q) => exp_average_raw(probs, lengths, q.get()),
        }
    }
}

fn check_dims(p: &Pmf, lengths: &[u32]) -> Result<()> {
    if p.len() != lengths.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: lengths.len(),
        });
    }
    Ok(())
}

pub fn shannon_entropy(p: &Pmf) -> f64 {
    -p.probs().iter().map(|&x| x * x.log2()).sum::<f64>()
}

/// Rényi entropy of order `alpha`. The Shannon limit at `alpha = 1` is not
/// taken here; use [`shannon_entropy`].
pub fn renyi_entropy(p: &Pmf, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) || alpha == 1.0 {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    Ok(renyi_raw(p.probs(), alpha))
}

pub(crate) fn renyi_raw(probs: &[f64], alpha: f64) -> f64 {
    let exps: Vec<f64> = probs.iter().map(|&x| alpha * x.log2()).collect();
    log2_sum_exp2(&exps) / (1.0 - alpha)
}

/// `1 / (1 + lg q)`, the Rényi order matched to base `q`. Defined for `q > 0.5`, `q != 1`.
pub fn alpha_of_q(q: f64) -> Result<f64> {
    if !(q > 0.5 && q.is_finite()) || q == 1.0 {
        return Err(Error::QOutOfRange(q));
    }
    Ok(1.0 / (1.0 + q.log2()))
}

pub fn avg_redundancy(p: &Pmf, lengths: &[u32]) -> Result<f64> {
    check_dims(p, lengths)?;
    Ok(avg_raw(p.probs(), lengths))
}

pub fn max_pointwise_redundancy(p: &Pmf, lengths: &[u32]) -> Result<f64> {
    check_dims(p, lengths)?;
    Ok(max_pointwise_raw(p.probs(), lengths))
}

pub fn dth_exp_redundancy(p: &Pmf, lengths: &[u32], d: f64) -> Result<f64> {
    let d = DParam::new(d)?;
    check_dims(p, lengths)?;
    Ok(dth_raw(p.probs(), lengths, d.get()))
}

pub fn exp_average_cost(p: &Pmf, lengths: &[u32], q: f64) -> Result<f64> {
    let q = QParam::new(q)?;
    check_dims(p, lengths)?;
    Ok(exp_average_raw(p.probs(), lengths, q.get()))
}

/// `sum p_i q^l_i`, which equals `q^cost`. Requires `q` in `(0, 1)`.
pub fn success_probability(p: &Pmf, lengths: &[u32], q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::QOutOfRange(q));
    }
    check_dims(p, lengths)?;
    Ok(log2_exp_sum(p.probs(), lengths, q).exp2())
}

fn avg_raw(probs: &[f64], lengths: &[u32]) -> f64 {
    probs
        .iter()
        .zip(lengths)
        .map(|(&p, &l)| p * (l as f64 + p.log2()))
        .sum()
}

fn max_pointwise_raw(probs: &[f64], lengths: &[u32]) -> f64 {
    probs
        .iter()
        .zip(lengths)
        .map(|(&p, &l)| l as f64 + p.log2())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Mass is renormalized by `sum p` so the `1e-9` input tolerance is not
/// amplified by `1/d` as `d -> 0`.
fn dth_raw(probs: &[f64], lengths: &[u32], d: f64) -> f64 {
    let total: f64 = probs.iter().sum();
    let r: Vec<f64> = probs
        .iter()
        .zip(lengths)
        .map(|(&p, &l)| l as f64 + p.log2())
        .collect();
    let spread = r.iter().fold(0.0f64, |m, &x| m.max((d * x).abs()));
    if spread <= 0.5 {
        // Small exponents: lg(1 + s) with s formed from expm1 keeps full
        // relative precision where the log-sum-exp path would cancel.
        let s: f64 = probs
            .iter()
            .zip(&r)
            .map(|(&p, &x)| p * (d * x * LN_2).exp_m1())
            .sum::<f64>()
            / total;
        s.ln_1p() / (d * LN_2)
    } else {
        let exps: Vec<f64> = probs
            .iter()
            .zip(&r)
            .map(|(&p, &x)| p.log2() + d * x)
            .collect();
        (log2_sum_exp2(&exps) - total.log2()) / d
    }
}

fn log2_exp_sum(probs: &[f64], lengths: &[u32], q: f64) -> f64 {
    let lq = q.log2();
    let exps: Vec<f64> = probs
        .iter()
        .zip(lengths)
        .map(|(&p, &l)| p.log2() + l as f64 * lq)
        .collect();
    log2_sum_exp2(&exps)
}

fn exp_average_raw(probs: &[f64], lengths: &[u32], q: f64) -> f64 {
    log2_exp_sum(probs, lengths, q) / q.log2()
}
