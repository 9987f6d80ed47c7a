//! Validated probability mass functions.

use serde::Serialize;

use crate::error::{Error, Result};

/// Absolute tolerance on `|sum(p) - 1|`.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// A probability mass function with strictly positive entries, summing to one
/// within [`SUM_TOLERANCE`] and sorted nonincreasing. Ties are allowed.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Pmf {
    probs: Vec<f64>,
}

impl Pmf {
    /// Validates `raw` and sorts it into nonincreasing order.
    pub fn new(raw: &[f64]) -> Result<Self> {
        validate_pmf(raw, false)
    }

    /// Divides by the total before validating. Only callers that explicitly
    /// asked for renormalization should use this.
    pub fn normalized(raw: &[f64]) -> Result<Self> {
        check_positive(raw)?;
        let total: f64 = raw.iter().sum();
        let scaled: Vec<f64> = raw.iter().map(|&p| p / total).collect();
        validate_pmf(&scaled, false)
    }

    /// Uniform distribution on `n` symbols.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        Ok(Self {
            probs: vec![1.0 / n as f64; n],
        })
    }

    /// Leading-digit distribution `p_i = log10(i+1) - log10(i)`, `i = 1..=9`.
    pub fn benford() -> Self {
        let probs = (1..=9)
            .map(|i| ((i + 1) as f64).log10() - (i as f64).log10())
            .collect::<Vec<_>>();
        validate_pmf(&probs, true).expect("Benford digits form a valid pmf")
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Probability of the most likely symbol.
    pub fn p1(&self) -> f64 {
        self.probs[0]
    }

    pub fn get(&self, index: usize) -> Result<f64> {
        self.probs.get(index).copied().ok_or(Error::IndexOutOfRange {
            index,
            n: self.len(),
        })
    }

    pub(crate) fn from_sorted_unchecked(probs: Vec<f64>) -> Self {
        debug_assert!(probs.windows(2).all(|w| w[0] >= w[1]));
        Self { probs }
    }
}

fn check_positive(raw: &[f64]) -> Result<()> {
    if raw.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (index, &value) in raw.iter().enumerate() {
        // `!(value > 0)` also rejects NaN.
        if !(value > 0.0) {
            return Err(Error::NonPositiveProbability { index, value });
        }
    }
    Ok(())
}

/// Checks positivity and normalization. With `assume_sorted` the input order
/// is verified instead of sorted.
pub fn validate_pmf(raw: &[f64], assume_sorted: bool) -> Result<Pmf> {
    check_positive(raw)?;
    let sum: f64 = raw.iter().sum();
    if !((sum - 1.0).abs() <= SUM_TOLERANCE) {
        return Err(Error::SumNotOne { sum });
    }
    let mut probs = raw.to_vec();
    if assume_sorted {
        if let Some(i) = probs.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::NotSorted { index: i + 1 });
        }
    } else {
        probs.sort_by(|a, b| b.total_cmp(a));
    }
    Ok(Pmf { probs })
}

/// Indices of `raw` in the order [`validate_pmf`] sorts them (stable on ties).
pub fn sort_permutation(raw: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&a, &b| raw[b].total_cmp(&raw[a]));
    order
}
