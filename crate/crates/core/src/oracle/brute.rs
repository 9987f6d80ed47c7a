//! Exhaustive minimization over length vectors.

use serde::Serialize;

use super::enumerate::{default_max_len, enumerate_kraft_lengths, enumerate_relaxed};
use crate::error::{Error, Result};
use crate::lengths::LengthVector;
use crate::math::nearly_equal;
use crate::objective::Objective;
use crate::pmf::Pmf;

pub const DEFAULT_CAP: usize = 12;
/// Relative tolerance for argmin membership.
pub const ARGMIN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub min_value: f64,
    /// Every optimal vector found, sorted lexicographically.
    pub argmin_set: Vec<LengthVector>,
    pub evaluated_count: usize,
}

impl OracleResult {
    pub fn contains(&self, lengths: &[u32]) -> bool {
        self.argmin_set.iter().any(|l| l.lengths() == lengths)
    }
}

/// Configurable exhaustive search.
#[derive(Debug, Clone)]
pub struct Oracle {
    cap: usize,
    max_len: Option<u32>,
    relaxed: bool,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            max_len: None,
            relaxed: false,
        }
    }
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Largest alphabet accepted.
    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// Depth limit; defaults to `n - 1`.
    pub fn max_len(mut self, max_len: u32) -> Self {
        self.max_len = Some(max_len);
        self
    }

    /// Search `sum 2^-l_i <= 1` instead of equality.
    pub fn relaxed(mut self, relaxed: bool) -> Self {
        self.relaxed = relaxed;
        self
    }

    pub fn run(&self, p: &Pmf, obj: &Objective) -> Result<OracleResult> {
        let n = p.len();
        if n > self.cap {
            return Err(Error::AlphabetTooLarge { n, cap: self.cap });
        }
        let max_len = self.max_len.unwrap_or_else(|| default_max_len(n));
        let eval = |l: &LengthVector| obj.evaluate_raw(p.probs(), l.lengths());
        if self.relaxed {
            Ok(minimize(enumerate_relaxed(n, max_len)?, eval))
        } else {
            Ok(minimize(enumerate_kraft_lengths(n, max_len)?, eval))
        }
    }
}

fn minimize<I, F>(candidates: I, eval: F) -> OracleResult
where
    I: IntoIterator<Item = LengthVector>,
    F: Fn(&LengthVector) -> f64,
{
    let scored: Vec<(f64, LengthVector)> = candidates.into_iter().map(|l| (eval(&l), l)).collect();
    let min_value = scored.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let evaluated_count = scored.len();
    let mut argmin_set: Vec<LengthVector> = scored
        .into_iter()
        .filter(|(v, _)| nearly_equal(*v, min_value, ARGMIN_TOL))
        .map(|(_, l)| l)
        .collect();
    argmin_set.sort_by(|a, b| a.lengths().cmp(b.lengths()));
    OracleResult {
        min_value,
        argmin_set,
        evaluated_count,
    }
}

/// Minimum of `obj` over all complete codes on `p`, default settings.
pub fn brute_force_optimal(p: &Pmf, obj: &Objective) -> Result<OracleResult> {
    Oracle::new().run(p, obj)
}

/// Like [`brute_force_optimal`] but over every assignment of each length
/// multiset to symbols, not only the monotone one. Argmin entries are in
/// symbol order and may be nonmonotone.
pub fn brute_force_unrestricted(p: &Pmf, obj: &Objective) -> Result<OracleResult> {
    let n = p.len();
    const CAP: usize = 8;
    if n > CAP {
        return Err(Error::AlphabetTooLarge { n, cap: CAP });
    }
    let mut all = Vec::new();
    for base in enumerate_kraft_lengths(n, default_max_len(n))? {
        let mut perm = base.into_inner();
        loop {
            all.push(LengthVector::new(perm.clone()));
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    Ok(minimize(all, |l| obj.evaluate_raw(p.probs(), l.lengths())))
}

/// Advances to the next lexicographic permutation; `false` after the last.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Textbook formulas with plain `powf` and `log2`, no log-domain shifting.
/// Valid only for moderate lengths and parameters; used to cross-check the
/// core evaluators.
pub fn naive_evaluate(probs: &[f64], lengths: &[u32], obj: &Objective) -> f64 {
    let pairs = probs.iter().zip(lengths).map(|(&p, &l)| (p, l as f64));
    match *obj {
        Objective::AvgRedundancy => pairs.map(|(p, l)| p * l + p * p.log2()).sum(),
        Objective::MaxPointwise => pairs.map(|(p, l)| l + p.log2()).fold(f64::NEG_INFINITY, f64::max),
        Objective::DthExp(d) => {
            let d = d.get();
            let s: f64 = pairs.map(|(p, l)| p.powf(1.0 + d) * 2f64.powf(d * l)).sum();
            s.log2() / d
        }
        Objective::ExpAverage(q) => {
            let q = q.get();
            let s: f64 = pairs.map(|(p, l)| p * q.powf(l)).sum();
            s.ln() / q.ln()
        }
    }
}
