//! Codeword length vectors and exact Kraft-sum bookkeeping.

use serde::Serialize;

/// Exact position of `sum(2^-l_i)` relative to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kraft {
    /// Sum equals one: a full binary tree.
    Complete,
    /// Sum below one.
    Incomplete,
    /// Sum above one: no prefix code has these lengths.
    Violated,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LengthVector {
    lengths: Vec<u32>,
    kraft_sum: f64,
    #[serde(skip)]
    kraft: Kraft,
}

impl LengthVector {
    pub fn new(lengths: Vec<u32>) -> Self {
        let kraft = classify(&lengths);
        let kraft_sum = kraft_sum(&lengths);
        Self {
            lengths,
            kraft_sum,
            kraft,
        }
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// `sum(2^-l_i)`; exact up to the final rounding when every length is at most 64.
    pub fn kraft_sum(&self) -> f64 {
        self.kraft_sum
    }

    pub fn kraft(&self) -> Kraft {
        self.kraft
    }

    /// Membership in the set of admissible length vectors (`sum <= 1`).
    pub fn is_valid(&self) -> bool {
        self.kraft != Kraft::Violated
    }

    pub fn is_complete(&self) -> bool {
        self.kraft == Kraft::Complete
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.lengths
    }
}

impl From<Vec<u32>> for LengthVector {
    fn from(lengths: Vec<u32>) -> Self {
        Self::new(lengths)
    }
}

impl From<&[u32]> for LengthVector {
    fn from(lengths: &[u32]) -> Self {
        Self::new(lengths.to_vec())
    }
}

/// Walks the level profile bottom-up: `a_k = c_k + ceil(a_{k+1} / 2)` counts
/// the nodes needed at depth `k`. The sum is at most one iff `a_0 <= 1`, and
/// equals one iff additionally no level below the root leaves a half-used parent.
fn classify(lengths: &[u32]) -> Kraft {
    let Some(&max) = lengths.iter().max() else {
        return Kraft::Incomplete;
    };
    let mut counts = vec![0u64; max as usize + 1];
    for &l in lengths {
        counts[l as usize] += 1;
    }
    let mut needed = 0u64;
    let mut exact = true;
    for depth in (1..=max as usize).rev() {
        needed += counts[depth];
        if needed % 2 == 1 {
            exact = false;
        }
        needed = needed.div_ceil(2);
    }
    needed += counts[0];
    match needed {
        0 => Kraft::Incomplete,
        1 if exact => Kraft::Complete,
        1 => Kraft::Incomplete,
        _ => Kraft::Violated,
    }
}

fn kraft_sum(lengths: &[u32]) -> f64 {
    if lengths.iter().all(|&l| l <= 64) {
        let fixed: u128 = lengths.iter().map(|&l| 1u128 << (64 - l)).sum();
        return fixed as f64 / 2f64.powi(64);
    }
    let mut terms: Vec<f64> = lengths.iter().map(|&l| (-(l as f64)).exp2()).collect();
    terms.sort_by(f64::total_cmp);
    terms.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_incomplete_violated() {
        assert_eq!(LengthVector::new(vec![1, 2, 2]).kraft(), Kraft::Complete);
        assert_eq!(LengthVector::new(vec![1, 2, 3]).kraft(), Kraft::Incomplete);
        assert_eq!(LengthVector::new(vec![1, 1, 2]).kraft(), Kraft::Violated);
        assert_eq!(LengthVector::new(vec![0]).kraft(), Kraft::Complete);
        assert_eq!(LengthVector::new(vec![0, 1]).kraft(), Kraft::Violated);
        assert_eq!(LengthVector::new(vec![1, 6]).kraft(), Kraft::Incomplete);
    }

    #[test]
    fn kraft_sum_is_exact_for_short_lengths() {
        assert_eq!(LengthVector::new(vec![1, 2, 3, 3]).kraft_sum(), 1.0);
        assert_eq!(LengthVector::new(vec![1, 2, 3]).kraft_sum(), 0.875);
        assert_eq!(LengthVector::new(vec![64, 64]).kraft_sum(), 2f64.powi(-63));
    }

    #[test]
    fn deep_unary_tree_is_complete() {
        let n = 300u32;
        let mut lengths: Vec<u32> = (1..n).collect();
        lengths.push(n - 1);
        let lv = LengthVector::new(lengths);
        assert!(lv.is_complete());
        assert!((lv.kraft_sum() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn agrees_with_float_sum_on_small_vectors() {
        // Every nondecreasing vector over {1..5} of length 4.
        for a in 1..=5u32 {
            for b in a..=5 {
                for c in b..=5 {
                    for d in c..=5 {
                        let lv = LengthVector::new(vec![a, b, c, d]);
                        let s: f64 = [a, b, c, d].iter().map(|&l| 0.5f64.powi(l as i32)).sum();
                        let expect = if s > 1.0 {
                            Kraft::Violated
                        } else if s == 1.0 {
                            Kraft::Complete
                        } else {
                            Kraft::Incomplete
                        };
                        assert_eq!(lv.kraft(), expect, "{:?}", [a, b, c, d]);
                        assert_eq!(lv.kraft_sum(), s);
                    }
                }
            }
        }
    }
}
