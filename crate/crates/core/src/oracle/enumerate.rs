//! Lazy enumeration of nondecreasing length vectors by level profile.

use crate::error::{Error, Result};
use crate::lengths::LengthVector;

/// Default depth cap: no full binary tree on `n` leaves is deeper than `n - 1`.
pub fn default_max_len(n: usize) -> u32 {
    n.saturating_sub(1) as u32
}

/// Every nondecreasing `n`-vector with `sum 2^-l_i = 1` and `l_i <= max_len`,
/// each exactly once.
pub fn enumerate_kraft_lengths(n: usize, max_len: u32) -> Result<KraftLengths> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if n > 1 && max_len < 64 && (1u64 << max_len) < n as u64 {
        return Err(Error::InfeasibleMaxLen { n, max_len });
    }
    Ok(KraftLengths::new(n, max_len))
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    open: u64,
    remaining: u64,
    leaves: u64,
}

/// Depth-first walk over leaf counts per depth. Choices are pruned so every
/// partial profile extends to at least one complete tree.
#[derive(Debug, Clone)]
pub struct KraftLengths {
    max_len: u32,
    frames: Vec<Frame>,
    started: bool,
}

impl KraftLengths {
    fn new(n: usize, max_len: u32) -> Self {
        let mut it = Self {
            max_len,
            frames: Vec::new(),
            started: false,
        };
        if let Some(c) = it.first_choice(0, 1, n as u64) {
            it.frames.push(Frame {
                open: 1,
                remaining: n as u64,
                leaves: c,
            });
        }
        it
    }

    fn feasible(&self, depth: u32, open: u64, remaining: u64, c: u64) -> bool {
        if c > open || c > remaining {
            return false;
        }
        let internal = open - c;
        let left = remaining - c;
        if internal == 0 {
            return left == 0;
        }
        if depth >= self.max_len || 2 * internal > left {
            return false;
        }
        let height = self.max_len - depth;
        height >= 64 || internal.saturating_mul(1u64 << height) >= left
    }

    fn first_choice(&self, depth: u32, open: u64, remaining: u64) -> Option<u64> {
        self.choice_from(depth, open, remaining, 0)
    }

    fn choice_from(&self, depth: u32, open: u64, remaining: u64, from: u64) -> Option<u64> {
        (from..=open.min(remaining)).find(|&c| self.feasible(depth, open, remaining, c))
    }

    /// Replaces the deepest choice with the next feasible one, popping
    /// exhausted frames.
    fn advance(&mut self) {
        while let Some(top) = self.frames.pop() {
            let depth = self.frames.len() as u32;
            if let Some(c) = self.choice_from(depth, top.open, top.remaining, top.leaves + 1) {
                self.frames.push(Frame { leaves: c, ..top });
                return;
            }
        }
    }

    /// Extends the current partial profile down to a complete tree.
    fn descend(&mut self) {
        loop {
            let top = *self.frames.last().expect("descend on nonempty stack");
            let internal = top.open - top.leaves;
            if internal == 0 {
                return;
            }
            let depth = self.frames.len() as u32;
            let open = 2 * internal;
            let remaining = top.remaining - top.leaves;
            let c = self
                .first_choice(depth, open, remaining)
                .expect("pruning guarantees a completion");
            self.frames.push(Frame {
                open,
                remaining,
                leaves: c,
            });
        }
    }

    fn current(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (depth, f) in self.frames.iter().enumerate() {
            out.extend(std::iter::repeat_n(depth as u32, f.leaves as usize));
        }
        out
    }
}

impl Iterator for KraftLengths {
    type Item = LengthVector;

    fn next(&mut self) -> Option<LengthVector> {
        if self.started {
            self.advance();
        }
        self.started = true;
        if self.frames.is_empty() {
            return None;
        }
        self.descend();
        Some(LengthVector::new(self.current()))
    }
}

/// Nondecreasing vectors over `1..=max_len` (or `(0)` when `n = 1`) with
/// `sum 2^-l_i <= 1`. Exponential in `n`; meant for small spot checks.
pub fn enumerate_relaxed(n: usize, max_len: u32) -> Result<Vec<LengthVector>> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut out = Vec::new();
    if n == 1 {
        for l in 0..=max_len {
            out.push(LengthVector::new(vec![l]));
        }
        return Ok(out);
    }
    let mut cur = Vec::with_capacity(n);
    relaxed_rec(n, 1, max_len, &mut cur, &mut out);
    if out.is_empty() {
        return Err(Error::InfeasibleMaxLen { n, max_len });
    }
    Ok(out)
}

fn relaxed_rec(n: usize, min: u32, max_len: u32, cur: &mut Vec<u32>, out: &mut Vec<LengthVector>) {
    if cur.len() == n {
        let lv = LengthVector::new(cur.clone());
        if lv.is_valid() {
            out.push(lv);
        }
        return;
    }
    for l in min..=max_len {
        cur.push(l);
        // Prefix already violating Kraft cannot recover.
        if LengthVector::new(cur.clone()).is_valid() {
            relaxed_rec(n, l, max_len, cur, out);
        }
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(n: usize) -> Vec<Vec<u32>> {
        enumerate_kraft_lengths(n, default_max_len(n))
            .unwrap()
            .map(LengthVector::into_inner)
            .collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(all(1), vec![vec![0]]);
        assert_eq!(all(2), vec![vec![1, 1]]);
        assert_eq!(all(3), vec![vec![1, 2, 2]]);
        let mut four = all(4);
        four.sort();
        assert_eq!(four, vec![vec![1, 2, 3, 3], vec![2, 2, 2, 2]]);
    }

    #[test]
    fn counts_match_level_profile_sequence() {
        // Number of binary-tree level profiles with n leaves.
        let expect = [1, 1, 1, 2, 3, 5, 9, 16, 28, 50, 89, 159, 285, 510];
        for (i, &c) in expect.iter().enumerate() {
            let n = i + 1;
            let got = all(n);
            assert_eq!(got.len(), c, "n = {n}");
            for v in &got {
                assert!(v.windows(2).all(|w| w[0] <= w[1]));
                assert!(LengthVector::new(v.clone()).is_complete());
            }
            let mut dedup = got.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), got.len());
        }
    }

    #[test]
    fn depth_cap() {
        let capped: Vec<_> = enumerate_kraft_lengths(4, 2).unwrap().collect();
        assert_eq!(capped.len(), 1);
        assert_eq!(capped[0].lengths(), &[2, 2, 2, 2]);
        assert!(matches!(
            enumerate_kraft_lengths(5, 2),
            Err(Error::InfeasibleMaxLen { n: 5, max_len: 2 })
        ));
        assert!(enumerate_kraft_lengths(0, 3).is_err());
    }

    #[test]
    fn relaxed_contains_tight() {
        let relaxed = enumerate_relaxed(4, 3).unwrap();
        assert!(relaxed.iter().all(|v| v.is_valid()));
        assert_eq!(relaxed.iter().filter(|v| v.is_complete()).count(), 2);
        assert!(relaxed.iter().any(|v| v.lengths() == [2, 2, 3, 3]));
    }
}
