//! Exact exponential-average optimum for one head symbol plus a uniform tail.
//!
//! Tail symbols are interchangeable, so a code is determined by how many
//! tail leaves and whether the head sit at each depth. A level-by-level
//! dynamic program over `(open slots, tail left, head left)` covers every
//! complete code in `O(n^3)` time, far beyond the reach of enumeration.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::objective::QParam;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeadTailOptimum {
    /// Optimal cost `log_q sum p_i q^l_i` over all codes.
    pub cost: f64,
    /// Best cost among codes with `l_1 = 1`.
    pub cost_l1_one: f64,
    /// Best cost among codes with `l_1 >= 2`.
    pub cost_l1_deeper: f64,
}

impl HeadTailOptimum {
    /// Some optimal code has `l_1 = 1`.
    pub fn l1_one_optimal(&self, tol: f64) -> bool {
        self.cost_l1_one <= self.cost + tol
    }

    /// Every code with `l_1 = 1` is worse than the optimum by more than `tol`.
    pub fn l1_one_suboptimal(&self, tol: f64) -> bool {
        self.cost_l1_one > self.cost + tol
    }
}

struct Table {
    head: f64,
    tail: f64,
    q: f64,
    /// `+1` to minimize `sum p q^l` (q > 1), `-1` to maximize it (q < 1).
    sign: f64,
    /// `rows[r][s][a]`, holding `sign * sum` relative to the current depth.
    rows: Vec<[Vec<f64>; 2]>,
}

impl Table {
    fn get(&self, a: usize, r: usize, s: usize) -> f64 {
        self.rows[r][s].get(a).copied().unwrap_or(f64::INFINITY)
    }

    /// Best signed value with `a` open slots, placing `c` tail leaves and
    /// `t` heads at this depth and splitting the rest.
    fn best(&self, a: usize, r: usize, s: usize, allow_head: bool) -> f64 {
        if a == 0 {
            return if r == 0 && s == 0 { 0.0 } else { f64::INFINITY };
        }
        let mut best = f64::INFINITY;
        let t_max = if allow_head { s.min(a) } else { 0 };
        for t in 0..=t_max {
            let c_lo = (2 * a).saturating_sub(t + r + s);
            let c_hi = (a - t).min(r);
            for c in c_lo..=c_hi {
                let rest = a - c - t;
                let (r2, s2) = (r - c, s - t);
                let here = self.sign * (c as f64 * self.tail + t as f64 * self.head);
                let v = if rest == 0 {
                    if r2 == 0 && s2 == 0 {
                        here
                    } else {
                        continue;
                    }
                } else {
                    here + self.q * self.get(2 * rest, r2, s2)
                };
                if v < best {
                    best = v;
                }
            }
        }
        best
    }
}

/// Cap on the tail size; the table is quadratic in memory and cubic in time.
pub const HEAD_TAIL_CAP: usize = 1 << 10;

/// Optimal costs for `p = (head, tail x tail_count)` under base `q`.
pub fn head_tail_optimal(head: f64, tail: f64, tail_count: usize, q: f64) -> Result<HeadTailOptimum> {
    let q = QParam::new(q)?.get();
    if tail_count == 0 {
        return Err(Error::PreconditionUnmet("tail must be nonempty".into()));
    }
    if tail_count > HEAD_TAIL_CAP {
        return Err(Error::AlphabetTooLarge {
            n: tail_count + 1,
            cap: HEAD_TAIL_CAP + 1,
        });
    }
    if !(head > 0.0 && tail > 0.0) {
        return Err(Error::POutOfRange(head.min(tail)));
    }
    let m = tail_count;
    let mut table = Table {
        head,
        tail,
        q,
        sign: if q > 1.0 { 1.0 } else { -1.0 },
        rows: Vec::with_capacity(m + 1),
    };
    for r in 0..=m {
        table.rows.push([Vec::new(), Vec::new()]);
        for s in 0..=1 {
            let width = r + s + 1;
            table.rows[r][s] = vec![f64::INFINITY; width];
            // Descending `a`: placing nothing at this depth reads `2a` in this row.
            for a in (0..width).rev() {
                let v = table.best(a, r, s, true);
                table.rows[r][s][a] = v;
            }
        }
    }
    let to_cost = |signed: f64| (table.sign * signed).log2() / q.log2();
    let global = table.get(1, m, 1);
    let one = table.sign * q * head + q * table.get(1, m, 0);
    let deeper = q * table.best(2, m, 1, false);
    debug_assert!((global - one.min(deeper)).abs() <= 1e-12 * global.abs().max(1.0));
    Ok(HeadTailOptimum {
        cost: to_cost(global),
        cost_l1_one: to_cost(one),
        cost_l1_deeper: to_cost(deeper),
    })
}
