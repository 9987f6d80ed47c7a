//! Generalized Huffman merge engine.
//!
//! Priority is `(weight, seq)`. Leaves get `seq` by nondecreasing weight and
//! merged items get fresh, increasing `seq`, so a merged item queues behind
//! every equal-weight item already present.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::Serialize;

use super::canonical::canonical_codewords;
use super::rule::CombineRule;
use crate::lengths::LengthVector;
use crate::math::log2_add_exp2;
use crate::objective::Objective;
use crate::pmf::Pmf;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MergeEvent {
    /// Weight popped first (the lighter of the pair).
    pub weight_a: f64,
    pub weight_b: f64,
    pub weight_out: f64,
    pub node_a: usize,
    pub node_b: usize,
    pub node_out: usize,
}

/// Node ids `0..n` are the leaves in `Pmf` order; merged nodes follow.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MergeTrace {
    pub events: Vec<MergeEvent>,
    pub root_weight: f64,
    /// Weights are `lg w` rather than `w`.
    pub log_domain: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodeResult {
    /// Lengths in `Pmf` (sorted) order.
    pub lengths: LengthVector,
    pub codewords: Vec<String>,
    pub objective_value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<MergeTrace>,
}

pub(crate) trait Weight: Copy {
    fn order(&self, other: &Self) -> Ordering;
    /// Value recorded in the trace.
    fn reported(&self) -> f64;
}

pub(crate) trait Algebra {
    type W: Weight;
    const LOG_DOMAIN: bool;
    fn leaf(&self, p: f64) -> Self::W;
    fn combine(&self, a: Self::W, b: Self::W) -> Self::W;
}

#[derive(Clone, Copy)]
pub(crate) struct Linear(f64);

impl Weight for Linear {
    fn order(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
    fn reported(&self) -> f64 {
        self.0
    }
}

#[derive(Clone, Copy)]
pub(crate) struct Log2(f64);

impl Weight for Log2 {
    fn order(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
    fn reported(&self) -> f64 {
        self.0
    }
}

/// `m * 2^e` with `m` in `[0.5, 1)`. Doubling only bumps `e`, so comparisons
/// stay exact at any depth.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Scaled {
    m: f64,
    e: i64,
}

impl Scaled {
    pub(crate) fn new(x: f64) -> Self {
        let (m, e) = frexp(x);
        Self { m, e }
    }

    pub(crate) fn doubled(self) -> Self {
        Self {
            m: self.m,
            e: self.e + 1,
        }
    }

    pub(crate) fn lg(&self) -> f64 {
        self.e as f64 + self.m.log2()
    }
}

impl Weight for Scaled {
    fn order(&self, other: &Self) -> Ordering {
        self.e.cmp(&other.e).then(self.m.total_cmp(&other.m))
    }
    fn reported(&self) -> f64 {
        self.lg()
    }
}

/// Splits a positive finite `x` into `m * 2^e`, `m` in `[0.5, 1)`.
fn frexp(x: f64) -> (f64, i64) {
    debug_assert!(x > 0.0 && x.is_finite());
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    if biased == 0 {
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, biased - 1022)
}

pub(crate) struct SumAlg;

impl Algebra for SumAlg {
    type W = Linear;
    const LOG_DOMAIN: bool = false;
    fn leaf(&self, p: f64) -> Linear {
        Linear(p)
    }
    fn combine(&self, a: Linear, b: Linear) -> Linear {
        Linear(a.0 + b.0)
    }
}

pub(crate) struct MaxDoubleAlg;

impl Algebra for MaxDoubleAlg {
    type W = Scaled;
    const LOG_DOMAIN: bool = true;
    fn leaf(&self, p: f64) -> Scaled {
        Scaled::new(p)
    }
    fn combine(&self, a: Scaled, b: Scaled) -> Scaled {
        match a.order(&b) {
            Ordering::Less => b.doubled(),
            _ => a.doubled(),
        }
    }
}

pub(crate) struct DthAlg {
    pub d: f64,
}

impl Algebra for DthAlg {
    type W = Log2;
    const LOG_DOMAIN: bool = true;
    fn leaf(&self, p: f64) -> Log2 {
        Log2(p.log2())
    }
    fn combine(&self, a: Log2, b: Log2) -> Log2 {
        let e = 1.0 + self.d;
        Log2((self.d + log2_add_exp2(e * a.0, e * b.0)) / e)
    }
}

/// Kept in the log domain: for `q < 1` linear weights underflow after about
/// a thousand merges along a unary spine.
pub(crate) struct ExpAlg {
    pub lg_q: f64,
}

impl Algebra for ExpAlg {
    type W = Log2;
    const LOG_DOMAIN: bool = true;
    fn leaf(&self, p: f64) -> Log2 {
        Log2(p.log2())
    }
    fn combine(&self, a: Log2, b: Log2) -> Log2 {
        Log2(self.lg_q + log2_add_exp2(a.0, b.0))
    }
}

struct Entry<W> {
    w: W,
    seq: usize,
    id: usize,
}

impl<W: Weight> PartialEq for Entry<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: Weight> Eq for Entry<W> {}

impl<W: Weight> PartialOrd for Entry<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Weight> Ord for Entry<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.w.order(&other.w).then(self.seq.cmp(&other.seq))
    }
}

/// Leaf `i` of a nonincreasing `Pmf` receives `seq = n - 1 - i`.
pub(crate) fn leaf_seq(n: usize, i: usize) -> usize {
    n - 1 - i
}

pub(crate) fn run<A: Algebra>(alg: &A, probs: &[f64]) -> (Vec<u32>, MergeTrace) {
    let n = probs.len();
    let mut heap: BinaryHeap<Reverse<Entry<A::W>>> = probs
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            Reverse(Entry {
                w: alg.leaf(p),
                seq: leaf_seq(n, i),
                id: i,
            })
        })
        .collect();
    let mut parent = vec![usize::MAX; 2 * n - 1];
    let mut events = Vec::with_capacity(n - 1);
    let mut next = n;
    while heap.len() > 1 {
        let Reverse(a) = heap.pop().expect("heap has two items");
        let Reverse(b) = heap.pop().expect("heap has two items");
        let w = alg.combine(a.w, b.w);
        parent[a.id] = next;
        parent[b.id] = next;
        events.push(MergeEvent {
            weight_a: a.w.reported(),
            weight_b: b.w.reported(),
            weight_out: w.reported(),
            node_a: a.id,
            node_b: b.id,
            node_out: next,
        });
        heap.push(Reverse(Entry { w, seq: next, id: next }));
        next += 1;
    }
    let Reverse(root) = heap.pop().expect("nonempty input");
    let trace = MergeTrace {
        events,
        root_weight: root.w.reported(),
        log_domain: A::LOG_DOMAIN,
    };
    (depths_from_parents(&parent, n), trace)
}

/// Merged nodes are created after their children, so one reverse sweep
/// assigns every depth.
pub(crate) fn depths_from_parents(parent: &[usize], n: usize) -> Vec<u32> {
    let total = parent.len();
    let mut depth = vec![0u32; total];
    for id in (0..total.saturating_sub(1)).rev() {
        depth[id] = depth[parent[id]] + 1;
    }
    depth.truncate(n);
    depth
}

pub(crate) fn finish(p: &Pmf, rule: CombineRule, lengths: Vec<u32>, trace: MergeTrace) -> CodeResult {
    let objective: Objective = rule.objective();
    let objective_value = objective.evaluate_raw(p.probs(), &lengths);
    let codewords =
        canonical_codewords(&lengths).expect("engine output is a full binary tree");
    let lengths = LengthVector::new(lengths);
    debug_assert!(lengths.is_complete());
    CodeResult {
        lengths,
        codewords,
        objective_value,
        trace: Some(trace),
    }
}

/// Repeatedly merges the two lightest items with `rule` and reads codeword
/// lengths off the resulting tree.
pub fn generalized_huffman(p: &Pmf, rule: CombineRule) -> CodeResult {
    let probs = p.probs();
    let (lengths, trace) = match rule {
        CombineRule::Sum => run(&SumAlg, probs),
        CombineRule::MaxDouble => run(&MaxDoubleAlg, probs),
        CombineRule::DthExp(d) => run(&DthAlg { d: d.get() }, probs),
        CombineRule::ExpBase(q) => run(&ExpAlg { lg_q: q.get().log2() }, probs),
    };
    finish(p, rule, lengths, trace)
}

/// The engine run with the rule matched to `objective`.
pub fn optimal_code(p: &Pmf, objective: &Objective) -> CodeResult {
    generalized_huffman(p, CombineRule::for_objective(objective))
}
