use std::cmp::Ordering;
use std::collections::VecDeque;

use super::engine::{depths_from_parents, finish, leaf_seq, MergeEvent, MergeTrace, Scaled, Weight};
use super::rule::CombineRule;
use super::CodeResult;
use crate::pmf::Pmf;

/// Linear-time maximum-pointwise-redundancy coding for an already sorted `Pmf`.
///
/// Leaves are consumed from the light end; merged items are created in
/// nondecreasing weight order, so a second FIFO stays sorted and the
/// lighter front of the two queues is always the global minimum. Ties are
/// resolved by the same `(weight, seq)` key as the heap engine, so both
/// produce identical lengths.
pub fn two_queue_mmpr(p: &Pmf) -> CodeResult {
    let probs = p.probs();
    let n = probs.len();
    let mut leaves: VecDeque<(Scaled, usize, usize)> = (0..n)
        .rev()
        .map(|i| (Scaled::new(probs[i]), leaf_seq(n, i), i))
        .collect();
    let mut merged: VecDeque<(Scaled, usize, usize)> = VecDeque::with_capacity(n);
    let mut parent = vec![usize::MAX; 2 * n - 1];
    let mut events = Vec::with_capacity(n - 1);

    let key = |a: &(Scaled, usize, usize), b: &(Scaled, usize, usize)| {
        a.0.order(&b.0).then(a.1.cmp(&b.1))
    };
    let pop = |leaves: &mut VecDeque<_>, merged: &mut VecDeque<_>| {
        match (leaves.front(), merged.front()) {
            (Some(l), Some(m)) if key(l, m) == Ordering::Greater => merged.pop_front(),
            (Some(_), _) => leaves.pop_front(),
            (None, _) => merged.pop_front(),
        }
        .expect("two items remain")
    };

    for next in n..2 * n - 1 {
        let a = pop(&mut leaves, &mut merged);
        let b = pop(&mut leaves, &mut merged);
        let w = if a.0.order(&b.0) == Ordering::Less { b.0 } else { a.0 }.doubled();
        parent[a.2] = next;
        parent[b.2] = next;
        events.push(MergeEvent {
            weight_a: a.0.lg(),
            weight_b: b.0.lg(),
            weight_out: w.lg(),
            node_a: a.2,
            node_b: b.2,
            node_out: next,
        });
        merged.push_back((w, next, next));
    }
    let root = merged.pop_back().or_else(|| leaves.pop_back()).expect("nonempty");
    let trace = MergeTrace {
        events,
        root_weight: root.0.lg(),
        log_domain: true,
    };
    finish(p, CombineRule::MaxDouble, depths_from_parents(&parent, n), trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coder::generalized_huffman;

    #[test]
    fn three_symbol_example() {
        let p = Pmf::new(&[0.5, 0.3, 0.2]).unwrap();
        let r = two_queue_mmpr(&p);
        assert_eq!(r.lengths.lengths(), &[1, 2, 2]);
        assert!((r.trace.unwrap().root_weight - 1.2f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn uniform_six_matches_heap() {
        let p = Pmf::uniform(6).unwrap();
        let a = two_queue_mmpr(&p);
        let b = generalized_huffman(&p, CombineRule::MaxDouble);
        assert_eq!(a.lengths, b.lengths);
        assert_eq!(a.lengths.lengths(), &[2, 2, 3, 3, 3, 3]);
    }

    #[test]
    fn single_symbol() {
        let p = Pmf::new(&[1.0]).unwrap();
        assert_eq!(two_queue_mmpr(&p).lengths.lengths(), &[0]);
    }
}
