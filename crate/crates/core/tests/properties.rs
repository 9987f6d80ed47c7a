use genhuff::bounds::hat_transform;
use genhuff::coder::{canonical_codewords, generalized_huffman, unary_code};
use genhuff::objective::{
    avg_redundancy, dth_exp_redundancy, exp_average_cost, max_pointwise_redundancy, renyi_entropy,
    success_probability, alpha_of_q,
};
use genhuff::oracle::{enumerate_kraft_lengths, enumerate_relaxed};
use genhuff::{optimal_code, CombineRule, LengthVector, Objective, Pmf};
use proptest::prelude::*;
use proptest::sample::Index;

fn pmf_strategy(max_n: usize) -> impl Strategy<Value = Pmf> {
    prop::collection::vec(1e-4..1.0f64, 1..=max_n).prop_map(|w| Pmf::normalized(&w).unwrap())
}

/// A full binary tree with `n` leaves, grown by splitting chosen leaves.
fn complete_lengths(n: usize, picks: &[Index]) -> Vec<u32> {
    let mut depths = vec![0u32];
    for pick in picks.iter().take(n - 1) {
        let i = pick.index(depths.len());
        depths[i] += 1;
        depths.push(depths[i]);
    }
    depths.sort_unstable();
    depths
}

fn pmf_and_tree(max_n: usize) -> impl Strategy<Value = (Pmf, Vec<u32>)> {
    (pmf_strategy(max_n), prop::collection::vec(any::<Index>(), max_n))
        .prop_map(|(p, picks)| {
            let l = complete_lengths(p.len(), &picks);
            (p, l)
        })
}

fn rule_strategy() -> impl Strategy<Value = CombineRule> {
    prop_oneof![
        Just(CombineRule::Sum),
        Just(CombineRule::MaxDouble),
        (-0.95..20.0f64)
            .prop_filter("d != 0", |d| d.abs() > 1e-3)
            .prop_map(|d| CombineRule::for_objective(&Objective::dth_exp(d).unwrap())),
        (0.05..5.0f64)
            .prop_filter("q != 1", |q| (q - 1.0).abs() > 1e-3)
            .prop_map(|q| CombineRule::for_objective(&Objective::exp_average(q).unwrap())),
    ]
}

fn is_prefix_free(words: &[String]) -> bool {
    words.iter().enumerate().all(|(i, a)| {
        words
            .iter()
            .enumerate()
            .all(|(j, b)| i == j || !b.starts_with(a.as_str()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn lyapunov_chain((p, l) in pmf_and_tree(24), d_lo in 0.05..2.0f64, d_step in 0.0..4.0f64, d_neg in -0.95..-0.05f64) {
        let d_hi = d_lo + d_step;
        let avg = avg_redundancy(&p, &l).unwrap();
        let lo = dth_exp_redundancy(&p, &l, d_lo).unwrap();
        let hi = dth_exp_redundancy(&p, &l, d_hi).unwrap();
        let max = max_pointwise_redundancy(&p, &l).unwrap();
        let neg = dth_exp_redundancy(&p, &l, d_neg).unwrap();
        prop_assert!(avg <= lo + 1e-12);
        prop_assert!(lo <= hi + 1e-12);
        prop_assert!(hi <= max + 1e-12);
        prop_assert!(neg >= -1e-12);
        prop_assert!(neg <= avg + 1e-12);
    }

    #[test]
    fn dth_limits((p, l) in pmf_and_tree(24)) {
        let avg = avg_redundancy(&p, &l).unwrap();
        for d in [1e-6, -1e-6] {
            prop_assert!((dth_exp_redundancy(&p, &l, d).unwrap() - avg).abs() < 1e-4);
        }
        let max = max_pointwise_redundancy(&p, &l).unwrap();
        prop_assert!((dth_exp_redundancy(&p, &l, 1e4).unwrap() - max).abs() < 1e-3);
    }

    #[test]
    fn success_is_power_of_cost((p, l) in pmf_and_tree(24), q in 0.01..0.999f64) {
        let cost = exp_average_cost(&p, &l, q).unwrap();
        let success = success_probability(&p, &l, q).unwrap();
        prop_assert!((q.powf(cost) - success).abs() <= 1e-12 * success.max(1e-300) + 1e-15);
    }

    #[test]
    fn transform_identity((p, l) in pmf_and_tree(24), q in prop_oneof![0.55..0.95f64, 1.05..3.0f64]) {
        let hat = hat_transform(&p, q).unwrap();
        let lhs = dth_exp_redundancy(&hat, &l, q.log2()).unwrap();
        let h = renyi_entropy(&p, alpha_of_q(q).unwrap()).unwrap();
        let rhs = exp_average_cost(&p, &l, q).unwrap() - h;
        prop_assert!((lhs - rhs).abs() <= 1e-9, "{} vs {}", lhs, rhs);
        prop_assert!((hat.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn engine_output_is_complete(p in pmf_strategy(64), rule in rule_strategy()) {
        let code = generalized_huffman(&p, rule);
        prop_assert!(code.lengths.is_complete());
        prop_assert_eq!(code.codewords.len(), p.len());
        prop_assert!(is_prefix_free(&code.codewords));
        let value = rule.objective().evaluate(&p, code.lengths.lengths()).unwrap();
        prop_assert_eq!(value, code.objective_value);
    }

    #[test]
    fn engine_lengths_are_monotone(p in pmf_strategy(64), rule in rule_strategy()) {
        let code = generalized_huffman(&p, rule);
        prop_assert!(code.lengths.lengths().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn expanding_merges_are_nondecreasing(p in pmf_strategy(64), rule in rule_strategy()) {
        prop_assume!(rule.is_expanding());
        let trace = generalized_huffman(&p, rule).trace.unwrap();
        for pair in trace.events.windows(2) {
            prop_assert!(pair[0].weight_a <= pair[1].weight_a);
            prop_assert!(pair[0].weight_b <= pair[1].weight_b);
        }
        for e in &trace.events {
            prop_assert!(e.weight_a <= e.weight_b);
        }
    }

    #[test]
    fn root_weight_encodes_objective(p in pmf_strategy(64), rule in rule_strategy()) {
        prop_assume!(p.len() > 1);
        let code = generalized_huffman(&p, rule);
        let trace = code.trace.unwrap();
        let root = trace.root_weight;
        let v = code.objective_value;
        let derived = match rule {
            CombineRule::Sum => { prop_assert!(!trace.log_domain); prop_assert!((root - 1.0).abs() < 1e-12); return Ok(()); }
            CombineRule::MaxDouble => root,
            CombineRule::DthExp(d) => (1.0 + d.get()) / d.get() * root,
            CombineRule::ExpBase(q) => root / q.get().log2(),
        };
        prop_assert!(trace.log_domain);
        prop_assert!((derived - v).abs() <= 1e-9 * v.abs().max(1.0), "{} vs {}", derived, v);
    }

    #[test]
    fn subtree_weights_dominate_children(p in pmf_strategy(64), rule in rule_strategy()) {
        prop_assume!(rule.is_expanding());
        let trace = generalized_huffman(&p, rule).trace.unwrap();
        for e in &trace.events {
            prop_assert!(e.weight_out >= e.weight_b);
        }
    }

    #[test]
    fn small_base_gives_unary(p in pmf_strategy(64), q in 0.01..0.4999f64) {
        let code = optimal_code(&p, &Objective::exp_average(q).unwrap());
        prop_assert_eq!(code.lengths, unary_code(p.len()));
    }

    #[test]
    fn canonical_codewords_are_prefix_free(raw in prop::collection::vec(1u32..30, 1..40)) {
        let lv = LengthVector::new(raw.clone());
        prop_assume!(lv.is_valid());
        let words = canonical_codewords(&raw).unwrap();
        prop_assert!(is_prefix_free(&words));
        for (w, &l) in words.iter().zip(&raw) {
            prop_assert_eq!(w.len(), l as usize);
        }
    }
}

#[test]
fn canonical_codewords_exhaustive() {
    for n in 1..=10 {
        for lv in enumerate_kraft_lengths(n, n as u32 - 1).unwrap() {
            let mut l = lv.into_inner();
            l.reverse();
            let words = canonical_codewords(&l).unwrap();
            assert!(is_prefix_free(&words), "{l:?}");
            assert!(words.iter().zip(&l).all(|(w, &k)| w.len() == k as usize));
        }
    }
    for n in 1..=6 {
        for lv in enumerate_relaxed(n, 6).unwrap() {
            let words = canonical_codewords(lv.lengths()).unwrap();
            assert!(is_prefix_free(&words), "{:?}", lv.lengths());
        }
    }
}

#[test]
fn canonical_rejects_kraft_violation() {
    assert!(canonical_codewords(&[1, 1, 2]).is_err());
}
