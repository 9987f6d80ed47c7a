//! Acceptance battery: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use genhuff::bounds::{
    exp_avg_bounds, exp_avg_bounds_l1, exp_avg_unit_bounds, hat_transform, mmpr_bounds,
    mmpr_length_bounds,
};
use genhuff::coder::unary_code;
use genhuff::objective::{
    alpha_of_q, avg_redundancy, dth_exp_redundancy, exp_average_cost, max_pointwise_redundancy,
    renyi_entropy, success_probability,
};
use genhuff::oracle::{brute_force_optimal, head_tail_optimal, Oracle};
use genhuff::sample::{dirichlet_pmf, random_complete_lengths, seeded_rng};
use genhuff::witness::WitnessFamily;
use genhuff::{optimal_code, Objective, Pmf};
use rand::Rng;

type Outcome = Result<String, String>;

fn close(name: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(format!("{name} = {got:.6}, expected {want} +/- {tol}"))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let p = Pmf::benford();
    let q = 0.6;
    let code = optimal_code(&p, &Objective::exp_average(q).unwrap());
    let success = success_probability(&p, code.lengths.lengths(), q).unwrap();
    let unit = exp_avg_unit_bounds(&p, q).unwrap();
    let elapsed = start.elapsed();
    ensure(code.lengths.lengths() == [1, 2, 3, 4, 5, 6, 7, 8, 8], || {
        format!("lengths {:?}", code.lengths.lengths())
    })?;
    close("cost", code.objective_value, 2.382, 0.001)?;
    close("success", success, 0.296, 0.001)?;
    close("unit lower", unit.lower, 2.259, 0.001)?;
    close("unit upper", unit.upper, 3.260, 0.001)?;
    ensure(unit.upper_kind.is_open(), || "unit upper must be open".into())?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "Benford q=0.6: lengths {:?}, cost {:.6}, success {:.6}, unit [{:.6}, {:.6}), {elapsed:?}",
        code.lengths.lengths(),
        code.objective_value,
        success,
        unit.lower,
        unit.upper
    ))
}

fn ac2() -> Outcome {
    let p = Pmf::benford();
    let code = optimal_code(&p, &Objective::exp_average(2.0).unwrap());
    let mut sorted = code.lengths.lengths().to_vec();
    sorted.sort_unstable();
    let unit = exp_avg_unit_bounds(&p, 2.0).unwrap();
    ensure(sorted == [2, 3, 3, 3, 3, 4, 4, 4, 4], || format!("lengths {sorted:?}"))?;
    close("cost", code.objective_value, 3.099, 0.001)?;
    close("unit lower", unit.lower, 3.026, 0.001)?;
    close("unit upper", unit.upper, 4.027, 0.001)?;
    Ok(format!(
        "Benford q=2: lengths {:?}, cost {:.6}, unit [{:.6}, {:.6})",
        code.lengths.lengths(),
        code.objective_value,
        unit.lower,
        unit.upper
    ))
}

fn ac3() -> Outcome {
    let p = Pmf::benford();
    let hi = exp_avg_bounds(&p, 2.0, 0).unwrap();
    close("q=2 lower", hi.lower, 3.039, 0.001)?;
    close("q=2 upper", hi.upper, 3.910, 0.001)?;
    let lo = exp_avg_bounds(&p, 0.6, 0).unwrap();
    close("q=0.6 lower", lo.lower, 2.259, 0.001)?;
    close("q=0.6 upper", lo.upper, 2.783, 0.001)?;
    let hat = hat_transform(&p, 0.6).unwrap();
    close("p-hat_1", hat.p1(), 0.8386, 0.0005)?;
    Ok(format!(
        "single-probability bounds on Benford: q=2 [{:.6}, {:.6}], q=0.6 [{:.6}, {:.6}], p-hat_1 {:.6}",
        hi.lower,
        hi.upper,
        lo.lower,
        lo.upper,
        hat.p1()
    ))
}

fn ac4() -> Outcome {
    let p = Pmf::benford();
    let b = exp_avg_bounds_l1(&p, 0.6).map_err(|e| e.to_string())?;
    close("cost lower", b.cost.lower, 2.372, 0.001)?;
    close("cost upper", b.cost.upper, 2.707, 0.001)?;
    close("success lower", b.success_lower, 0.250, 0.001)?;
    close("success upper", b.success_upper, 0.298, 0.001)?;
    let cost = optimal_code(&p, &Objective::exp_average(0.6).unwrap()).objective_value;
    ensure(b.cost.contains(cost, 0.0), || format!("cost {cost} outside {:?}", b.cost))?;
    Ok(format!(
        "one-bit bounds on Benford q=0.6: cost [{:.6}, {:.6}) contains {:.6}, success ({:.6}, {:.6}]",
        b.cost.lower, b.cost.upper, cost, b.success_lower, b.success_upper
    ))
}

fn ac5() -> Outcome {
    let start = Instant::now();
    let mut objectives = vec![Objective::AvgRedundancy, Objective::MaxPointwise];
    objectives.extend([-0.5, 0.5, 2.0].map(|d| Objective::dth_exp(d).unwrap()));
    objectives.extend([0.6, 0.9, 1.5, 2.0].map(|q| Objective::exp_average(q).unwrap()));
    let mut rng = seeded_rng(5);
    let mut worst = 0f64;
    for obj in &objectives {
        for _ in 0..1000 {
            let n = rng.random_range(2..=8);
            let p = dirichlet_pmf(&mut rng, n).unwrap();
            let engine = optimal_code(&p, obj).objective_value;
            let oracle = brute_force_optimal(&p, obj).unwrap().min_value;
            let diff = (engine - oracle).abs();
            worst = worst.max(diff);
            ensure(diff <= 1e-9, || {
                format!("{} {:?}: engine {engine} oracle {oracle}", obj.name(), p.probs())
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "engine = oracle on {} sources, max diff {worst:.1e}, {elapsed:?}",
        1000 * objectives.len()
    ))
}

fn mmpr_oracle(fam: WitnessFamily) -> Result<(f64, f64), String> {
    let p1 = match fam {
        WitnessFamily::MmprUpperHigh { p1, .. }
        | WitnessFamily::MmprUpperMid { p1, .. }
        | WitnessFamily::MmprUpperLow { p1, .. }
        | WitnessFamily::MmprLowerA { p1 }
        | WitnessFamily::MmprLowerB { p1 } => p1,
        _ => unreachable!(),
    };
    let p = fam.generate().map_err(|e| format!("{fam:?}: {e}"))?;
    let opt = brute_force_optimal(&p, &Objective::MaxPointwise)
        .map_err(|e| e.to_string())?
        .min_value;
    Ok((opt, p1))
}

fn ac6() -> Outcome {
    let mut rng = seeded_rng(6);
    for _ in 0..10_000 {
        let n = rng.random_range(2..=8);
        let p = dirichlet_pmf(&mut rng, n).unwrap();
        let opt = brute_force_optimal(&p, &Objective::MaxPointwise).unwrap().min_value;
        for &pj in p.probs() {
            let b = mmpr_bounds(pj).unwrap();
            ensure(b.contains(opt, 1e-9), || {
                format!("{:?} p_j = {pj}: {opt} outside {b:?}", p.probs())
            })?;
        }
    }
    let mut attained = 0;
    let upper_cases = [
        WitnessFamily::MmprUpperHigh { p1: 0.7, eps: Some(0.1) },
        WitnessFamily::MmprUpperHigh { p1: 0.9, eps: None },
        WitnessFamily::MmprUpperMid { p1: 0.45, eps: None },
        WitnessFamily::MmprUpperMid { p1: 0.23, eps: None },
    ];
    for fam in upper_cases {
        let (opt, p1) = mmpr_oracle(fam)?;
        let b = mmpr_bounds(p1).unwrap();
        ensure((opt - b.upper).abs() <= 1e-9, || format!("{fam:?}: {opt} vs upper {}", b.upper))?;
        attained += 1;
    }
    let lower_cases = [
        WitnessFamily::MmprLowerA { p1: 0.4 },
        WitnessFamily::MmprLowerA { p1: 0.2 },
        WitnessFamily::MmprLowerB { p1: 0.6 },
        WitnessFamily::MmprLowerB { p1: 0.3 },
        WitnessFamily::MmprLowerB { p1: 0.13 },
    ];
    for fam in lower_cases {
        let (opt, p1) = mmpr_oracle(fam)?;
        let b = mmpr_bounds(p1).unwrap();
        ensure((opt - b.lower).abs() <= 1e-9, || format!("{fam:?}: {opt} vs lower {}", b.lower))?;
        attained += 1;
    }
    let mut worst_gap = 0f64;
    for p1 in [0.26, 0.3, 0.35, 0.13, 0.2] {
        let (opt, _) = mmpr_oracle(WitnessFamily::MmprUpperLow { p1, eps: Some(1e-5) })?;
        let b = mmpr_bounds(p1).unwrap();
        let gap = b.upper - opt;
        ensure(gap > 0.0 && gap < 0.01, || format!("p1 = {p1}: gap {gap}"))?;
        worst_gap = worst_gap.max(gap);
    }
    Ok(format!(
        "10^4 sources inside bounds; {attained} witnesses attain endpoints; approach gap <= {worst_gap:.2e} at eps=1e-5"
    ))
}

fn ac7() -> Outcome {
    let mut rng = seeded_rng(7);
    let mut optima = 0;
    for _ in 0..1000 {
        let n = rng.random_range(2..=8);
        let p = dirichlet_pmf(&mut rng, n).unwrap();
        let res = brute_force_optimal(&p, &Objective::MaxPointwise).unwrap();
        for l in &res.argmin_set {
            optima += 1;
            for (j, &pj) in p.probs().iter().enumerate() {
                let nu = mmpr_length_bounds(pj).unwrap().nu_upper;
                ensure(l.lengths()[j] <= nu, || {
                    format!("{:?} optimum {:?}: l_{} > {nu}", p.probs(), l.lengths(), j + 1)
                })?;
            }
        }
    }
    let mut witnesses = 0;
    for (nu, p1) in [(2u32, 0.4), (2, 0.45), (3, 0.15), (3, 0.2), (3, 0.24)] {
        let p = WitnessFamily::LenLowerTight { p1 }.generate().map_err(|e| e.to_string())?;
        let obj = Objective::MaxPointwise;
        let res = brute_force_optimal(&p, &obj).unwrap();
        let expect = nu as f64 + (1.0 - p1).log2() - (2f64.powi(nu as i32) - 2.0).log2();
        close("witness optimum", res.min_value, expect, 1e-9)?;
        ensure(res.argmin_set.iter().any(|l| l.lengths()[0] == nu - 1), || {
            format!("p1 = {p1}: no optimum with l_1 = {}", nu - 1)
        })?;
        let relaxed = Oracle::new().relaxed(true).max_len(nu + 4).run(&p, &obj).unwrap();
        ensure(relaxed.argmin_set.iter().all(|l| l.lengths()[0] <= nu - 1), || {
            format!("p1 = {p1}: a code with l_1 > {} is optimal", nu - 1)
        })?;
        // Any l_1 >= nu costs at least nu + lg p1.
        ensure(nu as f64 + p1.log2() > res.min_value, || format!("p1 = {p1}: analytic check"))?;
        witnesses += 1;
    }
    let p = Pmf::new(&[0.99, 0.01]).unwrap();
    let obj = Objective::MaxPointwise;
    let min = Oracle::new().relaxed(true).max_len(12).run(&p, &obj).unwrap().min_value;
    let optimal = |l1: u32, l2: u32| (obj.evaluate(&p, &[l1, l2]).unwrap() - min).abs() <= 1e-12;
    ensure((1..=6).all(|l2| optimal(1, l2)), || "some (1, l_2 <= 6) code is suboptimal".into())?;
    ensure((1..=7).any(|l1| !optimal(l1, 7)), || "every l_2 = 7 code is optimal".into())?;
    let threshold = (1..=12).take_while(|&l2| optimal(1, l2)).last().unwrap();
    Ok(format!(
        "{optima} optima respect l_j <= nu; {witnesses} sharpness witnesses; (0.99, 0.01): every (1, l_2<=6) optimal, (2, 7) suboptimal, with l_1 = 1 optimal up to l_2 = {threshold}"
    ))
}

fn ac8() -> Outcome {
    for q in [0.6, 0.75, 1.0] {
        let p = WitnessFamily::L1BoundaryQle1 { q, eps: Some(1e-3) }
            .generate()
            .map_err(|e| e.to_string())?;
        let obj = if q == 1.0 {
            Objective::AvgRedundancy
        } else {
            Objective::exp_average(q).unwrap()
        };
        let res = brute_force_optimal(&p, &obj).unwrap();
        ensure(res.argmin_set.len() == 1 && res.contains(&[2, 2, 2, 2]), || {
            format!("q = {q}: argmin {:?}", res.argmin_set)
        })?;
    }
    let mut sizes = Vec::new();
    for q in [1.5, 2.0] {
        for p1 in [0.3, 0.5, 0.9] {
            let p = WitnessFamily::L1CounterexampleQgt1 { q, p1 }
                .generate()
                .map_err(|e| e.to_string())?;
            let obj = Objective::exp_average(q).unwrap();
            if p.len() <= 12 {
                let res = brute_force_optimal(&p, &obj).unwrap();
                ensure(res.argmin_set.iter().all(|l| l.lengths()[0] >= 2), || {
                    format!("q = {q}, p1 = {p1}: optimum with l_1 = 1")
                })?;
            }
            let ht = head_tail_optimal(p1, p.probs()[1], p.len() - 1, q).map_err(|e| e.to_string())?;
            ensure(ht.l1_one_suboptimal(1e-12), || format!("q = {q}, p1 = {p1}: {ht:?}"))?;
            sizes.push(p.len());
        }
    }
    let mut rng = seeded_rng(8);
    for trial in 0..100 {
        let q = if trial % 10 == 0 { 0.5 } else { rng.random_range(0.01..0.5) };
        let n = rng.random_range(2..=40);
        let p = dirichlet_pmf(&mut rng, n).unwrap();
        let code = optimal_code(&p, &Objective::exp_average(q).unwrap());
        ensure(code.lengths == unary_code(n), || {
            format!("q = {q} {:?}: lengths {:?}", p.probs(), code.lengths.lengths())
        })?;
    }
    Ok(format!(
        "(2,2,2,2) unique at q in {{0.6, 0.75, 1}}; l_1 >= 2 forced for n = {sizes:?}; unary on 100 sources"
    ))
}

fn ac9() -> Outcome {
    let mut rng = seeded_rng(9);
    let mut min_slack = f64::INFINITY;
    for _ in 0..1000 {
        let n = rng.random_range(1..=32);
        let p = dirichlet_pmf(&mut rng, n).unwrap();
        let l = random_complete_lengths(&mut rng, n);
        let l = l.lengths();
        let avg = avg_redundancy(&p, l).unwrap();
        let half = dth_exp_redundancy(&p, l, 0.5).unwrap();
        let two = dth_exp_redundancy(&p, l, 2.0).unwrap();
        let max = max_pointwise_redundancy(&p, l).unwrap();
        let neg = dth_exp_redundancy(&p, l, -0.5).unwrap();
        let slack = [half - avg, two - half, max - two, neg, avg - neg]
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        min_slack = min_slack.min(slack);
        ensure(slack >= -1e-12, || {
            format!("{:?} {l:?}: {avg} {half} {two} {max} {neg}", p.probs())
        })?;
    }
    Ok(format!("ordering holds on 1000 complete codes, min slack {min_slack:.2e}"))
}

fn ac10() -> Outcome {
    let mut rng = seeded_rng(10);
    let mut worst = 0f64;
    for _ in 0..1000 {
        let n = rng.random_range(1..=32);
        let p = dirichlet_pmf(&mut rng, n).unwrap();
        let l = random_complete_lengths(&mut rng, n);
        let q = if rng.random_bool(0.5) {
            rng.random_range(0.55..=0.95)
        } else {
            rng.random_range(1.05..=3.0)
        };
        let hat = hat_transform(&p, q).unwrap();
        let lhs = dth_exp_redundancy(&hat, l.lengths(), q.log2()).unwrap();
        let h = renyi_entropy(&p, alpha_of_q(q).unwrap()).unwrap();
        let rhs = exp_average_cost(&p, l.lengths(), q).unwrap() - h;
        let diff = (lhs - rhs).abs();
        worst = worst.max(diff);
        ensure(diff <= 1e-9, || format!("q = {q} {:?}: {lhs} vs {rhs}", p.probs()))?;
    }
    Ok(format!("identity holds on 1000 samples, max diff {worst:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
        ("AC10", ac10),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("{name} PASS  {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{name} FAIL  {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
