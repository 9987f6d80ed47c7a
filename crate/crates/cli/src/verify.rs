//! Witness-family checks and the randomized invariant battery.

use clap::ValueEnum;
use genhuff::bounds::{
    dth_bounds, exp_avg_bounds, exp_avg_bounds_l1, exp_avg_unit_bounds, l1_threshold, mmpr_bounds,
    mmpr_length_bounds,
};
use genhuff::coder::two_queue_mmpr;
use genhuff::math::nearly_equal;
use genhuff::objective::success_probability;
use genhuff::oracle::{brute_force_optimal, head_tail_optimal, Oracle, DEFAULT_CAP, HEAD_TAIL_CAP};
use genhuff::sample::{dirichlet_pmf, seeded_rng};
use genhuff::witness::WitnessFamily;
use genhuff::{optimal_code, BoundReport, Objective, Pmf};
use rand::Rng;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::output::{csv_text, json, sig12, Format, Num};

const TOL: f64 = 1e-9;
/// Largest alphabet for the relaxed (incomplete-code) oracle in the battery.
const RELAXED_CAP: usize = 7;
/// Pmfs longer than this are summarized rather than printed in family reports.
const PRINT_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    MmprUpperHigh,
    MmprUpperMid,
    MmprUpperLow,
    MmprLowerA,
    MmprLowerB,
    LenUpper,
    LenLower,
    L1Boundary,
    L1Counter,
    L1AlwaysOne,
}

impl FamilyName {
    fn label(self) -> &'static str {
        match self {
            FamilyName::MmprUpperHigh => "mmpr-upper-high",
            FamilyName::MmprUpperMid => "mmpr-upper-mid",
            FamilyName::MmprUpperLow => "mmpr-upper-low",
            FamilyName::MmprLowerA => "mmpr-lower-a",
            FamilyName::MmprLowerB => "mmpr-lower-b",
            FamilyName::LenUpper => "len-upper",
            FamilyName::LenLower => "len-lower",
            FamilyName::L1Boundary => "l1-boundary",
            FamilyName::L1Counter => "l1-counter",
            FamilyName::L1AlwaysOne => "l1-always-one",
        }
    }

    fn witness(self, p1: Option<f64>, q: Option<f64>, eps: Option<f64>) -> Result<WitnessFamily> {
        let need = |v: Option<f64>, flag: &str| {
            v.ok_or_else(|| CliError::Usage(format!("--family {} needs {flag}", self.label())))
        };
        Ok(match self {
            FamilyName::MmprUpperHigh => WitnessFamily::MmprUpperHigh { p1: need(p1, "--p1")?, eps },
            FamilyName::MmprUpperMid => WitnessFamily::MmprUpperMid { p1: need(p1, "--p1")?, eps },
            FamilyName::MmprUpperLow => WitnessFamily::MmprUpperLow { p1: need(p1, "--p1")?, eps },
            FamilyName::MmprLowerA => WitnessFamily::MmprLowerA { p1: need(p1, "--p1")? },
            FamilyName::MmprLowerB => WitnessFamily::MmprLowerB { p1: need(p1, "--p1")? },
            FamilyName::LenUpper => WitnessFamily::LenUpperTight { p1: need(p1, "--p1")? },
            FamilyName::LenLower => WitnessFamily::LenLowerTight { p1: need(p1, "--p1")? },
            FamilyName::L1Boundary => WitnessFamily::L1BoundaryQle1 { q: need(q, "--q")?, eps },
            FamilyName::L1Counter => WitnessFamily::L1CounterexampleQgt1 {
                q: need(q, "--q")?,
                p1: need(p1, "--p1")?,
            },
            FamilyName::L1AlwaysOne => WitnessFamily::L1AlwaysOneQlt1 {
                q: need(q, "--q")?,
                p1: need(p1, "--p1")?,
            },
        })
    }
}

#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Debug, Serialize)]
pub struct FamilyReport {
    family: &'static str,
    claim: &'static str,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pmf: Option<Vec<Num>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimum: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gap: Option<Num>,
    checks: Vec<Check>,
    passed: bool,
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.0.push(Check { name, passed, detail });
    }
}

/// Optimal mmpr value, cross-checked against the oracle or the linear-time coder.
fn mmpr_optimum(p: &Pmf, checks: &mut Checks) -> Result<f64> {
    let engine = optimal_code(p, &Objective::MaxPointwise).objective_value;
    if p.len() <= DEFAULT_CAP {
        let oracle = brute_force_optimal(p, &Objective::MaxPointwise)?.min_value;
        checks.push(
            "engine_matches_oracle",
            nearly_equal(engine, oracle, TOL),
            format!("engine {}, oracle {}", sig12(engine), sig12(oracle)),
        );
    } else {
        let other = two_queue_mmpr(p).objective_value;
        checks.push(
            "engine_matches_two_queue",
            nearly_equal(engine, other, TOL),
            format!("heap {}, two-queue {}", sig12(engine), sig12(other)),
        );
    }
    Ok(engine)
}

/// Runs every check that applies to `witness`.
pub fn check_witness(label: &'static str, witness: &WitnessFamily) -> Result<FamilyReport> {
    let p = witness.generate()?;
    let mut checks = Checks(Vec::new());
    let optimum;
    let mut bound = None;
    let mut gap = None;
    let claim;
    match *witness {
        WitnessFamily::MmprUpperHigh { p1, .. }
        | WitnessFamily::MmprUpperMid { p1, .. }
        | WitnessFamily::MmprUpperLow { p1, .. } => {
            let opt = mmpr_optimum(&p, &mut checks)?;
            let b = mmpr_bounds(p1)?;
            if b.upper_kind.is_open() {
                claim = "optimum approaches the upper bound from below";
                checks.push(
                    "below_upper_bound",
                    opt < b.upper,
                    format!("{} < {}", sig12(opt), sig12(b.upper)),
                );
            } else {
                claim = "optimum attains the upper bound";
                checks.push(
                    "attains_upper_bound",
                    (opt - b.upper).abs() <= TOL,
                    format!("{} = {}", sig12(opt), sig12(b.upper)),
                );
            }
            optimum = Some(opt);
            bound = Some(b.upper);
            gap = Some(b.upper - opt);
        }
        WitnessFamily::MmprLowerA { p1 } | WitnessFamily::MmprLowerB { p1 } => {
            claim = "optimum attains the lower bound";
            let opt = mmpr_optimum(&p, &mut checks)?;
            let b = mmpr_bounds(p1)?;
            checks.push(
                "attains_lower_bound",
                (opt - b.lower).abs() <= TOL,
                format!("{} = {}", sig12(opt), sig12(b.lower)),
            );
            optimum = Some(opt);
            bound = Some(b.lower);
            gap = Some(opt - b.lower);
        }
        WitnessFamily::LenUpperTight { p1 } => {
            claim = "some optimal code has l_1 at the length upper bound";
            let nu = mmpr_length_bounds(p1)?.nu_upper;
            let opt = mmpr_optimum(&p, &mut checks)?;
            // The fixed-length code puts every word, l_1 included, at depth nu.
            let fixed = vec![nu; p.len()];
            let fixed_value = Objective::MaxPointwise.evaluate(&p, &fixed)?;
            checks.push(
                "fixed_length_code_is_optimal",
                nearly_equal(fixed_value, opt, TOL),
                format!("all lengths {nu}: {} vs optimum {}", sig12(fixed_value), sig12(opt)),
            );
            if p.len() <= DEFAULT_CAP {
                let res = brute_force_optimal(&p, &Objective::MaxPointwise)?;
                checks.push(
                    "no_optimum_exceeds_bound",
                    res.argmin_set.iter().all(|l| l.lengths()[0] <= nu),
                    format!("{} optimal length vectors, l_1 <= {nu}", res.argmin_set.len()),
                );
            }
            optimum = Some(opt);
            bound = Some(nu as f64);
        }
        WitnessFamily::LenLowerTight { p1 } => {
            claim = "every optimal code has l_1 one below the length lower bound";
            let lambda = witness.lambda().expect("length witnesses carry lambda");
            let opt = mmpr_optimum(&p, &mut checks)?;
            // Any l_1 >= lambda costs at least lambda + lg p1 on symbol 1 alone.
            let floor = lambda as f64 + p1.log2();
            checks.push(
                "longer_first_word_is_worse",
                floor > opt + TOL,
                format!("l_1 >= {lambda} costs >= {} > {}", sig12(floor), sig12(opt)),
            );
            let engine_l1 = optimal_code(&p, &Objective::MaxPointwise).lengths.lengths()[0];
            checks.push(
                "engine_first_length",
                engine_l1 == lambda - 1,
                format!("engine l_1 = {engine_l1}"),
            );
            if p.len() <= DEFAULT_CAP {
                let res = brute_force_optimal(&p, &Objective::MaxPointwise)?;
                checks.push(
                    "all_complete_optima",
                    res.argmin_set.iter().all(|l| l.lengths()[0] == lambda - 1),
                    format!("{} optimal length vectors", res.argmin_set.len()),
                );
                let relaxed = Oracle::new()
                    .relaxed(true)
                    .max_len(lambda + 3)
                    .run(&p, &Objective::MaxPointwise)?;
                checks.push(
                    "all_relaxed_optima",
                    relaxed.argmin_set.iter().all(|l| l.lengths()[0] < lambda),
                    format!("{} optimal prefix codes", relaxed.argmin_set.len()),
                );
            }
            optimum = Some(opt);
            bound = Some(lambda as f64);
        }
        WitnessFamily::L1BoundaryQle1 { q, .. } => {
            claim = "the only optimal code is (2, 2, 2, 2)";
            let obj = if q == 1.0 {
                Objective::AvgRedundancy
            } else {
                Objective::exp_average(q)?
            };
            let res = brute_force_optimal(&p, &obj)?;
            checks.push(
                "unique_optimum",
                res.argmin_set.len() == 1 && res.contains(&[2, 2, 2, 2]),
                format!("optima {:?}", res.argmin_set.iter().map(|l| l.lengths()).collect::<Vec<_>>()),
            );
            let engine = optimal_code(&p, &obj);
            checks.push(
                "engine_agrees",
                engine.lengths.lengths() == [2, 2, 2, 2],
                format!("engine {:?}", engine.lengths.lengths()),
            );
            optimum = Some(res.min_value);
            bound = Some(l1_threshold(q));
        }
        WitnessFamily::L1CounterexampleQgt1 { q, p1 } => {
            claim = "every optimal code has l_1 >= 2";
            let obj = Objective::exp_average(q)?;
            let code = optimal_code(&p, &obj);
            checks.push(
                "engine_first_length",
                code.lengths.lengths()[0] >= 2,
                format!("engine l_1 = {}", code.lengths.lengths()[0]),
            );
            let k = p.len() - 1;
            if k <= HEAD_TAIL_CAP {
                let ht = head_tail_optimal(p1, p.probs()[1], k, q)?;
                checks.push(
                    "one_bit_first_word_is_worse",
                    ht.l1_one_suboptimal(1e-12) && nearly_equal(ht.cost, code.objective_value, TOL),
                    format!(
                        "best with l_1 = 1 {}, optimum {}",
                        sig12(ht.cost_l1_one),
                        sig12(ht.cost)
                    ),
                );
            }
            if p.len() <= DEFAULT_CAP {
                let res = brute_force_optimal(&p, &obj)?;
                checks.push(
                    "all_complete_optima",
                    res.argmin_set.iter().all(|l| l.lengths()[0] >= 2),
                    format!("{} optimal length vectors", res.argmin_set.len()),
                );
            }
            optimum = Some(code.objective_value);
        }
        WitnessFamily::L1AlwaysOneQlt1 { q, p1 } => {
            claim = "some optimal code has l_1 = 1";
            let obj = Objective::exp_average(q)?;
            let code = optimal_code(&p, &obj);
            checks.push(
                "engine_first_length",
                code.lengths.lengths()[0] == 1,
                format!("engine l_1 = {}", code.lengths.lengths()[0]),
            );
            let k = p.len() - 1;
            if k <= HEAD_TAIL_CAP {
                let ht = head_tail_optimal(p1, p.probs()[1], k, q)?;
                checks.push(
                    "one_bit_first_word_is_optimal",
                    ht.l1_one_optimal(1e-12) && nearly_equal(ht.cost, code.objective_value, TOL),
                    format!(
                        "best with l_1 = 1 {}, optimum {}",
                        sig12(ht.cost_l1_one),
                        sig12(ht.cost)
                    ),
                );
            }
            optimum = Some(code.objective_value);
        }
    }
    let checks = checks.0;
    let passed = checks.iter().all(|c| c.passed);
    Ok(FamilyReport {
        family: label,
        claim,
        n: p.len(),
        pmf: (p.len() <= PRINT_CAP).then(|| p.probs().iter().copied().map(Num).collect()),
        optimum: optimum.map(Num),
        bound: bound.map(Num),
        gap: gap.map(Num),
        checks,
        passed,
    })
}

impl FamilyReport {
    fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let rows: Vec<Vec<String>> = self
                    .checks
                    .iter()
                    .map(|c| vec![self.family.into(), c.name.into(), c.passed.to_string(), c.detail.clone()])
                    .collect();
                csv_text(&["family", "check", "passed", "detail"], &rows)
            }
            Format::Plain => {
                let mut s = format!("{}: {} (n = {})\n", self.family, self.claim, self.n);
                if let Some(o) = self.optimum {
                    s.push_str(&format!("  optimum {}\n", sig12(o.0)));
                }
                if let Some(b) = self.bound {
                    s.push_str(&format!("  bound   {}\n", sig12(b.0)));
                }
                if let Some(g) = self.gap {
                    s.push_str(&format!("  gap     {}\n", sig12(g.0)));
                }
                for c in &self.checks {
                    let tag = if c.passed { "ok  " } else { "FAIL" };
                    s.push_str(&format!("  {tag} {}: {}\n", c.name, c.detail));
                }
                s.push_str(if self.passed { "PASS\n" } else { "FAIL\n" });
                Ok(s)
            }
        }
    }
}

pub fn family(
    name: FamilyName,
    p1: Option<f64>,
    q: Option<f64>,
    eps: Option<f64>,
    format: Format,
) -> Result<(String, bool)> {
    let witness = name.witness(p1, q, eps)?;
    let report = check_witness(name.label(), &witness)?;
    Ok((report.render(format)?, report.passed))
}

#[derive(Debug, Serialize)]
struct Failure {
    /// Full precision, so the case can be replayed.
    pmf: Vec<f64>,
    detail: String,
}

#[derive(Debug, Serialize)]
struct CheckSummary {
    name: &'static str,
    cases: usize,
    failures: Vec<Failure>,
}

impl CheckSummary {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, p: &Pmf, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure { pmf: p.probs().to_vec(), detail: detail() });
        }
    }
}

#[derive(Debug, Serialize)]
struct BatteryReport {
    seed: u64,
    n: usize,
    trials: usize,
    passed: bool,
    checks: Vec<CheckSummary>,
}

fn battery_objectives() -> Result<Vec<Objective>> {
    let mut v = vec![Objective::AvgRedundancy, Objective::MaxPointwise];
    for d in [-0.5, 1.0, 4.0] {
        v.push(Objective::dth_exp(d)?);
    }
    for q in [0.4, 0.6, 0.9, 2.0] {
        v.push(Objective::exp_average(q)?);
    }
    Ok(v)
}

fn contains(b: &BoundReport, v: f64) -> bool {
    b.contains(v, TOL)
}

/// Fixed witness parameters covering every family, including range endpoints.
fn witness_cases() -> Vec<(&'static str, WitnessFamily)> {
    use WitnessFamily::*;
    vec![
        ("mmpr-upper-high", MmprUpperHigh { p1: 0.7, eps: None }),
        ("mmpr-upper-high", MmprUpperHigh { p1: 2.0 / 3.0, eps: None }),
        ("mmpr-upper-high", MmprUpperHigh { p1: 0.55, eps: Some(1e-6) }),
        ("mmpr-upper-mid", MmprUpperMid { p1: 0.45, eps: None }),
        ("mmpr-upper-mid", MmprUpperMid { p1: 0.23, eps: None }),
        ("mmpr-upper-low", MmprUpperLow { p1: 0.3, eps: Some(1e-6) }),
        ("mmpr-lower-a", MmprLowerA { p1: 1.0 / 3.0 }),
        ("mmpr-lower-a", MmprLowerA { p1: 0.2 }),
        ("mmpr-lower-b", MmprLowerB { p1: 0.3 }),
        ("mmpr-lower-b", MmprLowerB { p1: 0.13 }),
        ("len-upper", LenUpperTight { p1: 0.3 }),
        ("len-upper", LenUpperTight { p1: 0.2 }),
        ("len-lower", LenLowerTight { p1: 0.4 }),
        ("len-lower", LenLowerTight { p1: 0.2 }),
        ("l1-boundary", L1BoundaryQle1 { q: 0.6, eps: None }),
        ("l1-boundary", L1BoundaryQle1 { q: 1.0, eps: Some(1e-3) }),
        ("l1-counter", L1CounterexampleQgt1 { q: 2.0, p1: 0.5 }),
        ("l1-counter", L1CounterexampleQgt1 { q: 1.5, p1: 0.3 }),
        ("l1-always-one", L1AlwaysOneQlt1 { q: 0.75, p1: 0.3 }),
        ("l1-always-one", L1AlwaysOneQlt1 { q: 0.9, p1: 0.1 }),
    ]
}

pub fn battery(n: usize, trials: usize, seed: u64, format: Format) -> Result<(String, bool)> {
    if !(2..=DEFAULT_CAP).contains(&n) {
        return Err(CliError::Usage(format!("--n must lie in 2..={DEFAULT_CAP}, got {n}")));
    }
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let objectives = battery_objectives()?;
    let mut engine_oracle = CheckSummary::new("engine_oracle");
    let mut mmpr_sandwich = CheckSummary::new("mmpr_sandwich");
    let mut dth_sandwich = CheckSummary::new("dth_sandwich");
    let mut expavg_sandwich = CheckSummary::new("expavg_sandwich");
    let mut length_guarantee = CheckSummary::new("length_guarantee");
    let mut witness_tightness = CheckSummary::new("witness_tightness");

    let mut rng = seeded_rng(seed);
    for _ in 0..trials {
        let size = rng.random_range(2..=n);
        let p = dirichlet_pmf(&mut rng, size)?;
        let mut optima = Vec::with_capacity(objectives.len());
        for obj in &objectives {
            let code = optimal_code(&p, obj);
            let oracle = brute_force_optimal(&p, obj)?;
            let ok = nearly_equal(code.objective_value, oracle.min_value, TOL)
                && code.lengths.is_complete();
            engine_oracle.record(&p, ok, || {
                format!(
                    "{} {:?}: engine {:?} = {}, oracle {}",
                    obj.name(),
                    obj.param(),
                    code.lengths.lengths(),
                    code.objective_value,
                    oracle.min_value
                )
            });
            optima.push((*obj, oracle));
        }
        for (obj, oracle) in &optima {
            let opt = oracle.min_value;
            match *obj {
                Objective::MaxPointwise => {
                    for (j, &pj) in p.probs().iter().enumerate() {
                        let b = mmpr_bounds(pj)?;
                        mmpr_sandwich.record(&p, contains(&b, opt), || {
                            format!("j = {}: {opt} outside {b:?}", j + 1)
                        });
                    }
                    for (j, &pj) in p.probs().iter().enumerate() {
                        let lb = mmpr_length_bounds(pj)?;
                        let ok = oracle.argmin_set.iter().all(|l| l.lengths()[j] <= lb.nu_upper);
                        length_guarantee.record(&p, ok, || {
                            format!("j = {}: an optimum has l_j > {}", j + 1, lb.nu_upper)
                        });
                    }
                    if p.len() <= RELAXED_CAP {
                        let bounds: Vec<_> =
                            p.probs().iter().map(|&x| mmpr_length_bounds(x)).collect::<genhuff::Result<_>>()?;
                        let deepest = bounds.iter().map(|b| b.nu_lower).max().unwrap_or(1);
                        let relaxed = Oracle::new()
                            .relaxed(true)
                            .max_len(deepest.max(p.len() as u32 - 1))
                            .run(&p, obj)?;
                        for (j, lb) in bounds.iter().enumerate() {
                            let ok = relaxed.argmin_set.iter().any(|l| l.lengths()[j] >= lb.nu_lower);
                            length_guarantee.record(&p, ok, || {
                                format!("j = {}: no optimum has l_j >= {}", j + 1, lb.nu_lower)
                            });
                        }
                    }
                }
                Objective::DthExp(d) => {
                    for (j, &pj) in p.probs().iter().enumerate() {
                        let b = dth_bounds(pj, d.get(), j == 0)?;
                        dth_sandwich.record(&p, contains(&b, opt), || {
                            format!("d = {}, j = {}: {opt} outside {b:?}", d.get(), j + 1)
                        });
                    }
                }
                Objective::ExpAverage(q) if q.get() > 0.5 => {
                    let q = q.get();
                    let unit = exp_avg_unit_bounds(&p, q)?;
                    expavg_sandwich.record(&p, contains(&unit, opt), || {
                        format!("q = {q}: {opt} outside unit bounds {unit:?}")
                    });
                    for j in 0..p.len() {
                        let b = exp_avg_bounds(&p, q, j)?;
                        expavg_sandwich.record(&p, contains(&b, opt), || {
                            format!("q = {q}, j = {}: {opt} outside {b:?}", j + 1)
                        });
                    }
                    if q < 1.0 && p.p1() >= l1_threshold(q) {
                        let b = exp_avg_bounds_l1(&p, q)?;
                        let lengths = &oracle.argmin_set[0];
                        let success = success_probability(&p, lengths.lengths(), q)?;
                        let ok = contains(&b.cost, opt)
                            && success > b.success_lower - TOL
                            && success <= b.success_upper + TOL;
                        expavg_sandwich.record(&p, ok, || {
                            format!("q = {q}: one-bit bounds {b:?} miss cost {opt}, success {success}")
                        });
                    }
                }
                _ => {}
            }
        }
    }
    for (label, witness) in witness_cases() {
        let report = check_witness(label, &witness)?;
        let pmf = witness.generate()?;
        witness_tightness.record(&pmf, report.passed, || {
            let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).map(|c| c.detail.as_str()).collect();
            format!("{label}: {}", failed.join("; "))
        });
    }

    let checks = vec![
        engine_oracle,
        mmpr_sandwich,
        dth_sandwich,
        expavg_sandwich,
        length_guarantee,
        witness_tightness,
    ];
    let passed = checks.iter().all(|c| c.failures.is_empty());
    let report = BatteryReport { seed, n, trials, passed, checks };
    let text = match format {
        Format::Json => json(&report)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| vec![c.name.into(), c.cases.to_string(), c.failures.len().to_string()])
                .collect();
            csv_text(&["check", "cases", "failures"], &rows)?
        }
        Format::Plain => {
            let mut s = format!("seed {seed}, n <= {n}, {trials} trials\n");
            for c in &report.checks {
                let tag = if c.failures.is_empty() { "PASS" } else { "FAIL" };
                s.push_str(&format!("{tag} {:<18} {} cases, {} failures\n", c.name, c.cases, c.failures.len()));
                for f in &c.failures {
                    s.push_str(&format!("     {:?}: {}\n", f.pmf, f.detail));
                }
            }
            s
        }
    };
    Ok((text, passed))
}
