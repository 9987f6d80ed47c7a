use genhuff::bounds::{
    avg_redundancy_lower, avg_redundancy_upper_gallager, dth_bounds, exp_avg_bounds,
    exp_avg_bounds_l1, exp_avg_unit_bounds, hat_transform, l1_threshold, mmpr_bounds, L1Bounds,
};
use genhuff::objective::{alpha_of_q, renyi_entropy, shannon_entropy, success_probability};
use genhuff::pmf::{sort_permutation, validate_pmf};
use genhuff::{optimal_code, BoundKind, BoundReport, Error, Objective, Pmf};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::output::{csv_text, interval, json, kind_name, sig12, BoundsDoc, Format, Num};
use crate::Figure;

/// Validates `raw` per the flags and returns the sorted source with the
/// permutation from sorted rank to input position.
pub fn load_pmf(raw: &[f64], normalize: bool, assume_sorted: bool) -> Result<(Pmf, Vec<usize>)> {
    if assume_sorted {
        if let Some(i) = raw.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::NotSorted { index: i + 1 }.into());
        }
    }
    let pmf = if normalize {
        Pmf::normalized(raw)?
    } else {
        validate_pmf(raw, assume_sorted)?
    };
    Ok((pmf, sort_permutation(raw)))
}

fn param_label(obj: &Objective) -> String {
    match obj {
        Objective::DthExp(d) => format!(" (d = {})", sig12(d.get())),
        Objective::ExpAverage(q) => format!(" (q = {})", sig12(q.get())),
        _ => String::new(),
    }
}

/// The entropy the objective is measured against; `None` when undefined.
fn relevant_entropy(obj: &Objective, p: &Pmf) -> Option<f64> {
    match obj {
        Objective::ExpAverage(q) => {
            let alpha = alpha_of_q(q.get()).ok()?;
            renyi_entropy(p, alpha).ok()
        }
        _ => Some(shannon_entropy(p)),
    }
}

/// Interval known to contain the optimum for the whole source, keyed on `p_1`.
pub fn objective_bounds(obj: &Objective, p: &Pmf, value: f64) -> Result<BoundReport> {
    if p.len() == 1 {
        return Ok(BoundReport::exact(0.0));
    }
    let p1 = p.p1();
    Ok(match obj {
        Objective::AvgRedundancy => BoundReport::new(
            avg_redundancy_lower(p1)?,
            BoundKind::Achievable,
            avg_redundancy_upper_gallager(p1)?,
            BoundKind::Achievable,
        ),
        Objective::MaxPointwise => mmpr_bounds(p1)?,
        Objective::DthExp(d) => dth_bounds(p1, d.get(), true)?,
        Objective::ExpAverage(q) if q.get() <= 0.5 => BoundReport::exact(value),
        Objective::ExpAverage(q) => exp_avg_bounds(p, q.get(), 0)?,
    })
}

#[derive(Debug, Serialize)]
pub struct CodeReport {
    objective: &'static str,
    param: Option<Num>,
    n: usize,
    lengths: Vec<u32>,
    codewords: Vec<String>,
    value_bits: Num,
    entropy_bits: Option<Num>,
    bounds: BoundsDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    success_probability: Option<Num>,
    #[serde(skip)]
    probabilities: Vec<f64>,
    #[serde(skip)]
    label: String,
    #[serde(skip)]
    report: BoundReport,
}

pub fn code(obj: Objective, raw: &[f64], normalize: bool, assume_sorted: bool) -> Result<CodeReport> {
    let (pmf, perm) = load_pmf(raw, normalize, assume_sorted)?;
    let result = optimal_code(&pmf, &obj);
    let n = pmf.len();
    let mut lengths = vec![0; n];
    let mut codewords = vec![String::new(); n];
    let mut probabilities = vec![0.0; n];
    for (rank, &pos) in perm.iter().enumerate() {
        lengths[pos] = result.lengths.lengths()[rank];
        codewords[pos] = result.codewords[rank].clone();
        probabilities[pos] = pmf.probs()[rank];
    }
    let value = result.objective_value;
    let report = objective_bounds(&obj, &pmf, value)?;
    let success = match obj {
        Objective::ExpAverage(q) if q.get() < 1.0 => {
            Some(success_probability(&pmf, result.lengths.lengths(), q.get())?)
        }
        _ => None,
    };
    Ok(CodeReport {
        objective: obj.name(),
        param: obj.param().map(Num),
        n,
        lengths,
        codewords,
        value_bits: Num(value),
        entropy_bits: relevant_entropy(&obj, &pmf).map(Num),
        bounds: BoundsDoc::from(&report),
        success_probability: success.map(Num),
        probabilities,
        label: format!("{}{}", obj.name(), param_label(&obj)),
        report,
    })
}

impl CodeReport {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let rows: Vec<Vec<String>> = (0..self.n)
                    .map(|i| {
                        vec![
                            (i + 1).to_string(),
                            sig12(self.probabilities[i]),
                            self.lengths[i].to_string(),
                            self.codewords[i].clone(),
                        ]
                    })
                    .collect();
                csv_text(&["symbol", "probability", "length", "codeword"], &rows)
            }
            Format::Plain => {
                let mut s = String::new();
                s.push_str(&format!("objective  {}\n", self.label));
                s.push_str(&format!("symbols    {}\n", self.n));
                s.push_str(&format!("value      {} bits\n", sig12(self.value_bits.0)));
                if let Some(h) = self.entropy_bits {
                    s.push_str(&format!("entropy    {} bits\n", sig12(h.0)));
                }
                if let Some(ps) = self.success_probability {
                    s.push_str(&format!("success    {}\n", sig12(ps.0)));
                }
                s.push_str(&format!("bounds     {}\n", interval(&self.report)));
                s.push_str("\nsymbol  probability         length  codeword\n");
                for i in 0..self.n {
                    s.push_str(&format!(
                        "{:>6}  {:<18}  {:>6}  {}\n",
                        i + 1,
                        sig12(self.probabilities[i]),
                        self.lengths[i],
                        self.codewords[i]
                    ));
                }
                Ok(s)
            }
        }
    }
}

pub struct BoundsQuery<'a> {
    pub objective: Objective,
    pub p: Option<f64>,
    /// 1-based.
    pub j: usize,
    pub raw: Option<&'a [f64]>,
    pub normalize: bool,
    pub assume_sorted: bool,
}

#[derive(Debug, Serialize)]
pub struct OneBitDoc {
    cost: BoundsDoc,
    success_lower: Num,
    success_upper: Num,
}

impl From<&L1Bounds> for OneBitDoc {
    fn from(b: &L1Bounds) -> Self {
        Self {
            cost: BoundsDoc::from(&b.cost),
            success_lower: Num(b.success_lower),
            success_upper: Num(b.success_upper),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BoundsReport {
    objective: &'static str,
    param: Option<Num>,
    p: Num,
    j: usize,
    bounds: BoundsDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    one_bit: Option<OneBitDoc>,
    #[serde(skip)]
    label: String,
    #[serde(skip)]
    report: BoundReport,
    #[serde(skip)]
    one_bit_report: Option<L1Bounds>,
}

pub fn bounds(query: &BoundsQuery) -> Result<BoundsReport> {
    let obj = query.objective;
    if query.j == 0 {
        return Err(CliError::Usage("--j is 1-based".into()));
    }
    let idx = query.j - 1;
    let pmf = match query.raw {
        Some(raw) => Some(load_pmf(raw, query.normalize, query.assume_sorted)?.0),
        None => None,
    };
    let p = match (query.p, &pmf) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give either --p or an input file".into())),
        (Some(p), None) => p,
        (None, Some(pmf)) => pmf.get(idx)?,
        (None, None) => return Err(CliError::Usage("need --p or an input file".into())),
    };
    let mut one_bit = None;
    let report = match obj {
        Objective::AvgRedundancy if p == 1.0 => BoundReport::exact(0.0),
        Objective::AvgRedundancy if idx == 0 => BoundReport::new(
            avg_redundancy_lower(p)?,
            BoundKind::Achievable,
            avg_redundancy_upper_gallager(p)?,
            BoundKind::Achievable,
        ),
        Objective::AvgRedundancy => {
            let mut b = BoundReport::new(
                avg_redundancy_lower(p)?,
                BoundKind::Achievable,
                1.0,
                BoundKind::Approachable,
            );
            b.unit_fallback = true;
            b
        }
        Objective::MaxPointwise => mmpr_bounds(p)?,
        Objective::DthExp(d) => dth_bounds(p, d.get(), idx == 0)?,
        Objective::ExpAverage(q) => {
            let Some(pmf) = &pmf else {
                return Err(CliError::Usage("expavg bounds depend on the whole source; give an input file".into()));
            };
            let q = q.get();
            if idx == 0 && q > 0.5 && q < 1.0 && pmf.len() > 1 && pmf.p1() >= l1_threshold(q) {
                one_bit = Some(exp_avg_bounds_l1(pmf, q)?);
            }
            exp_avg_bounds(pmf, q, idx)?
        }
    };
    Ok(BoundsReport {
        objective: obj.name(),
        param: obj.param().map(Num),
        p: Num(p),
        j: query.j,
        bounds: BoundsDoc::from(&report),
        one_bit: one_bit.as_ref().map(OneBitDoc::from),
        label: format!("{}{}", obj.name(), param_label(&obj)),
        report,
        one_bit_report: one_bit,
    })
}

impl BoundsReport {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let b = &self.report;
                let row = vec![
                    self.objective.to_string(),
                    self.param.map(|x| sig12(x.0)).unwrap_or_default(),
                    sig12(self.p.0),
                    self.j.to_string(),
                    sig12(b.lower),
                    sig12(b.upper),
                    kind_name(b.lower_kind).into(),
                    kind_name(b.upper_kind).into(),
                    b.exact.map(sig12).unwrap_or_default(),
                ];
                csv_text(
                    &["objective", "param", "p", "j", "lower", "upper", "lower_kind", "upper_kind", "exact"],
                    &[row],
                )
            }
            Format::Plain => {
                let mut s = format!(
                    "{} bounds for p_{} = {}: {}{}\n",
                    self.label,
                    self.j,
                    sig12(self.p.0),
                    interval(&self.report),
                    if self.report.unit_fallback { " (unit fallback)" } else { "" }
                );
                if let Some(b) = &self.one_bit_report {
                    s.push_str(&format!(
                        "one-bit cost {}, success ({}, {}]\n",
                        interval(&b.cost),
                        sig12(b.success_lower),
                        sig12(b.success_upper)
                    ));
                }
                Ok(s)
            }
        }
    }
}

/// `k / m` when `step = 1/m` for an integer `m`, else `k * step`; keeps
/// decimal grids on exact decimal points.
fn grid_point(k: usize, step: f64) -> f64 {
    let inv = 1.0 / step;
    if (inv - inv.round()).abs() < 1e-9 {
        k as f64 / inv.round()
    } else {
        k as f64 * step
    }
}

/// Grid over `(0, 1)` plus every power of two at or above `step`.
fn probability_grid(step: f64) -> Vec<f64> {
    let mut ps: Vec<f64> = (1..)
        .map(|k| grid_point(k, step))
        .take_while(|&p| p < 1.0 - 1e-12)
        .collect();
    let mut dyadic = 0.5;
    while dyadic >= step {
        ps.push(dyadic);
        dyadic /= 2.0;
    }
    ps.sort_by(f64::total_cmp);
    ps.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    ps
}

#[derive(Serialize)]
struct SweepRow {
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regime: Option<&'static str>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    bounds: Option<BoundsDoc>,
}

pub fn sweep(figure: Figure, step: f64, d: f64, format: Format) -> Result<String> {
    if !(step > 0.0 && step <= 0.1) {
        return Err(CliError::Usage(format!("--step must lie in (0, 0.1], got {step}")));
    }
    let mut header: Vec<&str> = Vec::new();
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut docs: Vec<SweepRow> = Vec::new();
    match figure {
        Figure::Mmpr | Figure::Dexp => {
            header.extend(["p", "lower", "upper", "lower_kind", "upper_kind"]);
            if figure == Figure::Mmpr {
                header.push("exact");
            }
            for p in probability_grid(step) {
                let b = match figure {
                    Figure::Mmpr => mmpr_bounds(p)?,
                    _ => dth_bounds(p, d, true)?,
                };
                let mut row = vec![
                    sig12(p),
                    sig12(b.lower),
                    sig12(b.upper),
                    kind_name(b.lower_kind).into(),
                    kind_name(b.upper_kind).into(),
                ];
                if figure == Figure::Mmpr {
                    row.push(b.exact.map(sig12).unwrap_or_default());
                }
                rows.push(row);
                docs.push(SweepRow {
                    p: Some(Num(p)),
                    q: None,
                    threshold: None,
                    regime: None,
                    bounds: Some(BoundsDoc::from(&b)),
                });
            }
        }
        Figure::L1region => {
            header.extend(["q", "threshold", "regime"]);
            let steps = (2.0 / step).round() as usize;
            for k in 1..=steps {
                let q = grid_point(k, step);
                if q > 2.0 + 1e-12 {
                    break;
                }
                let regime = if q <= 0.5 {
                    "always_unary"
                } else if q <= 1.0 {
                    "guaranteed_above_threshold"
                } else {
                    "never_guaranteed"
                };
                let t = l1_threshold(q);
                rows.push(vec![sig12(q), sig12(t), regime.into()]);
                docs.push(SweepRow {
                    p: None,
                    q: Some(Num(q)),
                    threshold: Some(Num(t)),
                    regime: Some(regime),
                    bounds: None,
                });
            }
        }
    }
    match format {
        Format::Csv => csv_text(&header, &rows),
        Format::Json => json(&docs),
        Format::Plain => {
            let mut s = header.join("\t");
            s.push('\n');
            for row in rows {
                s.push_str(&row.join("\t"));
                s.push('\n');
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct BenfordBlock {
    q: Num,
    alpha: Num,
    renyi_entropy_bits: Num,
    lengths: Vec<u32>,
    codewords: Vec<String>,
    cost_bits: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    success_probability: Option<Num>,
    unit_bounds: BoundsDoc,
    single_probability_bounds: BoundsDoc,
    p_hat_1: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    one_bit: Option<OneBitDoc>,
}

#[derive(Serialize)]
struct BenfordDoc {
    distribution: Vec<Num>,
    shannon_entropy_bits: Num,
    blocks: Vec<BenfordBlock>,
}

pub fn benford(format: Format) -> Result<String> {
    let p = Pmf::benford();
    let mut blocks = Vec::new();
    let mut text = String::from("leading-digit distribution\n");
    for (i, x) in p.probs().iter().enumerate() {
        text.push_str(&format!("  p_{} = {}\n", i + 1, sig12(*x)));
    }
    text.push_str(&format!("Shannon entropy {} bits\n", sig12(shannon_entropy(&p))));
    for q in [0.6, 2.0] {
        let alpha = alpha_of_q(q)?;
        let h = renyi_entropy(&p, alpha)?;
        let code = optimal_code(&p, &Objective::exp_average(q)?);
        let unit = exp_avg_unit_bounds(&p, q)?;
        let single = exp_avg_bounds(&p, q, 0)?;
        let hat = hat_transform(&p, q)?;
        let success = if q < 1.0 {
            Some(success_probability(&p, code.lengths.lengths(), q)?)
        } else {
            None
        };
        let one_bit = if q < 1.0 { Some(exp_avg_bounds_l1(&p, q)?) } else { None };

        text.push_str(&format!("\nq = {}\n", sig12(q)));
        text.push_str(&format!("  Renyi entropy (alpha = {})  {} bits\n", sig12(alpha), sig12(h)));
        text.push_str(&format!("  optimal lengths              {:?}\n", code.lengths.lengths()));
        text.push_str(&format!("  codewords                    {}\n", code.codewords.join(" ")));
        text.push_str(&format!("  optimal cost                 {} bits\n", sig12(code.objective_value)));
        if let Some(s) = success {
            text.push_str(&format!("  success probability          {}\n", sig12(s)));
        }
        text.push_str(&format!("  unit bounds                  {}\n", interval(&unit)));
        text.push_str(&format!("  transformed p_1              {}\n", sig12(hat.p1())));
        text.push_str(&format!("  single-probability bounds    {}\n", interval(&single)));
        if let Some(b) = &one_bit {
            text.push_str(&format!("  one-bit cost bounds          {}\n", interval(&b.cost)));
            text.push_str(&format!(
                "  one-bit success bounds       ({}, {}]\n",
                sig12(b.success_lower),
                sig12(b.success_upper)
            ));
        }
        blocks.push(BenfordBlock {
            q: Num(q),
            alpha: Num(alpha),
            renyi_entropy_bits: Num(h),
            lengths: code.lengths.lengths().to_vec(),
            codewords: code.codewords.clone(),
            cost_bits: Num(code.objective_value),
            success_probability: success.map(Num),
            unit_bounds: BoundsDoc::from(&unit),
            single_probability_bounds: BoundsDoc::from(&single),
            p_hat_1: Num(hat.p1()),
            one_bit: one_bit.as_ref().map(OneBitDoc::from),
        });
    }
    match format {
        Format::Plain => Ok(text),
        Format::Json => json(&BenfordDoc {
            distribution: p.probs().iter().copied().map(Num).collect(),
            shannon_entropy_bits: Num(shannon_entropy(&p)),
            blocks,
        }),
        Format::Csv => {
            let rows: Vec<Vec<String>> = blocks
                .iter()
                .map(|b| {
                    vec![
                        sig12(b.q.0),
                        sig12(b.renyi_entropy_bits.0),
                        sig12(b.cost_bits.0),
                        b.success_probability.map(|x| sig12(x.0)).unwrap_or_default(),
                        sig12(b.unit_bounds.lower.0),
                        sig12(b.unit_bounds.upper.0),
                        sig12(b.single_probability_bounds.lower.0),
                        sig12(b.single_probability_bounds.upper.0),
                        b.lengths.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "),
                    ]
                })
                .collect();
            csv_text(
                &[
                    "q", "renyi_entropy", "cost", "success", "unit_lower", "unit_upper",
                    "single_lower", "single_upper", "lengths",
                ],
                &rows,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_hits_dyadic_points() {
        let g = probability_grid(0.01);
        assert!(g.contains(&0.25) && g.contains(&0.5) && g.contains(&0.015625));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(*g.last().unwrap(), 0.99);
    }

    #[test]
    fn input_order_is_restored() {
        let r = code(Objective::MaxPointwise, &[0.2, 0.5, 0.3], false, false).unwrap();
        assert_eq!(r.lengths, vec![2, 1, 2]);
        assert_eq!(r.codewords[1], "0");
    }

    #[test]
    fn assume_sorted_rejects_unsorted() {
        assert!(code(Objective::AvgRedundancy, &[0.2, 0.5, 0.3], false, true).is_err());
    }
}
