//! Extremal distributions that show the bounds and length guarantees are sharp.
//!
//! `eps = None` picks `min(1e-4, half the admissible range)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::math::ceil_neg_lg;
use crate::pmf::{validate_pmf, Pmf};

/// Largest alphabet a generator will build.
pub const WITNESS_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum WitnessFamily {
    /// `(p1, 1-p1-eps, eps)`, `p1` in `[0.5, 1)`, `eps` in `(0, (1-p1)/2]`.
    /// Attains the mmpr upper bound above `2/3`, approaches it below.
    MmprUpperHigh { p1: f64, eps: Option<f64> },
    /// `(p1, (1-p1-eps)/(2^l-2) x (2^l-2), eps)`, `p1` in `[2/(2^l+1), 2^(1-l))`.
    /// Attains `l + lg p1`.
    MmprUpperMid { p1: f64, eps: Option<f64> },
    /// `(p1, (1-p1-eps)/(2^l-1) x (2^l-1), eps)`, `p1` in `[2^-l, 2/(2^l+1))`.
    /// Approaches `1 + lg((1-p1)/(1-2^-l))` as `eps -> 0`.
    MmprUpperLow { p1: f64, eps: Option<f64> },
    /// `(p1, (1-p1)/(2^l-2) x (2^l-2))`, `p1` in `[1/(2^l-1), 2^(1-l))`.
    /// Attains the lower bound `lg((1-p1)/(1-2^(1-l)))`.
    MmprLowerA { p1: f64 },
    /// `(p1, 2^-l x (2^l-2), 2^(1-l)-p1)`, `p1` in `[2^-l, 1/(2^l-1))`.
    /// Attains the lower bound `l + lg p1` with a fixed-length code.
    MmprLowerB { p1: f64 },
    /// `(p1, 2^(-nu-1) x (n-2), 2^-nu - p1)`, `n = 2^(nu+1)`, `p1` in
    /// `(2^(-nu-1), 2^-nu)`. Forces `l_1 = nu + 1`.
    LenUpperTight { p1: f64 },
    /// `(p1, (1-p1)/(2^nu-2) x (2^nu-2))`, `p1` in `(1/(2^nu-1), 2^(1-nu))`,
    /// `nu >= 2`. Optimal only with `l_1 = nu - 1`.
    LenLowerTight { p1: f64 },
    /// `(2q/(2q+3) - 3 eps, (1/(2q+3) + eps) x 3)`, `q` in `(0.5, 1]`,
    /// `eps` in `(0, (2q-1)/(8q+12))`. Optimal only with `(2,2,2,2)`.
    L1BoundaryQle1 { q: f64, eps: Option<f64> },
    /// `p1` then `2^(2+m)` equal tails, `m = floor(log_q(4 p1/(1-p1)))`,
    /// `q > 1`, `p1` in `(0.2, 1)`. Every optimal code has `l_1 >= 2`.
    L1CounterexampleQgt1 { q: f64, p1: f64 },
    /// `p1` then `2^(1+g)` equal tails, `q` in `(0.5, 1)`, `p1` in `(0, 1)`,
    /// `g = max(floor(log_q(2q p1/(1-p1))), floor(lg((1-2p1)/p1)), 0)`.
    /// Some optimal code has `l_1 = 1`.
    L1AlwaysOneQlt1 { q: f64, p1: f64 },
}

fn out_of_range(msg: String) -> Error {
    Error::ParamsOutOfProofRange(msg)
}

fn pow2(k: u32) -> f64 {
    2f64.powi(k as i32)
}

/// Explicit `eps` must lie in `(0, hi)` (or `(0, hi]` when `closed`).
fn pick_eps(eps: Option<f64>, hi: f64, closed: bool) -> Result<f64> {
    match eps {
        None => Ok((hi / 2.0).min(1e-4)),
        Some(e) if e > 0.0 && (e < hi || (closed && e == hi)) => Ok(e),
        Some(e) => Err(out_of_range(format!("eps = {e} outside (0, {hi})"))),
    }
}

fn tail_count(count: f64) -> Result<usize> {
    if count + 1.0 > WITNESS_CAP as f64 {
        return Err(Error::AlphabetTooLarge {
            n: if count.is_finite() { count as usize + 1 } else { usize::MAX },
            cap: WITNESS_CAP,
        });
    }
    Ok(count as usize)
}

/// Snaps `x` down to `above` when rounding alone puts it over a tie.
fn snap(x: f64, above: f64) -> f64 {
    if x > above && x <= above * (1.0 + 1e-12) {
        above
    } else {
        x
    }
}

fn assemble(head: f64, tail: f64, count: usize, last: Option<f64>) -> Result<Pmf> {
    let tail = snap(tail, head);
    let last = last.map(|x| snap(x, if count > 0 { tail } else { head }));
    let mut raw = Vec::with_capacity(count + 2);
    raw.push(head);
    raw.extend(std::iter::repeat_n(tail, count));
    raw.extend(last);
    validate_pmf(&raw, true).map_err(|e| out_of_range(format!("construction is not a valid pmf: {e}")))
}

fn lambda_in(p1: f64, min_lambda: u32) -> Result<u32> {
    if !(p1 > 0.0 && p1 < 1.0) {
        return Err(out_of_range(format!("p1 = {p1} outside (0, 1)")));
    }
    let lambda = ceil_neg_lg(p1);
    if lambda < min_lambda {
        return Err(out_of_range(format!("p1 = {p1} needs ceil(-lg p1) >= {min_lambda}")));
    }
    if lambda > 19 {
        return Err(Error::AlphabetTooLarge {
            n: usize::MAX,
            cap: WITNESS_CAP,
        });
    }
    Ok(lambda)
}

/// `floor(log_q(4 p1/(1-p1)))` for the `q > 1` counterexample.
pub fn counterexample_m(q: f64, p1: f64) -> Result<u32> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(out_of_range(format!("q = {q} must exceed 1")));
    }
    if !(p1 > 0.2 && p1 < 1.0) {
        return Err(out_of_range(format!("p1 = {p1} outside (0.2, 1)")));
    }
    let m = ((4.0 * p1 / (1.0 - p1)).ln() / q.ln()).floor();
    if m > 30.0 {
        return Err(Error::AlphabetTooLarge {
            n: usize::MAX,
            cap: WITNESS_CAP,
        });
    }
    Ok(m.max(0.0) as u32)
}

/// `g` of the `q < 1` construction; a logarithm of a nonpositive number counts as `-inf`.
pub fn always_one_g(q: f64, p1: f64) -> Result<u32> {
    if !(q > 0.5 && q < 1.0) {
        return Err(out_of_range(format!("q = {q} outside (0.5, 1)")));
    }
    if !(p1 > 0.0 && p1 < 1.0) {
        return Err(out_of_range(format!("p1 = {p1} outside (0, 1)")));
    }
    let a = ((2.0 * q * p1 / (1.0 - p1)).ln() / q.ln()).floor();
    let ratio = (1.0 - 2.0 * p1) / p1;
    let b = if ratio > 0.0 { ratio.log2().floor() } else { f64::NEG_INFINITY };
    let g = a.max(b).max(0.0);
    if g > 30.0 {
        return Err(Error::AlphabetTooLarge {
            n: usize::MAX,
            cap: WITNESS_CAP,
        });
    }
    Ok(g as u32)
}

impl WitnessFamily {
    pub fn generate(&self) -> Result<Pmf> {
        match *self {
            WitnessFamily::MmprUpperHigh { p1, eps } => {
                if !(0.5..1.0).contains(&p1) {
                    return Err(out_of_range(format!("p1 = {p1} outside [0.5, 1)")));
                }
                let e = pick_eps(eps, (1.0 - p1) / 2.0, true)?;
                assemble(p1, 1.0 - p1 - e, 1, Some(e))
            }
            WitnessFamily::MmprUpperMid { p1, eps } => {
                let l = lambda_in(p1, 2)?;
                if p1 < 2.0 / (pow2(l) + 1.0) {
                    return Err(out_of_range(format!("p1 = {p1} below 2/(2^{l}+1)")));
                }
                let e = pick_eps(eps, 1.0 - p1 * pow2(l - 1), false)?;
                let k = tail_count(pow2(l) - 2.0)?;
                assemble(p1, (1.0 - p1 - e) / k as f64, k, Some(e))
            }
            WitnessFamily::MmprUpperLow { p1, eps } => {
                let l = lambda_in(p1, 2)?;
                if p1 >= 2.0 / (pow2(l) + 1.0) {
                    return Err(out_of_range(format!("p1 = {p1} not below 2/(2^{l}+1)")));
                }
                // Monotone needs eps <= (1-p1)/2^l; a complete tree needs
                // p1 < 2 p_(n-1), i.e. eps < 1 - p1 (2^l+1)/2.
                let by_order = (1.0 - p1) / pow2(l);
                let by_shape = 1.0 - p1 * (pow2(l) + 1.0) / 2.0;
                let e = match eps {
                    Some(e) if e > 0.0 && e <= by_order && e < by_shape => e,
                    Some(e) => return Err(out_of_range(format!("eps = {e} too large"))),
                    None => (by_order.min(by_shape) / 2.0).min(1e-4),
                };
                let k = tail_count(pow2(l) - 1.0)?;
                assemble(p1, (1.0 - p1 - e) / k as f64, k, Some(e))
            }
            WitnessFamily::MmprLowerA { p1 } => {
                let l = lambda_in(p1, 2)?;
                if p1 < 1.0 / (pow2(l) - 1.0) {
                    return Err(out_of_range(format!("p1 = {p1} below 1/(2^{l}-1)")));
                }
                let k = tail_count(pow2(l) - 2.0)?;
                assemble(p1, (1.0 - p1) / k as f64, k, None)
            }
            WitnessFamily::MmprLowerB { p1 } => {
                let l = lambda_in(p1, 1)?;
                if l >= 2 && p1 >= 1.0 / (pow2(l) - 1.0) {
                    return Err(out_of_range(format!("p1 = {p1} not below 1/(2^{l}-1)")));
                }
                let k = tail_count(pow2(l) - 2.0)?;
                assemble(p1, 1.0 / pow2(l), k, Some(2.0 / pow2(l) - p1))
            }
            WitnessFamily::LenUpperTight { p1 } => {
                let l = lambda_in(p1, 1)?;
                if p1 == 1.0 / pow2(l) {
                    return Err(out_of_range(format!("p1 = {p1} is a power of two")));
                }
                let k = tail_count(pow2(l) - 2.0)?;
                assemble(p1, 1.0 / pow2(l), k, Some(2.0 / pow2(l) - p1))
            }
            WitnessFamily::LenLowerTight { p1 } => {
                let nu = lambda_in(p1, 2)?;
                if p1 <= 1.0 / (pow2(nu) - 1.0) {
                    return Err(out_of_range(format!("p1 = {p1} not above 1/(2^{nu}-1)")));
                }
                let k = tail_count(pow2(nu) - 2.0)?;
                assemble(p1, (1.0 - p1) / k as f64, k, None)
            }
            WitnessFamily::L1BoundaryQle1 { q, eps } => {
                if !(q > 0.5 && q <= 1.0) {
                    return Err(out_of_range(format!("q = {q} outside (0.5, 1]")));
                }
                let e = pick_eps(eps, (2.0 * q - 1.0) / (8.0 * q + 12.0), false)?;
                let s = 2.0 * q + 3.0;
                assemble(2.0 * q / s - 3.0 * e, 1.0 / s + e, 3, None)
            }
            WitnessFamily::L1CounterexampleQgt1 { q, p1 } => {
                let m = counterexample_m(q, p1)?;
                let k = tail_count(pow2(2 + m))?;
                assemble(p1, (1.0 - p1) / k as f64, k, None)
            }
            WitnessFamily::L1AlwaysOneQlt1 { q, p1 } => {
                let g = always_one_g(q, p1)?;
                let k = tail_count(pow2(1 + g))?;
                assemble(p1, (1.0 - p1) / k as f64, k, None)
            }
        }
    }

    /// `lambda = ceil(-lg p1)` where the family is keyed by it.
    pub fn lambda(&self) -> Option<u32> {
        match *self {
            WitnessFamily::MmprUpperHigh { p1, .. }
            | WitnessFamily::MmprUpperMid { p1, .. }
            | WitnessFamily::MmprUpperLow { p1, .. }
            | WitnessFamily::MmprLowerA { p1 }
            | WitnessFamily::MmprLowerB { p1 }
            | WitnessFamily::LenUpperTight { p1 }
            | WitnessFamily::LenLowerTight { p1 } => (p1 > 0.0).then(|| ceil_neg_lg(p1)),
            _ => None,
        }
    }
}
