use crate::error::{Error, Result};
use crate::lengths::LengthVector;
use crate::math::ceil_neg_lg;
use crate::pmf::Pmf;

/// `l_i = ceil(-lg p_i)`.
pub fn shannon_code(p: &Pmf) -> LengthVector {
    LengthVector::new(p.probs().iter().map(|&x| ceil_neg_lg(x)).collect())
}

/// Shannon-style code that pins symbol `j` (0-based) to `lambda = ceil(-lg p_j)`
/// and sizes the others for the remaining `1 - 2^-lambda` of Kraft budget:
/// `l_i = ceil(-lg(p_i (1 - 2^-lambda) / (1 - p_j)))`.
pub fn j_shannon_code(p: &Pmf, j: usize) -> Result<LengthVector> {
    let pj = p.get(j)?;
    if p.len() == 1 {
        return Ok(LengthVector::new(vec![0]));
    }
    let lambda = ceil_neg_lg(pj);
    let scale = (1.0 - 0.5f64.powi(lambda as i32)) / (1.0 - pj);
    let mut lengths: Vec<u32> = p
        .probs()
        .iter()
        .enumerate()
        .map(|(i, &x)| if i == j { lambda } else { ceil_neg_lg(x * scale) })
        .collect();
    // Exact arithmetic always fits; rounding in `x * scale` can land a
    // length one short. Lengthen the tightest non-j codeword until it fits.
    let mut lv = LengthVector::new(lengths.clone());
    while !lv.is_valid() {
        let worst = (0..lengths.len())
            .filter(|&i| i != j)
            .max_by(|&a, &b| {
                let sa = p.probs()[a] * scale * 2f64.powi(lengths[a] as i32);
                let sb = p.probs()[b] * scale * 2f64.powi(lengths[b] as i32);
                sb.total_cmp(&sa)
            })
            .ok_or(Error::KraftViolation)?;
        lengths[worst] += 1;
        lv = LengthVector::new(lengths.clone());
    }
    Ok(lv)
}

/// Lengths `(1, 2, ..., n-1, n-1)`; `(0)` for a single symbol.
pub fn unary_code(n: usize) -> LengthVector {
    if n <= 1 {
        return LengthVector::new(vec![0; n]);
    }
    let mut lengths: Vec<u32> = (1..n as u32).collect();
    lengths.push(n as u32 - 1);
    LengthVector::new(lengths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::max_pointwise_redundancy;

    #[test]
    fn shannon_examples() {
        let p = Pmf::new(&[0.5, 0.25, 0.25]).unwrap();
        assert_eq!(shannon_code(&p).lengths(), &[1, 2, 2]);
        let p = Pmf::new(&[0.5, 0.3, 0.2]).unwrap();
        assert_eq!(shannon_code(&p).lengths(), &[1, 2, 3]);
        let b = Pmf::benford();
        let l = shannon_code(&b);
        assert!(l.is_valid());
        assert!(max_pointwise_redundancy(&b, l.lengths()).unwrap() < 1.0);
    }

    #[test]
    fn j_shannon_matches_shannon_on_dyadic() {
        let p = Pmf::new(&[0.5, 0.25, 0.125, 0.125]).unwrap();
        for j in 0..4 {
            assert_eq!(j_shannon_code(&p, j).unwrap().lengths(), &[1, 2, 3, 3]);
        }
    }

    #[test]
    fn j_shannon_first_order_bound() {
        let p = Pmf::benford();
        let l = j_shannon_code(&p, 0).unwrap();
        assert!(l.is_valid());
        let p1 = p.p1();
        let lambda = ceil_neg_lg(p1);
        assert_eq!(l.lengths()[0], lambda);
        let bound = 1.0 + ((1.0 - p1) / (1.0 - 0.5f64.powi(lambda as i32))).log2();
        for i in 1..p.len() {
            assert!(l.lengths()[i] as f64 + p.probs()[i].log2() < bound);
        }
    }

    #[test]
    fn j_shannon_edges() {
        let one = Pmf::new(&[1.0]).unwrap();
        assert_eq!(j_shannon_code(&one, 0).unwrap().lengths(), &[0]);
        let p = Pmf::new(&[0.5, 0.5]).unwrap();
        assert!(j_shannon_code(&p, 2).is_err());
    }

    #[test]
    fn unary_lengths() {
        assert_eq!(unary_code(4).lengths(), &[1, 2, 3, 3]);
        assert_eq!(unary_code(1).lengths(), &[0]);
        assert_eq!(unary_code(2).lengths(), &[1, 1]);
        assert!(unary_code(40).is_complete());
    }
}
