use crate::error::{Error, Result};
use crate::lengths::LengthVector;

/// Canonical prefix-free codewords for `lengths`, returned in the input order.
///
/// Symbols are visited by nondecreasing length, stable on index. Each
/// codeword is the previous one plus one, then padded with zeros to the new
/// length. Works at any depth since codewords are built as bit strings.
pub fn canonical_codewords(lengths: &[u32]) -> Result<Vec<String>> {
    if !LengthVector::from(lengths).is_valid() {
        return Err(Error::KraftViolation);
    }
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by_key(|&i| lengths[i]);

    let mut out = vec![String::new(); lengths.len()];
    let mut bits: Vec<u8> = Vec::new();
    for (rank, &i) in order.iter().enumerate() {
        if rank > 0 && !increment(&mut bits) {
            return Err(Error::KraftViolation);
        }
        bits.resize(lengths[i] as usize, 0);
        out[i] = bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
    }
    Ok(out)
}

/// Binary increment in place; `false` on overflow.
fn increment(bits: &mut [u8]) -> bool {
    for b in bits.iter_mut().rev() {
        if *b == 0 {
            *b = 1;
            return true;
        }
        *b = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(canonical_codewords(&[1, 2, 2]).unwrap(), ["0", "10", "11"]);
        assert_eq!(
            canonical_codewords(&[2, 2, 2, 2]).unwrap(),
            ["00", "01", "10", "11"]
        );
        assert_eq!(
            canonical_codewords(&[1, 2, 3, 3]).unwrap(),
            ["0", "10", "110", "111"]
        );
        assert_eq!(canonical_codewords(&[0]).unwrap(), [""]);
    }

    #[test]
    fn original_order_is_kept() {
        assert_eq!(canonical_codewords(&[2, 1, 2]).unwrap(), ["10", "0", "11"]);
        assert_eq!(canonical_codewords(&[3, 1, 3, 2]).unwrap(), ["110", "0", "111", "10"]);
    }

    #[test]
    fn incomplete_codes_are_fine() {
        assert_eq!(canonical_codewords(&[1, 3]).unwrap(), ["0", "100"]);
    }

    #[test]
    fn violations_rejected() {
        assert_eq!(canonical_codewords(&[1, 1, 1]), Err(Error::KraftViolation));
        assert_eq!(canonical_codewords(&[0, 1]), Err(Error::KraftViolation));
    }
}
