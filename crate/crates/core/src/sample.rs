//! Seeded random inputs for verification campaigns.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::error::{Error, Result};
use crate::lengths::LengthVector;
use crate::pmf::Pmf;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from the probability simplex on `n` symbols, sorted nonincreasing.
pub fn dirichlet_pmf<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<Pmf> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let draws: Vec<f64> = (0..n)
        .map(|_| loop {
            let x: f64 = rng.sample(Exp1);
            if x > 0.0 {
                break x;
            }
        })
        .collect();
    Pmf::normalized(&draws)
}

/// Lengths of a random full binary tree with `n` leaves, nondecreasing.
/// Grown by splitting a uniformly chosen leaf `n - 1` times.
pub fn random_complete_lengths<R: Rng + ?Sized>(rng: &mut R, n: usize) -> LengthVector {
    let mut depths = vec![0u32; n.min(1)];
    while depths.len() < n {
        let i = rng.random_range(0..depths.len());
        depths[i] += 1;
        depths.push(depths[i]);
    }
    depths.sort_unstable();
    LengthVector::new(depths)
}
