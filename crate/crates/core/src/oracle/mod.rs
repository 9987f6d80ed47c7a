//! Ground-truth optimizers: exhaustive search over complete codes for small
//! alphabets and an exact dynamic program for head-plus-uniform-tail sources.

mod brute;
mod enumerate;
mod head_tail;

pub use brute::{
    brute_force_optimal, brute_force_unrestricted, naive_evaluate, Oracle, OracleResult, ARGMIN_TOL,
    DEFAULT_CAP,
};
pub use enumerate::{default_max_len, enumerate_kraft_lengths, enumerate_relaxed, KraftLengths};
pub use head_tail::{head_tail_optimal, HeadTailOptimum, HEAD_TAIL_CAP};
