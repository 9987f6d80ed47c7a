//! Optimal binary prefix codes under average, maximum pointwise, d-th
//! exponential and exponential-average objectives, with closed-form bounds on
//! the optimum, extremal witness distributions and an exhaustive oracle.

pub mod bounds;
pub mod coder;
pub mod error;
pub mod lengths;
pub mod math;
pub mod objective;
pub mod oracle;
pub mod pmf;
pub mod report;
pub mod sample;
pub mod witness;

pub use coder::{generalized_huffman, optimal_code, CodeResult, CombineRule};
pub use error::{Error, Result};
pub use lengths::{Kraft, LengthVector};
pub use objective::Objective;
pub use pmf::Pmf;
pub use report::{BoundKind, BoundReport};
