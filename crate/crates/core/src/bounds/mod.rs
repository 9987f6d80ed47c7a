//! Closed-form bounds on optimal objective values given one probability or
//! an entropy, and structural guarantees on optimal codeword lengths.

mod expavg;
mod mmpr;
mod redundancy;

pub use expavg::{
    exp_avg_bounds, exp_avg_bounds_l1, exp_avg_unit_bounds, hat_transform, l1_region, l1_threshold,
    L1Bounds, L1Region,
};
pub use mmpr::{mmpr_bounds, mmpr_length_bounds, LambdaJ, LengthBounds};
pub use redundancy::{avg_redundancy_lower, avg_redundancy_upper_gallager, dth_bounds};
