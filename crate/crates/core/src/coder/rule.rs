use serde::Serialize;

use crate::objective::{DParam, Objective, QParam};

/// The function that replaces the two lightest weights during a merge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "param")]
pub enum CombineRule {
    /// `a + b`: classical Huffman, minimizes average redundancy.
    Sum,
    /// `2 max(a, b)`: minimizes maximum pointwise redundancy.
    MaxDouble,
    /// `(2^d a^(1+d) + 2^d b^(1+d))^(1/(1+d))`: minimizes d-th exponential redundancy.
    DthExp(DParam),
    /// `q a + q b`: minimizes exponential-average cost.
    ExpBase(QParam),
}

impl CombineRule {
    pub fn for_objective(obj: &Objective) -> Self {
        match *obj {
            Objective::AvgRedundancy => CombineRule::Sum,
            Objective::MaxPointwise => CombineRule::MaxDouble,
            Objective::DthExp(d) => CombineRule::DthExp(d),
            Objective::ExpAverage(q) => CombineRule::ExpBase(q),
        }
    }

    pub fn objective(&self) -> Objective {
        match *self {
            CombineRule::Sum => Objective::AvgRedundancy,
            CombineRule::MaxDouble => Objective::MaxPointwise,
            CombineRule::DthExp(d) => Objective::DthExp(d),
            CombineRule::ExpBase(q) => Objective::ExpAverage(q),
        }
    }

    /// Direct linear-domain evaluation. The engine uses overflow-safe
    /// representations instead; this is the reference form.
    pub fn apply(&self, a: f64, b: f64) -> f64 {
        match *self {
            CombineRule::Sum => a + b,
            CombineRule::MaxDouble => 2.0 * a.max(b),
            CombineRule::DthExp(d) => {
                let d = d.get();
                let e = 1.0 + d;
                (2f64.powf(d) * (a.powf(e) + b.powf(e))).powf(1.0 / e)
            }
            CombineRule::ExpBase(q) => q.get() * (a + b),
        }
    }

    /// Whether the merged weight never falls below either input, which is
    /// what makes the sequence of merged minima nondecreasing.
    pub fn is_expanding(&self) -> bool {
        match *self {
            CombineRule::Sum | CombineRule::MaxDouble => true,
            CombineRule::DthExp(d) => d.get() > 0.0,
            CombineRule::ExpBase(q) => q.get() >= 1.0,
        }
    }
}
