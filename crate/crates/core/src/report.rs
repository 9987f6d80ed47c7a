use serde::Serialize;

/// How an interval endpoint relates to the true optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// Attained by some distribution; the endpoint is closed.
    Achievable,
    /// Only reached in a limit; the endpoint is open.
    Approachable,
    /// Lower and upper coincide.
    Exact,
}

impl BoundKind {
    pub fn is_open(self) -> bool {
        self == BoundKind::Approachable
    }
}

/// A closed or half-open interval containing an optimal objective value, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub lower: f64,
    pub upper: f64,
    pub lower_kind: BoundKind,
    pub upper_kind: BoundKind,
    pub exact: Option<f64>,
    /// The upper end is the generic unit-width bound because no sharper one applies.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub unit_fallback: bool,
}

impl BoundReport {
    pub fn new(lower: f64, lower_kind: BoundKind, upper: f64, upper_kind: BoundKind) -> Self {
        debug_assert!(lower <= upper + 1e-12, "inverted bounds [{lower}, {upper}]");
        Self {
            lower,
            upper,
            lower_kind,
            upper_kind,
            exact: None,
            unit_fallback: false,
        }
    }

    pub fn exact(value: f64) -> Self {
        Self {
            lower: value,
            upper: value,
            lower_kind: BoundKind::Exact,
            upper_kind: BoundKind::Exact,
            exact: Some(value),
            unit_fallback: false,
        }
    }

    /// Shifts both endpoints by `offset`.
    pub fn shifted(mut self, offset: f64) -> Self {
        self.lower += offset;
        self.upper += offset;
        self.exact = self.exact.map(|e| e + offset);
        self
    }

    /// Whether `value` lies inside. Closed ends allow `tol` of slack; open
    /// ends are strict.
    pub fn contains(&self, value: f64, tol: f64) -> bool {
        let lower_ok = if self.lower_kind.is_open() {
            value > self.lower
        } else {
            value >= self.lower - tol
        };
        let upper_ok = if self.upper_kind.is_open() {
            value < self.upper
        } else {
            value <= self.upper + tol
        };
        lower_ok && upper_ok
    }

    /// Whether `[lower, upper]` sits inside `outer`, allowing `tol` of slack.
    pub fn within(&self, outer: &BoundReport, tol: f64) -> bool {
        self.lower >= outer.lower - tol && self.upper <= outer.upper + tol
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}
