use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty point list")]
    EmptyPointList,
    #[error("degenerate region")]
    DegenerateRegion,
    #[error("anchor outside region")]
    AnchorOutsideRegion,
    #[error("bisection failed: relative imbalance {imbalance:e} after {iterations} iterations")]
    BisectionFailed { imbalance: f64, iterations: usize },
    #[error("k exceeds point count")]
    KExceedsPointCount,
    #[error("k too small")]
    KTooSmall,
    /// C(n, k) is above the enumeration cap.
    #[error("guard rail: C({n},{k}) = {subsets} subsets exceeds limit {limit}")]
    GuardRail {
        n: usize,
        k: usize,
        subsets: u128,
        limit: u128,
    },
    #[error("point {index} lies outside the domain")]
    PointOutsideDomain { index: usize },
    #[error("non-finite coordinate at point {index}")]
    NonFinite { index: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Guard-rail aborts are reported separately from validation failures.
    pub fn is_guard_rail(&self) -> bool {
        matches!(self, Error::GuardRail { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
