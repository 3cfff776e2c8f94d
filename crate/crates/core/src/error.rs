use thiserror::Error;

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a profile needs at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("expected {expected} segments for the vertex list, got {got}")]
    SegmentCountMismatch { expected: usize, got: usize },
    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),
    #[error("vertex {index} violates the axis conditions (first on the positive w1-axis, last on the positive w2-axis, others in the open quadrant)")]
    AxisViolation { index: usize },
    #[error("segment {index} breaks star-shapedness (polar angle must increase and ν·p must stay positive)")]
    NotStarShaped { index: usize },
    #[error("segments {first} and {second} intersect")]
    SelfIntersection { first: usize, second: usize },
    #[error("arc segment {index} does not connect its endpoints")]
    ArcMismatch { index: usize },
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(&'static str),
    #[error("rounding radius too large at vertex {vertex}")]
    RadiusTooLarge { vertex: usize },
    #[error("smoothing broke star-shapedness")]
    SmoothingBreaksStarShape,
    #[error("ν·p = {value} is not positive; the point violates star-shapedness")]
    DegenerateDenominator { value: f64 },
    #[error("profile is not monotone (segment {segment})")]
    NotMonotone { segment: usize },
    #[error("brute-force cutoff {cutoff} cannot certify the minimum at {location}: vectors beyond the cutoff may have action ≥ {bound}, below the best found {best}")]
    OracleCutoffInsufficient { cutoff: i64, location: usize, bound: f64, best: f64 },
    #[error("finite-difference residual {residual} exceeds 1e-2; choose a smaller step or time")]
    StepTooLarge { residual: f64 },
    #[error("point is not on the segment interior of the boundary")]
    PointNotOnBoundary,
    #[error("thresholds must satisfy 0 < c ≤ C")]
    BadThresholds,
    #[error("ray does not meet the profile in the open quadrant")]
    RayMissesBoundary,
    #[error("ε = {eps} must lie in (0, w*) with w* = {w_star}")]
    EpsTooLarge { eps: f64, w_star: f64 },
    #[error("clipping produced a profile that is not star-shaped")]
    ClippingBreaksStarShape,
    #[error("ε = {eps} places (w*(ε), ε) outside the flat neighbourhood (height {height})")]
    EpsTooLargeForNeighborhood { eps: f64, height: f64 },
    #[error("strain validity condition fails: {0}")]
    ValidityConditionFails(&'static str),
    #[error("profile is not flattened near the w1-intercept: {0}")]
    NotFlattened(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
