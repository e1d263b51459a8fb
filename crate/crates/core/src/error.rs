use thiserror::Error;

/// Errors produced by the geometry kernel.
///
/// Variants split into two groups: input errors (bad data, violated
/// preconditions) and consistency errors (`DualMismatch`, `VerdictMismatch`)
/// raised when two independent computations of the same quantity disagree.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("antipodal points have no unique connecting arc")]
    AntipodalPair,
    #[error("point lies on or below the equator (z = {z:e})")]
    EquatorOrBelow { z: f64 },
    #[error("the origin has no polar-plot inverse")]
    OriginNotInvertible,
    #[error("lune poles must be distinct and non-antipodal (p.q = {dot})")]
    DegenerateLune { dot: f64 },
    #[error("support function sample {index} is not strictly positive ({value})")]
    NonPositiveSupport { index: usize, value: f64 },
    #[error("support function needs at least {min} samples, got {got}")]
    TooFewSamples { got: usize, min: usize },
    #[error("half-plane intersection is empty or unbounded")]
    DegenerateIntersection,
    #[error("origin is not strictly interior (margin {margin:e})")]
    OriginNotInterior { margin: f64 },
    #[error("dual constructions disagree: Hausdorff {gap:e} exceeds {tol:e}")]
    DualMismatch { gap: f64, tol: f64 },
    #[error("polygon is not strictly convex and counter-clockwise at vertex {index}")]
    NotConvex { index: usize },
    #[error("polygon needs at least 3 non-collinear vertices, got {got}")]
    TooFewVertices { got: usize },
    #[error("point set is not hemispherical around its centroid (margin {margin:e})")]
    NotHemispherical { margin: f64 },
    #[error("hemisphere does not support the body (min dot {min_dot:e})")]
    NotSupporting { min_dot: f64 },
    #[error("polar-gap verdict ({gap_verdict}) and constant-width verdict ({width_verdict}) disagree: gap {gap:e}, width deviation {deviation:e}")]
    VerdictMismatch {
        gap_verdict: bool,
        width_verdict: bool,
        gap: f64,
        deviation: f64,
    },
    #[error("intersection of hemispheres is empty or has no interior")]
    EmptyOrLowerDimensional,
    #[error("pole {index} is redundant in the hemisphere intersection")]
    RedundantPole { index: usize },
    #[error("body leaves the open upper hemisphere")]
    BodyLeavesHemisphere,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
