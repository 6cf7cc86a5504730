use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("not a hyperbolic point: ({x}, {y}) is not strictly inside the unit disk")]
    NotHyperbolicPoint { x: f64, y: f64 },

    #[error("degenerate cross-ratio: repeated arguments")]
    DegenerateCrossRatio,

    #[error("degenerate Möbius map: ad - bc = 0")]
    DegenerateMobius,

    #[error("orientation-reversing not lifted (det = {det})")]
    OrientationReversing { det: f64 },

    #[error("polar at infinity: chord is a diameter with normal direction ({dx}, {dy})")]
    PolarAtInfinity { dx: f64, dy: f64 },

    #[error("pole inside disk: |({x}, {y})| <= 1")]
    PoleInsideDisk { x: f64, y: f64 },

    #[error("coincident points do not determine a line")]
    CoincidentPoints,

    #[error("parallel lines meet at infinity in direction ({dx}, {dy})")]
    ParallelLines { dx: f64, dy: f64 },

    #[error("altitude undefined: vertex coincides with the pole of the chord")]
    AltitudeUndefined,

    #[error("reflection undefined: point is an endpoint of the chord")]
    ReflectionUndefined,

    #[error("concurrence needs at least 2 lines, got {0}")]
    TooFewLines(usize),

    #[error("singular linear system: {0}")]
    SingularSystem(&'static str),

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid side set: {0}")]
    InvalidSideSet(String),

    #[error("degenerate barycenter: I + K vanishes")]
    DegenerateBarycenter,

    #[error("({i}, {j}) is not a diagonal of an {n}-gon")]
    NotADiagonal { i: usize, j: usize, n: usize },

    #[error("polygon size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("polygon is not convex: {0}")]
    NotConvex(String),

    #[error("construction needs an n-gon with n = {expected}, got n = {got}")]
    WrongVertexCount { expected: String, got: usize },

    #[error("conic fit failed: {0}")]
    ConicFit(String),

    #[error("point not on the conic (residual {0:.3e})")]
    NotOnConic(f64),

    #[error("Poncelet orbit leaves the real locus")]
    OrbitLeavesRealLocus,

    #[error("domain violation at ({x}, {y}): {what}")]
    DomainViolation { x: f64, y: f64, what: String },

    #[error("infeasible request: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
