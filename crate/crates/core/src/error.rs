use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive direction")]
    ZeroVector,

    #[error("expected integer components, got {0}")]
    NotIntegral(String),

    #[error("linear part is not unimodular (det = {0})")]
    NotUnimodular(String),

    #[error("degenerate hull: the points do not span the plane")]
    DegenerateHull,

    #[error("polygon is not a triangle ({0} vertices)")]
    NotATriangle(usize),

    #[error("origin is not in the interior of the polygon")]
    OriginNotInterior,

    #[error("normals are not in strictly counterclockwise order (det_{{{0},{1}}} <= 0)")]
    NotConvexOrder(usize, usize),

    #[error("length mismatch: {normals} normals, {offsets} offsets")]
    LengthMismatch { normals: usize, offsets: usize },

    #[error("entries must be positive integers")]
    NonPositive,

    #[error("not a solution: {0}")]
    NotASolution(String),

    #[error("vieta jump leaves the positive integers: {0}")]
    JumpOutOfRange(String),

    #[error("NotConstructible: {0}")]
    NotConstructible(String),

    #[error("parameters out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}
