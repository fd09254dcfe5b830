use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero-length vector (norm {norm:e})")]
    ZeroVector { norm: f64 },

    #[error("spherical polygon is not convex: {0}")]
    NotConvexSpherical(String),

    #[error("edge lengths are not realizable on simplex {simplex:?}: {detail}")]
    UnrealizableMetric { simplex: Vec<usize>, detail: String },

    #[error("{face:?} is not a valid face here: {detail}")]
    BadFace { face: Vec<usize>, detail: String },

    #[error("degenerate vertex {index}: coincident neighbours")]
    DegenerateVertex { index: usize },

    #[error("direction reverses at vertex {index} (turning angle {angle})")]
    ReversalVertex { index: usize, angle: f64 },

    #[error("total signed curvature {total} is not a multiple of 2*pi (residual {residual:e})")]
    NotClosedToMultiple { total: f64, residual: f64 },

    #[error("consecutive tangent directions at {index} are antipodal")]
    AntipodalDirections { index: usize },

    #[error("not a closed manifold: {0}")]
    NonManifold(String),

    #[error("degenerate face normal on face {face}")]
    DegenerateNormal { face: usize },

    #[error("polyhedron is not convex: {0}")]
    NotConvex(String),

    #[error("dimension {0} is odd; the check needs an even-dimensional manifold")]
    OddDimension(usize),

    #[error("line search stalled at iteration {iteration} (energy {energy:e})")]
    Stall { iteration: usize, energy: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("index {index} out of range ({count} vertices) at line {line}")]
    IndexOutOfRange { line: usize, index: usize, count: usize },

    #[error("missing length for edge ({}, {})", .edge.0, .edge.1)]
    MissingLength { edge: (usize, usize) },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
