use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("malformed scalar {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Matrix shape as `(rows, cols)`.
pub type Shape = (usize, usize);

/// One map of a cycle whose shape disagrees with the dimension vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeViolation {
    /// 1-based vertex of the offending map `A_vertex`.
    pub vertex: usize,
    pub expected: Shape,
    pub found: Shape,
}

impl fmt::Display for ShapeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "map A_{} has shape {}x{}, expected {}x{}",
            self.vertex, self.found.0, self.found.1, self.expected.0, self.expected.1
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: Shape,
        right: Shape,
    },
    #[error("matrix of shape {0:?} is not square")]
    NotSquare(Shape),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("cycle length must be at least 1")]
    InvalidLength,
    #[error("cycle lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("vertex {vertex} out of range 1..={t}")]
    VertexOutOfRange { vertex: usize, t: usize },
    #[error("invalid cycle shape: {}", join(.0))]
    Shape(Vec<ShapeViolation>),
    #[error("phi_{0} is not invertible")]
    SingularTransformation(usize),
    #[error("cycle is not regular: A_{0} is not invertible")]
    NotRegular(usize),
    #[error("kernel table not stabilized at jmax = {0}")]
    NotStabilized(usize),
    #[error("negative chain count n_({l},{j}) = {value}")]
    NegativeCount { l: usize, j: usize, value: i64 },
    #[error("cycles are not isomorphic")]
    NotIsomorphic,
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("instance exceeds oracle bound: total dimension {total} > {bound}")]
    OracleBound { total: usize, bound: usize },
    #[error("{context}: {message}")]
    Parse { context: String, message: String },
    #[error("{0}")]
    Io(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn join(v: &[ShapeViolation]) -> String {
    v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
