use thiserror::Error;

/// Errors from matrix construction, validation and the spectral oracle.
/// Vertex indices are 0-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square ({rows} rows, {cols} columns)")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry ({row}, {col}) is negative: {value}")]
    NegativeEntry { row: usize, col: usize, value: f64 },
    #[error("entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("matrix is reducible: no directed path from {} to {}", from + 1, to + 1)]
    Reducible { from: usize, to: usize },
    #[error("invalid oracle settings (tol = {tol}, max_iter = {max_iter})")]
    InvalidOracleConfig { tol: f64, max_iter: usize },
    #[error("power iteration did not converge after {iterations} iterations (residual {last_residual:e})")]
    NoConvergence { iterations: usize, last_residual: f64 },
}

/// Errors from the scale-vector bound machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("dimension mismatch: matrix is {matrix}x{matrix}, scale vector has length {scale}")]
    DimensionMismatch { matrix: usize, scale: usize },
    #[error("scale vector component {index} is not strictly positive: {value}")]
    NonPositiveScale { index: usize, value: f64 },
    #[error("rank index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("largest scaled off-diagonal entry is zero; the upper bound needs it positive")]
    ZeroOffDiagonalMax,
    #[error("diagonal entry {index} is nonzero: {value}")]
    NonZeroDiagonal { index: usize, value: f64 },
    #[error(transparent)]
    Oracle(#[from] MatrixError),
}

/// Errors from graph parsing and construction. Vertex labels are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected: vertex {0} is unreachable from vertex 1")]
    DisconnectedGraph(usize),
}
