//! Scale-vector bounds on the spectral radius of nonnegative irreducible
//! matrices, instantiated for the adjacency, signless Laplacian, distance and
//! distance signless Laplacian matrices of connected graphs.
//!
//! Every bound can be checked against [`matrix::spectral_radius`], a shifted
//! power iteration used as an independent oracle.

pub mod bounds;
pub mod error;
pub mod graph;
pub mod graph_bounds;
pub mod matrix;
pub mod random;

pub use bounds::{
    best_upper_bound, lower_bound, lower_bound_rowsum, scaled_profile, upper_bound, upper_bound_rowsum,
    upper_bound_zero_diag, BoundEvaluator, BoundReport, EqualityBranch, EqualityDiagnosis, ScaleVector,
    ScaledProfile, Side,
};
pub use error::{BoundsError, GraphError, MatrixError};
pub use graph::{DegreeData, Graph, TransmissionData};
pub use graph_bounds::{GraphBounds, MatrixKind, StructuralClass};
pub use matrix::{
    spectral_radius, strongly_connected, validate_irreducible, IrreducibleMatrix, NonnegativeMatrix,
    OracleConfig, SpectralEstimate,
};
