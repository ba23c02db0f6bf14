//! Exact linear algebra over ℚ and ℚ(i): matrices, subspaces, polynomial
//! maps and flows of nilpotent affine fields.

pub mod affine;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod subspace;

use thiserror::Error;

pub use affine::{exp_nilpotent_affine, field_bracket, flow_polymap, AffineField, AffineMap};
pub use matrix::{rank, Matrix};
pub use poly::{poly_compose, poly_det, Poly, PolyMap};
pub use scalar::{Scalar, Q, QI};
pub use subspace::{nullspace, span_intersect, unit, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected a {}x{} shape, found {}x{}", expected.0, expected.1, found.0, found.1)]
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("matrix is {0}x{1}, not square")]
    NotSquare(usize, usize),
    #[error("linear part is not nilpotent")]
    NotNilpotent,
    #[error("polynomial in {0} variables is not univariate")]
    NotUnivariate(usize),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}
