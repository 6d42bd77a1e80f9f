//! Exact computations with homogeneous polynomials and their Jacobian ideals.
//!
//! The polynomial and matrix layers are generic over an exact [`Scalar`]
//! field; the analysis layers work over the rationals through the aliases
//! below.

pub mod error;
pub mod expr;
pub mod graded;
pub mod linalg;
pub mod poly;
pub mod reconstruction;
pub mod scalar;
pub mod structure;
pub mod witness;

pub use error::{AnalysisError, IdealError, LinalgError, PolyError, PreconditionError};
pub use linalg::{EigenReport, JordanDecomposition, Matrix, UniPoly};
pub use poly::{ExponentVector, HomPoly, PolyMatrix};
pub use scalar::Scalar;

/// Arbitrary-precision rational numbers.
pub type Rat = num_rational::BigRational;
/// Homogeneous polynomial over the rationals.
pub type Poly = HomPoly<Rat>;
/// Dense rational matrix.
pub type RatMatrix = Matrix<Rat>;
/// Univariate rational polynomial.
pub type RatUniPoly = UniPoly<Rat>;
/// Graded piece of a polynomial ideal over the rationals.
pub type RatPolySpace = graded::PolySpace<Rat>;

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}
