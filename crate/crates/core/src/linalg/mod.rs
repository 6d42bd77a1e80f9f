//! Dense exact linear algebra.

mod eigen;
mod matrix;
pub mod modp;
mod unipoly;

pub use eigen::{
    char_poly, eigen_report, min_poly, rational_jordan_transform, rational_roots, EigenReport,
    JordanBlock, JordanDecomposition,
};
pub use matrix::{Matrix, Rref};
pub use unipoly::UniPoly;
