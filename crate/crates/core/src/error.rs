use thiserror::Error;

/// Errors from polynomial construction and calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndex { index: usize, nvars: usize },
    #[error("expected {expected} variables, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("polynomial is not homogeneous: degrees {degrees:?}")]
    NotHomogeneous { degrees: Vec<u32> },
    #[error("operation needs degree at least {needed}, got {found}")]
    DegreeTooLow { needed: u32, found: u32 },
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    MatrixShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
}

/// Errors from dense matrix routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Errors from graded ideal computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("polynomials have mixed shapes: {0}")]
    MixedShapes(String),
    #[error("cannot span an empty list without an explicit shape")]
    EmptySpan,
    #[error("mdr0 is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("a form in one variable has no syzygies among its partials")]
    SinglePartial,
}

/// Violated preconditions of the structure, reconstruction and witness
/// operations. The CLI maps these to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreconditionError {
    #[error("E(f) and E(g) differ")]
    SpansDiffer,
    #[error("E'(f) and E'(g) differ")]
    EPrimeSpansDiffer,
    #[error("{which} is a cone (its partial derivatives are linearly dependent)")]
    Cone { which: &'static str },
    #[error("degree {found} is too small: need {requirement}")]
    Degree {
        requirement: &'static str,
        found: u32,
    },
    #[error("mdr0(g) = {found} but at least 3 is required")]
    MdrTooSmall { found: u32 },
    #[error("f and g live in different rings or degrees")]
    ShapeMismatch,
    #[error("the zero point is not a projective point")]
    ZeroPoint,
    #[error("space has dimension {found}, expected {expected}")]
    SpaceDimension { expected: usize, found: usize },
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// Failure of a structural analysis: either the caller broke a precondition or
/// an identity that must hold by construction did not.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Precondition(#[from] PreconditionError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<PolyError> for AnalysisError {
    fn from(e: PolyError) -> Self {
        AnalysisError::Precondition(e.into())
    }
}

impl From<IdealError> for AnalysisError {
    fn from(e: IdealError) -> Self {
        AnalysisError::Precondition(e.into())
    }
}
