use thiserror::Error;

/// Errors produced by the numerical kernel, state constructors and measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("entry count {len} does not match a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize, len: usize },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("incompatible operands: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix of dimension {dim} does not factor as {d_a}x{d_b}")]
    Factorization { dim: usize, d_a: usize, d_b: usize },

    #[error("matrix is not Hermitian (max |a - a^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (max |U^dagger U - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("trace deviates from 1 by {deviation:e}")]
    Trace { deviation: f64 },

    #[error("state is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state vector norm deviates from 1 by {deviation:e}")]
    NotNormalized { deviation: f64 },

    #[error("A^dagger A has eigenvalue {value:e}, below the clamping window")]
    NegativeGram { value: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("parameter {name} = {value} outside [0, 1]")]
    Probability { name: &'static str, value: f64 },

    #[error("expected a {expected}-dimensional subsystem, got {actual}")]
    UnsupportedDimension { expected: usize, actual: usize },

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
