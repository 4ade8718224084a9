//! Dense complex linear algebra for small dimensions, plus the quantum
//! bipartite kernels (partial transpose, partial trace, negativity).

mod bipartite;
mod eig;
mod matrix;

pub use bipartite::{
    negativity, partial_trace, partial_transpose, require_density, BipartiteDims, Subsystem,
};
pub use eig::{
    hermitian_eig, hermitian_eig_unchecked, hermiticity_tolerance, unitary_from_involution,
    SpectralDecomposition,
};
pub use matrix::{inner, ComplexMatrix};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max asymmetry {max_asymmetry:.3e})")]
    NotHermitian { max_asymmetry: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("trace is not one (got {trace:.6})")]
    NotUnitTrace { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("matrix is not an involution (|G^2 - I| = {deviation:.3e})")]
    NotInvolution { deviation: f64 },
}
