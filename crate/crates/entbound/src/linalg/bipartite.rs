//! Bipartite kernels: partial transpose, partial trace, negativity.

use crate::scalar::{tol, Scalar};

use super::eig::hermitian_eig;
use super::matrix::ComplexMatrix;
use super::LinalgError;

/// Which subsystem an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Hilbert-space dimensions of the two subsystems.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BipartiteDims {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl BipartiteDims {
    pub fn new(dim_a: usize, dim_b: usize) -> Self {
        assert!(dim_a > 0 && dim_b > 0);
        Self { dim_a, dim_b }
    }

    pub fn total(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn check(&self, m: &ComplexMatrix<impl Scalar>) -> Result<(), LinalgError> {
        if !m.is_square() || m.rows() != self.total() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.total(),
                found: m.rows(),
            });
        }
        Ok(())
    }

    /// Two-qubit system.
    pub fn qubits() -> Self {
        Self::new(2, 2)
    }

    /// Two-qutrit system.
    pub fn qutrits() -> Self {
        Self::new(3, 3)
    }
}

/// Transpose one subsystem index pair: (iA,iB),(jA,jB) -> (jA,iB),(iA,jB) for
/// subsystem A (and symmetric for B).
pub fn partial_transpose<F: Scalar>(
    rho: &ComplexMatrix<F>,
    dims: BipartiteDims,
    subsystem: Subsystem,
) -> Result<ComplexMatrix<F>, LinalgError> {
    dims.check(rho)?;
    let (da, db) = (dims.dim_a, dims.dim_b);
    let mut out = ComplexMatrix::zeros(rho.rows(), rho.cols());
    for ia in 0..da {
        for ib in 0..db {
            for ja in 0..da {
                for jb in 0..db {
                    let (r, c) = match subsystem {
                        Subsystem::A => (ja * db + ib, ia * db + jb),
                        Subsystem::B => (ia * db + jb, ja * db + ib),
                    };
                    out[(r, c)] = rho[(ia * db + ib, ja * db + jb)];
                }
            }
        }
    }
    Ok(out)
}

/// Trace out the complement of `keep`.
pub fn partial_trace<F: Scalar>(
    rho: &ComplexMatrix<F>,
    dims: BipartiteDims,
    keep: Subsystem,
) -> Result<ComplexMatrix<F>, LinalgError> {
    dims.check(rho)?;
    let (da, db) = (dims.dim_a, dims.dim_b);
    match keep {
        Subsystem::A => {
            let mut out = ComplexMatrix::zeros(da, da);
            for ia in 0..da {
                for ja in 0..da {
                    for k in 0..db {
                        let add = rho[(ia * db + k, ja * db + k)];
                        out[(ia, ja)] = out[(ia, ja)] + add;
                    }
                }
            }
            Ok(out)
        }
        Subsystem::B => {
            let mut out = ComplexMatrix::zeros(db, db);
            for ib in 0..db {
                for jb in 0..db {
                    for k in 0..da {
                        let add = rho[(k * db + ib, k * db + jb)];
                        out[(ib, jb)] = out[(ib, jb)] + add;
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Validate a density matrix: Hermitian, unit trace, positive semidefinite.
pub fn require_density<F: Scalar>(rho: &ComplexMatrix<F>) -> Result<(), LinalgError> {
    let scale = F::one().max(rho.max_abs());
    rho.require_hermitian(tol::<F>(1e-12) * scale)?;
    let tr = rho.trace();
    if (tr.re - F::one()).abs() > tol::<F>(1e-10) || tr.im.abs() > tol::<F>(1e-10) {
        return Err(LinalgError::NotUnitTrace { trace: tr.re.to_f64().unwrap_or(f64::NAN) });
    }
    let eig = hermitian_eig(rho)?;
    let min = eig.eigenvalues[0];
    if min < -tol::<F>(1e-10) {
        return Err(LinalgError::NotPositive { min_eigenvalue: min.to_f64().unwrap_or(f64::NAN) });
    }
    Ok(())
}

/// Negativity: trace norm of the partial transpose minus one, which is twice
/// the magnitude of the summed negative eigenvalues. Zero for all states with
/// positive partial transpose.
pub fn negativity<F: Scalar>(
    rho: &ComplexMatrix<F>,
    dims: BipartiteDims,
) -> Result<F, LinalgError> {
    require_density(rho)?;
    let pt = partial_transpose(rho, dims, Subsystem::A)?;
    let eig = hermitian_eig(&pt)?;
    let trace_norm: F = eig.eigenvalues.iter().map(|&x| x.abs()).sum();
    Ok((trace_norm - F::one()).max(F::zero()))
}
