//! Two-mode Gaussian states: covariance matrices in standard block form,
//! symplectic eigenvalues, entanglement measures, the phase-space route to
//! the pure-state Fisher information and Fock-basis oracles.
//!
//! Conventions: vacuum variance 1/2 (the vacuum covariance matrix is I/2),
//! quadrature ordering (q1, p1, q2, p2). A two-mode state is separable
//! exactly when the least symplectic eigenvalue of the partially transposed
//! covariance matrix is at least 1/2.

mod fock;
mod measures;
mod sts;
mod symplectic;
mod wick;

pub use fock::{twin_beam_coefficients, twin_beam_fock_qfi, FockExpansion, FockQfi, TwinBeamParam};
pub use measures::GaussianMeasure;
pub use sts::{
    sts_bounds, sts_dtilde, sts_inverse_qfi, sts_mu, sts_qfi_closed, sts_qfi_fock_oracle,
    sts_transfer, StsBound, StsOracleResult,
};
pub use symplectic::{char_fn, min_symplectic_pt_numeric, symplectic_eigs};
pub use wick::{pure_qfi_phase_space, twin_beam_qfi};

use thiserror::Error;

use crate::linalg::{ComplexMatrix, LinalgError};
use crate::scalar::{cr, fp, tol, Scalar};

#[derive(Debug, Error)]
pub enum GaussianError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error("unphysical covariance matrix: {reason}")]
    Unphysical { reason: String },

    #[error("parameter {name} = {value} outside ({lo}, {hi})")]
    Domain { name: &'static str, value: f64, lo: f64, hi: f64 },

    #[error("measure value {value} outside the valid range [{lo}, {hi})")]
    MeasureRange { value: f64, lo: f64, hi: f64 },

    #[error("state is not pure (det sigma deviates by {deviation:.3e}); the phase-space route needs a pure state")]
    NotPure { deviation: f64 },

    #[error("Fock truncation too small: norm deficit {deficit:.3e} exceeds {limit:.1e}")]
    TruncationTooSmall { deficit: f64, limit: f64 },

    #[error("phase-space integral left an imaginary residue {residue:.3e}")]
    ImaginaryResidue { residue: f64 },
}

/// Two-mode covariance matrix in standard block form
/// [[A, C], [C, B]] with A = diag(a, a), B = diag(b, b), C = diag(c_plus, c_minus).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoModeCovariance<F: Scalar> {
    pub a: F,
    pub b: F,
    pub c_plus: F,
    pub c_minus: F,
}

impl<F: Scalar> TwoModeCovariance<F> {
    pub fn new(a: F, b: F, c_plus: F, c_minus: F) -> Result<Self, GaussianError> {
        let cm = Self { a, b, c_plus, c_minus };
        cm.require_physical()?;
        Ok(cm)
    }

    pub fn vacuum() -> Self {
        let half = fp::<F>(0.5);
        Self { a: half, b: half, c_plus: F::zero(), c_minus: F::zero() }
    }

    /// Pure symmetric state fixed by its least partial-transpose symplectic
    /// eigenvalue d in (0, 1/2]: a = (d + 1/(4d))/2, c = a - d.
    pub fn twin_beam_from_dtilde(d: F) -> Result<Self, GaussianError> {
        if !(d > F::zero() && d <= fp(0.5)) {
            return Err(GaussianError::Domain {
                name: "dtilde",
                value: d.to_f64().unwrap_or(f64::NAN),
                lo: 0.0,
                hi: 0.5,
            });
        }
        let a = (d + (fp::<F>(4.0) * d).recip()) * fp(0.5);
        let c = a - d;
        Ok(Self { a, b: a, c_plus: c, c_minus: -c })
    }

    /// Squeezed symmetric thermal state: a = (N + 1/2) cosh 2r,
    /// c = (N + 1/2) sinh 2r.
    pub fn squeezed_thermal(r: F, n_thermal: F) -> Result<Self, GaussianError> {
        if !(r > F::zero()) {
            return Err(GaussianError::Domain {
                name: "r",
                value: r.to_f64().unwrap_or(f64::NAN),
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        if !(n_thermal > F::zero()) {
            return Err(GaussianError::Domain {
                name: "n_thermal",
                value: n_thermal.to_f64().unwrap_or(f64::NAN),
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        let half = fp::<F>(0.5);
        let two = fp::<F>(2.0);
        let scale = n_thermal + half;
        let a = scale * (two * r).cosh();
        let c = scale * (two * r).sinh();
        Ok(Self { a, b: a, c_plus: c, c_minus: -c })
    }

    pub fn is_symmetric(&self) -> bool {
        self.a == self.b
    }

    /// Dense 4x4 matrix in (q1, p1, q2, p2) ordering.
    pub fn matrix(&self) -> ComplexMatrix<F> {
        let mut m = ComplexMatrix::<F>::zeros(4, 4);
        m[(0, 0)] = cr(self.a);
        m[(1, 1)] = cr(self.a);
        m[(2, 2)] = cr(self.b);
        m[(3, 3)] = cr(self.b);
        m[(0, 2)] = cr(self.c_plus);
        m[(2, 0)] = cr(self.c_plus);
        m[(1, 3)] = cr(self.c_minus);
        m[(3, 1)] = cr(self.c_minus);
        m
    }

    pub fn det(&self) -> F {
        (self.a * self.b - self.c_plus * self.c_plus)
            * (self.a * self.b - self.c_minus * self.c_minus)
    }

    /// a, b at least 1/2 and both symplectic eigenvalues at least 1/2 (up to
    /// 1e-12 slack).
    pub fn require_physical(&self) -> Result<(), GaussianError> {
        let half = fp::<F>(0.5);
        let slack = tol::<F>(1e-12);
        if self.a < half - slack || self.b < half - slack {
            return Err(GaussianError::Unphysical {
                reason: format!(
                    "diagonal blocks below the vacuum level: a={:?}, b={:?}",
                    self.a.to_f64(),
                    self.b.to_f64()
                ),
            });
        }
        let (d_minus, _) = symplectic::symplectic_eigs_of(self.a, self.b, self.c_plus, self.c_minus)
            .ok_or_else(|| GaussianError::Unphysical {
                reason: "complex symplectic spectrum".into(),
            })?;
        if d_minus < half - slack {
            return Err(GaussianError::Unphysical {
                reason: format!("least symplectic eigenvalue {:?} below 1/2", d_minus.to_f64()),
            });
        }
        Ok(())
    }

    /// Least symplectic eigenvalue of the partially transposed covariance
    /// matrix, the quantity every Gaussian entanglement measure here is a
    /// function of. Closed form sqrt((a-c+)(a+c-)) in the symmetric case,
    /// invariant-based for a != b.
    pub fn min_symplectic_pt(&self) -> Result<F, GaussianError> {
        // partial transposition on mode B flips the sign of c_minus
        let (d_minus, _) =
            symplectic::symplectic_eigs_of(self.a, self.b, self.c_plus, -self.c_minus)
                .ok_or_else(|| GaussianError::Unphysical {
                    reason: "complex symplectic spectrum after partial transpose".into(),
                })?;
        Ok(d_minus)
    }

    /// Separability verdict: d-tilde >= 1/2.
    pub fn is_separable(&self) -> Result<bool, GaussianError> {
        Ok(self.min_symplectic_pt()? >= fp(0.5))
    }
}
