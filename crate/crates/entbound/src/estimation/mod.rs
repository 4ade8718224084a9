//! Local quantum estimation machinery: symmetric logarithmic derivatives,
//! quantum Fisher information, classical Fisher information of a POVM,
//! reparametrization, variance bounds, signal-to-noise ratios and measurement
//! budgets.

mod budget;
mod derivative;
mod fisher;
mod montecarlo;
mod sld;

pub use budget::EstimationBudget;
pub use derivative::{state_derivative, state_derivative_richardson, DerivativeOutcome};
pub use fisher::{classical_fisher, classical_fisher_family, projector_effects, sld_projectors};
pub use montecarlo::{simulate_crb, SimulationResult};
pub use sld::{qfi_from_parts, qfi_matrix, qfi_scalar, sld, sld_from_parts, QfiResult, ScalarQfi, SldResult};

use thiserror::Error;

use crate::linalg::{ComplexMatrix, LinalgError};
use crate::scalar::Scalar;

/// Default cutoff below which an eigenvalue-pair denominator is treated as
/// part of the kernel and its term dropped from SLD and Fisher sums.
pub fn kernel_cutoff<F: Scalar>() -> F {
    crate::scalar::tol::<F>(1e-10)
}

#[derive(Debug, Error)]
pub enum EstimationError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error("parameter {index} = {value} outside the open domain ({lo}, {hi})")]
    OutsideDomain { index: usize, value: f64, lo: f64, hi: f64 },

    #[error("expected {expected} parameters, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("state derivative is not Hermitian traceless (deviation {deviation:.3e})")]
    BadDerivative { deviation: f64 },

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("transfer matrix shape {rows}x{cols} does not match {dim} parameters")]
    TransferShape { rows: usize, cols: usize, dim: usize },

    #[error("at least 100 samples required, got {0}")]
    SampleCountTooSmall(usize),

    #[error("operation requires a single-parameter family, got arity {0}")]
    NotScalarFamily(usize),
}

/// A parametrized family of density matrices.
///
/// `density` must return a valid density matrix everywhere on the open box
/// `domain`. When analytic derivatives are available they take precedence over
/// finite differences everywhere in the engine.
pub trait ParamFamily<F: Scalar>: Sync {
    fn arity(&self) -> usize;

    /// Open-interval box containing the valid parameter values.
    fn domain(&self) -> Vec<(F, F)>;

    fn density(&self, params: &[F]) -> Result<ComplexMatrix<F>, EstimationError>;

    fn analytic_derivative(&self, _params: &[F], _j: usize) -> Option<ComplexMatrix<F>> {
        None
    }

    fn check_params(&self, params: &[F]) -> Result<(), EstimationError> {
        if params.len() != self.arity() {
            return Err(EstimationError::ArityMismatch {
                expected: self.arity(),
                found: params.len(),
            });
        }
        for (j, (&x, (lo, hi))) in params.iter().zip(self.domain()).enumerate() {
            if !(x > lo && x < hi) {
                return Err(EstimationError::OutsideDomain {
                    index: j,
                    value: x.to_f64().unwrap_or(f64::NAN),
                    lo: lo.to_f64().unwrap_or(f64::NAN),
                    hi: hi.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(())
    }
}

/// Jacobian of a change of parameters, stored so that `reparametrize` is the
/// congruence `H ~ B H B^T`.
///
/// Entry `(i, j)` holds the derivative of old parameter `j` with respect to
/// new parameter `i`.
#[derive(Clone, Debug)]
pub struct TransferMatrix<F: Scalar> {
    entries: Vec<F>,
    new_dim: usize,
    old_dim: usize,
}

impl<F: Scalar> TransferMatrix<F> {
    /// `rows[i][j]` = d(old_j)/d(new_i).
    pub fn from_rows(rows: &[Vec<F>]) -> Self {
        let new_dim = rows.len();
        let old_dim = rows[0].len();
        let mut entries = Vec::with_capacity(new_dim * old_dim);
        for r in rows {
            assert_eq!(r.len(), old_dim, "ragged transfer matrix");
            entries.extend_from_slice(r);
        }
        Self { entries, new_dim, old_dim }
    }

    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![F::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = F::one();
        }
        Self::from_rows(&rows)
    }

    /// Scalar chain rule d(old)/d(new).
    pub fn scalar(dold_dnew: F) -> Self {
        Self::from_rows(&[vec![dold_dnew]])
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> F {
        self.entries[i * self.old_dim + j]
    }

    pub fn new_dim(&self) -> usize {
        self.new_dim
    }

    pub fn old_dim(&self) -> usize {
        self.old_dim
    }
}

/// Congruence transform of a Fisher matrix under a change of parameters.
pub fn reparametrize<F: Scalar>(
    qfi: &QfiResult<F>,
    b: &TransferMatrix<F>,
) -> Result<QfiResult<F>, EstimationError> {
    let n = qfi.dim();
    if b.old_dim() != n {
        return Err(EstimationError::TransferShape { rows: b.new_dim(), cols: b.old_dim(), dim: n });
    }
    let m = b.new_dim();
    let mut h = ComplexMatrix::<F>::zeros(m, m);
    for i in 0..m {
        for k in 0..m {
            let mut acc = F::zero();
            for r in 0..n {
                for s in 0..n {
                    acc = acc + b.entry(i, r) * qfi.h()[(r, s)].re * b.entry(k, s);
                }
            }
            h[(i, k)] = crate::scalar::cr(acc);
        }
    }
    QfiResult::from_matrix(h, qfi.route_delta(), qfi.truncated_pairs())
}

/// A family re-expressed through a smooth map from new to old parameters.
pub struct Reparametrized<'a, F: Scalar> {
    inner: &'a dyn ParamFamily<F>,
    map: Box<dyn Fn(&[F]) -> Vec<F> + Sync + 'a>,
    /// Optional analytic Jacobian: `jac(new)[i][j]` = d(old_i)/d(new_j).
    jacobian: Option<Box<dyn Fn(&[F]) -> Vec<Vec<F>> + Sync + 'a>>,
    domain: Vec<(F, F)>,
}

impl<'a, F: Scalar> Reparametrized<'a, F> {
    pub fn new(
        inner: &'a dyn ParamFamily<F>,
        domain: Vec<(F, F)>,
        map: impl Fn(&[F]) -> Vec<F> + Sync + 'a,
    ) -> Self {
        Self { inner, map: Box::new(map), jacobian: None, domain }
    }

    pub fn with_jacobian(mut self, jac: impl Fn(&[F]) -> Vec<Vec<F>> + Sync + 'a) -> Self {
        self.jacobian = Some(Box::new(jac));
        self
    }
}

impl<'a, F: Scalar> ParamFamily<F> for Reparametrized<'a, F> {
    fn arity(&self) -> usize {
        self.domain.len()
    }

    fn domain(&self) -> Vec<(F, F)> {
        self.domain.clone()
    }

    fn density(&self, params: &[F]) -> Result<ComplexMatrix<F>, EstimationError> {
        self.check_params(params)?;
        self.inner.density(&(self.map)(params))
    }

    fn analytic_derivative(&self, params: &[F], j: usize) -> Option<ComplexMatrix<F>> {
        let jac = self.jacobian.as_ref()?;
        let old = (self.map)(params);
        let cols = jac(params);
        let mut out: Option<ComplexMatrix<F>> = None;
        for i in 0..old.len() {
            let w = cols[i][j];
            if w == F::zero() {
                continue;
            }
            let d = self.inner.analytic_derivative(&old, i)?.scale_re(w);
            out = Some(match out {
                None => d,
                Some(acc) => &acc + &d,
            });
        }
        match out {
            Some(m) => Some(m),
            None => {
                let n = self.inner.density(&old).ok()?.rows();
                Some(ComplexMatrix::zeros(n, n))
            }
        }
    }
}

/// A family conjugated pointwise by a fixed unitary: the states move, the
/// Fisher information must not.
pub struct UnitaryConjugated<'a, F: Scalar> {
    inner: &'a dyn ParamFamily<F>,
    u: ComplexMatrix<F>,
}

impl<'a, F: Scalar> UnitaryConjugated<'a, F> {
    pub fn new(inner: &'a dyn ParamFamily<F>, u: ComplexMatrix<F>) -> Self {
        Self { inner, u }
    }
}

impl<'a, F: Scalar> ParamFamily<F> for UnitaryConjugated<'a, F> {
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn domain(&self) -> Vec<(F, F)> {
        self.inner.domain()
    }

    fn density(&self, params: &[F]) -> Result<ComplexMatrix<F>, EstimationError> {
        Ok(self.inner.density(params)?.conjugate_by(&self.u))
    }

    fn analytic_derivative(&self, params: &[F], j: usize) -> Option<ComplexMatrix<F>> {
        Some(self.inner.analytic_derivative(params, j)?.conjugate_by(&self.u))
    }
}
