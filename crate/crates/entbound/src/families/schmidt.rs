//! Pure two-qubit states in Schmidt form: sqrt(q)|00> + sqrt(1-q)|11>.
//!
//! The Schmidt weight q is itself an entanglement monotone, so every measure
//! is a function of it. Closed forms used as regression references:
//! H(q) = 1/(q(1-q)), Var(eps_N) >= 1 - eps_N^2, Var(eps_L) >= 4 eps_L (1 - eps_L).

use crate::estimation::{EstimationError, ParamFamily, Reparametrized};
use crate::linalg::ComplexMatrix;
use crate::scalar::{cr, fp, Scalar, C};

use super::{check_open_unit, ket4, zero_c, FamilyError};

#[derive(Clone, Copy, Debug, Default)]
pub struct SchmidtFamily;

impl SchmidtFamily {
    pub fn state_vector<F: Scalar>(q: F) -> Vec<C<F>> {
        ket4(cr(q.sqrt()), zero_c(), zero_c(), cr((F::one() - q).sqrt()))
    }

    pub fn state<F: Scalar>(q: F) -> Result<ComplexMatrix<F>, FamilyError> {
        check_open_unit("q", q)?;
        Ok(ComplexMatrix::outer(&Self::state_vector(q)))
    }

    fn state_vector_derivative<F: Scalar>(q: F) -> Vec<C<F>> {
        let half = fp::<F>(0.5);
        ket4(
            cr(half / q.sqrt()),
            zero_c(),
            zero_c(),
            cr(-half / (F::one() - q).sqrt()),
        )
    }

    /// eps_N = 2 sqrt(q(1-q)).
    pub fn negativity<F: Scalar>(q: F) -> F {
        fp::<F>(2.0) * (q * (F::one() - q)).sqrt()
    }

    /// eps_L = 4 q (1-q); the square of the negativity.
    pub fn linear_entropy<F: Scalar>(q: F) -> F {
        fp::<F>(4.0) * q * (F::one() - q)
    }

    /// Lower Schmidt branch q <= 1/2 for a given negativity.
    pub fn q_from_negativity<F: Scalar>(eps: F) -> Result<F, FamilyError> {
        check_measure(eps)?;
        Ok((F::one() - (F::one() - eps * eps).sqrt()) * fp(0.5))
    }

    pub fn dq_dnegativity<F: Scalar>(eps: F) -> F {
        eps / (fp::<F>(2.0) * (F::one() - eps * eps).sqrt())
    }

    pub fn q_from_linear_entropy<F: Scalar>(eps: F) -> Result<F, FamilyError> {
        check_measure(eps)?;
        Ok((F::one() - (F::one() - eps).sqrt()) * fp(0.5))
    }

    pub fn dq_dlinear_entropy<F: Scalar>(eps: F) -> F {
        (fp::<F>(4.0) * (F::one() - eps).sqrt()).recip()
    }

    /// Closed-form Fisher information for the Schmidt weight.
    pub fn qfi_q<F: Scalar>(q: F) -> F {
        (q * (F::one() - q)).recip()
    }

    /// Closed-form variance bound for the negativity: 1 - eps^2.
    pub fn var_bound_negativity<F: Scalar>(eps: F) -> F {
        F::one() - eps * eps
    }

    /// Closed-form variance bound for the linear entropy: 4 eps (1 - eps).
    pub fn var_bound_linear_entropy<F: Scalar>(eps: F) -> F {
        fp::<F>(4.0) * eps * (F::one() - eps)
    }

    /// Q(q) = q/(1-q).
    pub fn qsnr_q<F: Scalar>(q: F) -> F {
        q / (F::one() - q)
    }

    /// Q(eps_N) = eps^2/(1-eps^2).
    pub fn qsnr_negativity<F: Scalar>(eps: F) -> F {
        eps * eps / (F::one() - eps * eps)
    }

    /// Q(eps_L) = eps/(4(1-eps)).
    pub fn qsnr_linear_entropy<F: Scalar>(eps: F) -> F {
        eps / (fp::<F>(4.0) * (F::one() - eps))
    }

    /// The family expressed in the negativity.
    pub fn in_negativity<F: Scalar>(&self) -> Reparametrized<'_, F> {
        Reparametrized::new(self, vec![(F::zero(), F::one())], |e: &[F]| {
            vec![(F::one() - (F::one() - e[0] * e[0]).sqrt()) * fp(0.5)]
        })
        .with_jacobian(|e: &[F]| vec![vec![Self::dq_dnegativity(e[0])]])
    }

    /// The family expressed in the linear entropy.
    pub fn in_linear_entropy<F: Scalar>(&self) -> Reparametrized<'_, F> {
        Reparametrized::new(self, vec![(F::zero(), F::one())], |e: &[F]| {
            vec![(F::one() - (F::one() - e[0]).sqrt()) * fp(0.5)]
        })
        .with_jacobian(|e: &[F]| vec![vec![Self::dq_dlinear_entropy(e[0])]])
    }
}

fn check_measure<F: Scalar>(eps: F) -> Result<(), FamilyError> {
    if eps > F::zero() && eps < F::one() {
        Ok(())
    } else {
        Err(FamilyError::MeasureRange {
            value: eps.to_f64().unwrap_or(f64::NAN),
            lo: 0.0,
            hi: 1.0,
        })
    }
}

impl<F: Scalar> ParamFamily<F> for SchmidtFamily {
    fn arity(&self) -> usize {
        1
    }

    fn domain(&self) -> Vec<(F, F)> {
        vec![(F::zero(), F::one())]
    }

    fn density(&self, params: &[F]) -> Result<ComplexMatrix<F>, EstimationError> {
        self.check_params(params)?;
        Ok(ComplexMatrix::outer(&Self::state_vector(params[0])))
    }

    fn analytic_derivative(&self, params: &[F], _j: usize) -> Option<ComplexMatrix<F>> {
        let q = params[0];
        let v = Self::state_vector(q);
        let dv = Self::state_vector_derivative(q);
        let n = v.len();
        Some(ComplexMatrix::from_fn(n, n, |i, j| dv[i] * v[j].conj() + v[i] * dv[j].conj()))
    }
}
