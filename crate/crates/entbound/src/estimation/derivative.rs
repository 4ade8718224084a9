//! Parameter derivatives of density matrices.
//!
//! Analytic derivatives are used when the family provides them; otherwise
//! symmetric central differences with step `max(1e-5, 1e-5 |lambda|)`. Near a
//! domain boundary a second-order one-sided difference is used and flagged.

use crate::linalg::ComplexMatrix;
use crate::scalar::{fp, tol, Scalar};

use super::{EstimationError, ParamFamily};

#[derive(Clone, Debug)]
pub struct DerivativeOutcome<F: Scalar> {
    pub matrix: ComplexMatrix<F>,
    /// Set when a boundary forced a one-sided stencil.
    pub one_sided: bool,
    /// Set when the family supplied the derivative analytically.
    pub analytic: bool,
}

fn fd_step<F: Scalar>(x: F) -> F {
    fp::<F>(1e-5).max(fp::<F>(1e-5) * x.abs())
}

fn with_param<F: Scalar>(params: &[F], j: usize, value: F) -> Vec<F> {
    let mut p = params.to_vec();
    p[j] = value;
    p
}

/// Validate that a derivative of a density matrix is Hermitian and traceless.
fn check_derivative<F: Scalar>(d: &ComplexMatrix<F>) -> Result<(), EstimationError> {
    let scale = F::one().max(d.max_abs());
    let dev = d.max_asymmetry().max(d.trace().norm());
    if dev > tol::<F>(5e-9) * scale {
        return Err(EstimationError::BadDerivative { deviation: dev.to_f64().unwrap_or(f64::NAN) });
    }
    Ok(())
}

/// d(rho)/d(lambda_j) at `params`.
pub fn state_derivative<F: Scalar>(
    family: &dyn ParamFamily<F>,
    params: &[F],
    j: usize,
) -> Result<DerivativeOutcome<F>, EstimationError> {
    family.check_params(params)?;
    if let Some(d) = family.analytic_derivative(params, j) {
        check_derivative(&d)?;
        return Ok(DerivativeOutcome { matrix: d, one_sided: false, analytic: true });
    }
    finite_difference(family, params, j, fd_step(params[j]))
}

fn finite_difference<F: Scalar>(
    family: &dyn ParamFamily<F>,
    params: &[F],
    j: usize,
    h: F,
) -> Result<DerivativeOutcome<F>, EstimationError> {
    let (lo, hi) = family.domain()[j];
    let x = params[j];
    let two = fp::<F>(2.0);
    let matrix;
    let mut one_sided = false;
    if x - h > lo && x + h < hi {
        let plus = family.density(&with_param(params, j, x + h))?;
        let minus = family.density(&with_param(params, j, x - h))?;
        matrix = (&plus - &minus).scale_re((two * h).recip());
    } else if x + two * h < hi {
        // left boundary: f'(x) ~ (-3 f(x) + 4 f(x+h) - f(x+2h)) / (2h)
        let f0 = family.density(params)?;
        let f1 = family.density(&with_param(params, j, x + h))?;
        let f2 = family.density(&with_param(params, j, x + two * h))?;
        let num = &(&f1.scale_re(fp(4.0)) - &f0.scale_re(fp(3.0))) - &f2;
        matrix = num.scale_re((two * h).recip());
        one_sided = true;
    } else if x - two * h > lo {
        let f0 = family.density(params)?;
        let f1 = family.density(&with_param(params, j, x - h))?;
        let f2 = family.density(&with_param(params, j, x - two * h))?;
        let num = &(&f0.scale_re(fp(3.0)) - &f1.scale_re(fp(4.0))) + &f2;
        matrix = num.scale_re((two * h).recip());
        one_sided = true;
    } else {
        return Err(EstimationError::OutsideDomain {
            index: j,
            value: x.to_f64().unwrap_or(f64::NAN),
            lo: lo.to_f64().unwrap_or(f64::NAN),
            hi: hi.to_f64().unwrap_or(f64::NAN),
        });
    }
    check_derivative(&matrix)?;
    Ok(DerivativeOutcome { matrix, one_sided, analytic: false })
}

/// Richardson-extrapolated central difference: (4 D(h/2) - D(h)) / 3.
///
/// Fallback used when the two Fisher-information routes disagree beyond the
/// step-size error budget.
pub fn state_derivative_richardson<F: Scalar>(
    family: &dyn ParamFamily<F>,
    params: &[F],
    j: usize,
) -> Result<DerivativeOutcome<F>, EstimationError> {
    family.check_params(params)?;
    if let Some(d) = family.analytic_derivative(params, j) {
        check_derivative(&d)?;
        return Ok(DerivativeOutcome { matrix: d, one_sided: false, analytic: true });
    }
    let h = fd_step(params[j]);
    let coarse = finite_difference(family, params, j, h)?;
    let fine = finite_difference(family, params, j, h * fp(0.5))?;
    if coarse.one_sided || fine.one_sided {
        return Ok(fine);
    }
    let third = fp::<F>(3.0).recip();
    let matrix = (&fine.matrix.scale_re(fp(4.0)) - &coarse.matrix).scale_re(third);
    Ok(DerivativeOutcome { matrix, one_sided: false, analytic: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::scalar::cr;

    /// diag(q, 1-q) with analytic derivative available on demand.
    struct DiagFamily {
        analytic: bool,
    }

    impl ParamFamily<f64> for DiagFamily {
        fn arity(&self) -> usize {
            1
        }
        fn domain(&self) -> Vec<(f64, f64)> {
            vec![(0.0, 1.0)]
        }
        fn density(&self, p: &[f64]) -> Result<ComplexMatrix<f64>, EstimationError> {
            Ok(ComplexMatrix::from_diag(&[p[0], 1.0 - p[0]]))
        }
        fn analytic_derivative(&self, _p: &[f64], _j: usize) -> Option<ComplexMatrix<f64>> {
            self.analytic.then(|| ComplexMatrix::from_diag(&[1.0, -1.0]))
        }
    }

    struct ConstantFamily;

    impl ParamFamily<f64> for ConstantFamily {
        fn arity(&self) -> usize {
            1
        }
        fn domain(&self) -> Vec<(f64, f64)> {
            vec![(0.0, 1.0)]
        }
        fn density(&self, _p: &[f64]) -> Result<ComplexMatrix<f64>, EstimationError> {
            Ok(ComplexMatrix::from_diag(&[0.5, 0.5]))
        }
    }

    #[test]
    fn constant_family_has_zero_derivative() {
        let d = state_derivative(&ConstantFamily, &[0.4], 0).unwrap();
        assert!(d.matrix.max_abs() < 1e-12);
        assert!(!d.analytic && !d.one_sided);
    }

    #[test]
    fn central_difference_matches_analytic() {
        let fd = state_derivative(&DiagFamily { analytic: false }, &[0.3], 0).unwrap();
        let an = state_derivative(&DiagFamily { analytic: true }, &[0.3], 0).unwrap();
        assert!(an.analytic);
        assert!((&fd.matrix - &an.matrix).max_abs() < 1e-9);
    }

    #[test]
    fn boundary_point_uses_one_sided_stencil() {
        let d = state_derivative(&DiagFamily { analytic: false }, &[1e-7], 0).unwrap();
        assert!(d.one_sided);
        assert!((d.matrix[(0, 0)].re - 1.0).abs() < 1e-6);
    }

    #[test]
    fn richardson_refines_central_difference() {
        let d = state_derivative_richardson(&DiagFamily { analytic: false }, &[0.3], 0).unwrap();
        assert!((d.matrix[(0, 0)].re - 1.0).abs() < 1e-11);
        assert!((d.matrix[(1, 1)].re + 1.0).abs() < 1e-11);
        assert_eq!(d.matrix[(0, 1)], cr(0.0));
    }
}
