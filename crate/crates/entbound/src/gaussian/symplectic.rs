//! Symplectic spectra of standard-form covariance matrices and the Gaussian
//! characteristic function.

use num_complex::Complex;

use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::scalar::{fp, Scalar};

use super::{GaussianError, TwoModeCovariance};

/// Symplectic eigenvalues (d_minus, d_plus) of a standard-form covariance
/// matrix via the symplectic invariants:
/// d^2 = [Delta -/+ sqrt(Delta^2 - 4 det)] / 2 with Delta = a^2 + b^2 + 2 c+ c-.
///
/// Returns `None` when the discriminant or a squared eigenvalue goes
/// negative, i.e. the matrix has no real symplectic spectrum.
pub(super) fn symplectic_eigs_of<F: Scalar>(a: F, b: F, c_plus: F, c_minus: F) -> Option<(F, F)> {
    let two = fp::<F>(2.0);
    let delta = a * a + b * b + two * c_plus * c_minus;
    let det = (a * b - c_plus * c_plus) * (a * b - c_minus * c_minus);
    let disc = delta * delta - fp::<F>(4.0) * det;
    if disc < F::zero() {
        return None;
    }
    let root = disc.sqrt();
    let lo = (delta - root) / two;
    let hi = (delta + root) / two;
    if lo < F::zero() {
        return None;
    }
    Some((lo.sqrt(), hi.sqrt()))
}

/// Symplectic eigenvalues of the covariance matrix itself.
pub fn symplectic_eigs<F: Scalar>(cm: &TwoModeCovariance<F>) -> Result<(F, F), GaussianError> {
    symplectic_eigs_of(cm.a, cm.b, cm.c_plus, cm.c_minus).ok_or_else(|| GaussianError::Unphysical {
        reason: "complex symplectic spectrum".into(),
    })
}

/// General matrix route to the least partial-transpose symplectic eigenvalue:
/// the spectrum of sqrt(s) (i Omega) sqrt(s) for s the partially transposed
/// covariance matrix comes in pairs (-d, d); the smallest magnitude is
/// d-tilde. Cross-checks the closed form.
pub fn min_symplectic_pt_numeric<F: Scalar>(
    cm: &TwoModeCovariance<F>,
) -> Result<F, GaussianError> {
    // sigma^T_B: flip the sign of the p_2 row/column
    let mut s = cm.matrix();
    for k in 0..4 {
        s[(3, k)] = -s[(3, k)];
        s[(k, 3)] = -s[(k, 3)];
    }
    let eig = hermitian_eig(&s)?;
    if eig.eigenvalues[0] <= F::zero() {
        return Err(GaussianError::Unphysical {
            reason: "partially transposed covariance matrix is not positive".into(),
        });
    }
    let sqrt_s = eig.apply(|x| crate::scalar::cr(x.sqrt()));
    // i Omega in (q1, p1, q2, p2) ordering
    let mut iom = ComplexMatrix::<F>::zeros(4, 4);
    let i = Complex::new(F::zero(), F::one());
    iom[(0, 1)] = i;
    iom[(1, 0)] = -i;
    iom[(2, 3)] = i;
    iom[(3, 2)] = -i;
    let m = sqrt_s.matmul(&iom).matmul(&sqrt_s);
    let spec = hermitian_eig(&m)?;
    let dmin = spec
        .eigenvalues
        .iter()
        .map(|x| x.abs())
        .fold(F::infinity(), F::min);
    Ok(dmin)
}

/// Characteristic function of a zero-mean Gaussian state at phase-space
/// point gamma: exp(-gamma^T sigma gamma / 2).
pub fn char_fn<F: Scalar>(cm: &TwoModeCovariance<F>, gamma: &[F; 4]) -> F {
    let s = cm.matrix();
    let mut quad = F::zero();
    for i in 0..4 {
        for j in 0..4 {
            quad = quad + gamma[i] * s[(i, j)].re * gamma[j];
        }
    }
    (-quad * fp::<F>(0.5)).exp()
}
