//! Phase-space evaluation of the pure-state Fisher information.
//!
//! For a pure Gaussian family the SLD characteristic function is
//! 2 d(chi)/d(eps) = -(Gamma^T d(sigma) Gamma) chi, and Tr[rho L^2] becomes an
//! eight-dimensional Gaussian moment integral over the stacked coordinates
//! (Gamma_1, Gamma_2):
//!
//!   H = det(Delta)^{-1/2} [tr(S1 D) tr(S2 D) + 2 tr(S1 D S2 D)],  D = Delta^{-1},
//!
//! with Sigma = [[2s, s], [s, 2s]], S1/S2 carrying d(sigma) in one diagonal
//! block, and Delta = Sigma + i Ups where Ups = (sigma_y (x) I_2 (x) sigma_y)/2
//! carries the displacement composition phase. The quartic moment identity is
//! Wick's theorem continued to complex symmetric Delta on the principal
//! branch; the low-dimensional real case is cross-checked against
//! Gauss-Hermite quadrature in the tests, the complex case against the known
//! spectrum H(d) = d^{-2}.

use num_complex::Complex;

use crate::linalg::ComplexMatrix;
use crate::scalar::{cr, fp, tol, Scalar, C};

use super::{GaussianError, GaussianMeasure, TwoModeCovariance};

/// (sigma_y (x) I_2 (x) sigma_y) / 2: real symmetric with entries 0, +-1/2;
/// index = 4*copy + 2*mode + quadrature.
fn coupling_phase_matrix<F: Scalar>() -> ComplexMatrix<F> {
    let n = 8;
    let half = fp::<F>(0.5);
    // sigma_y entries as (value, imaginary) pairs: sigma_y[0][1] = -i, [1][0] = i
    let sy = |r: usize, c: usize| -> Option<F> {
        match (r, c) {
            (0, 1) => Some(-F::one()),
            (1, 0) => Some(F::one()),
            _ => None,
        }
    };
    ComplexMatrix::from_fn(n, n, |i, j| {
        let (ci, mi, xi) = (i / 4, (i / 2) % 2, i % 2);
        let (cj, mj, xj) = (j / 4, (j / 2) % 2, j % 2);
        if mi != mj {
            return cr(F::zero());
        }
        match (sy(ci, cj), sy(xi, xj)) {
            // (a i)(b i) = -ab: the product of the two imaginary factors is real
            (Some(a), Some(b)) => cr(-a * b * half),
            _ => cr(F::zero()),
        }
    })
}

/// The quartic Gaussian moment
/// integral over R^8 of (G^T S1 G)(G^T S2 G) exp(-G^T Delta G / 2) d^8G/(2pi)^4
/// = det(Delta)^{-1/2} [tr(S1 D) tr(S2 D) + 2 tr(S1 D S2 D)].
fn quartic_moment<F: Scalar>(
    s1: &ComplexMatrix<F>,
    s2: &ComplexMatrix<F>,
    delta: &ComplexMatrix<F>,
) -> Result<C<F>, GaussianError> {
    let dinv = delta.inverse().map_err(GaussianError::Linalg)?;
    let det = delta.det();
    // principal branch of det^{-1/2}
    let pref = (det.ln() * cr(-fp::<F>(0.5))).exp();
    let t1 = s1.matmul(&dinv).trace();
    let t2 = s2.matmul(&dinv).trace();
    let cross = s1.matmul(&dinv).matmul(s2).matmul(&dinv).trace();
    Ok(pref * (t1 * t2 + cross.scale(fp(2.0))))
}

fn embed_blocks<F: Scalar>(
    top_left: Option<&ComplexMatrix<F>>,
    top_right: Option<&ComplexMatrix<F>>,
    bottom_left: Option<&ComplexMatrix<F>>,
    bottom_right: Option<&ComplexMatrix<F>>,
) -> ComplexMatrix<F> {
    let mut m = ComplexMatrix::<F>::zeros(8, 8);
    let mut put = |block: Option<&ComplexMatrix<F>>, ro: usize, co: usize| {
        if let Some(b) = block {
            for i in 0..4 {
                for j in 0..4 {
                    m[(ro + i, co + j)] = b[(i, j)];
                }
            }
        }
    };
    put(top_left, 0, 0);
    put(top_right, 0, 4);
    put(bottom_left, 4, 0);
    put(bottom_right, 4, 4);
    m
}

/// Fisher information of a pure Gaussian family from its covariance matrix
/// and the covariance derivative along the parameter.
///
/// Rejects mixed states: purity requires det(sigma) = 1/16 in vacuum-1/2
/// units, and the SLD identification L = 2 d(rho) only holds then.
pub fn pure_qfi_phase_space<F: Scalar>(
    cm: &TwoModeCovariance<F>,
    dsigma: &ComplexMatrix<F>,
) -> Result<F, GaussianError> {
    cm.require_physical()?;
    let purity_dev = (cm.det() - fp::<F>(0.0625)).abs();
    if purity_dev > tol::<F>(1e-10) {
        return Err(GaussianError::NotPure {
            deviation: purity_dev.to_f64().unwrap_or(f64::NAN),
        });
    }
    let s = cm.matrix();
    let s2 = s.scale_re(fp(2.0));
    let sigma_big = embed_blocks(Some(&s2), Some(&s), Some(&s), Some(&s2));
    let m1 = embed_blocks(Some(dsigma), None, None, None);
    let m2 = embed_blocks(None, None, None, Some(dsigma));
    let ups = coupling_phase_matrix::<F>();
    let i = Complex::new(F::zero(), F::one());
    let delta = ComplexMatrix::from_fn(8, 8, |r, c| sigma_big[(r, c)] + ups[(r, c)] * i);
    let val = quartic_moment(&m1, &m2, &delta)?;
    let scale = F::one().max(val.re.abs());
    if val.im.abs() > tol::<F>(1e-9) * scale {
        return Err(GaussianError::ImaginaryResidue {
            residue: val.im.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(val.re)
}

/// Fisher information of the twin-beam family parametrized by an
/// entanglement measure, via the chain rule sigma(d(eps)).
pub fn twin_beam_qfi<F: Scalar>(measure: GaussianMeasure, eps: F) -> Result<F, GaussianError> {
    let d = measure.dtilde_from(eps)?;
    let dd_deps = measure.ddtilde_deps(eps)?;
    let cm = TwoModeCovariance::twin_beam_from_dtilde(d)?;
    // d(sigma)/d(dtilde): da/dd = (1 - 1/(4 d^2))/2, dc/dd = da/dd - 1
    let da = (F::one() - (fp::<F>(4.0) * d * d).recip()) * fp(0.5);
    let dc = da - F::one();
    let mut ds = ComplexMatrix::<F>::zeros(4, 4);
    ds[(0, 0)] = cr(da);
    ds[(1, 1)] = cr(da);
    ds[(2, 2)] = cr(da);
    ds[(3, 3)] = cr(da);
    ds[(0, 2)] = cr(dc);
    ds[(2, 0)] = cr(dc);
    ds[(1, 3)] = cr(-dc);
    ds[(3, 1)] = cr(-dc);
    let ds_eps = ds.scale_re(dd_deps);
    pure_qfi_phase_space(&cm, &ds_eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cf;

    type M = ComplexMatrix<f64>;

    #[test]
    fn coupling_matrix_structure() {
        let u = coupling_phase_matrix::<f64>();
        assert!(u.max_asymmetry() < 1e-15);
        for i in 0..8 {
            for j in 0..8 {
                let v = u[(i, j)];
                assert_eq!(v.im, 0.0);
                assert!(v.re == 0.0 || v.re.abs() == 0.5);
            }
        }
        // couples only the two copies, never within one copy
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(u[(i, j)], cf(0.0, 0.0));
                assert_eq!(u[(i + 4, j + 4)], cf(0.0, 0.0));
            }
        }
    }

    #[test]
    fn quartic_moment_matches_quadrature_in_2d() {
        // real 2x2 case against a 3-point Gauss-Hermite tensor grid, exact
        // for the quartic integrand
        let delta = M::from_rows(&[vec![cf(1.3, 0.0), cf(0.4, 0.0)], vec![cf(0.4, 0.0), cf(2.1, 0.0)]]);
        let s1 = M::from_rows(&[vec![cf(0.7, 0.0), cf(-0.2, 0.0)], vec![cf(-0.2, 0.0), cf(1.1, 0.0)]]);
        let s2 = M::from_rows(&[vec![cf(0.5, 0.0), cf(0.3, 0.0)], vec![cf(0.3, 0.0), cf(-0.9, 0.0)]]);
        let closed = quartic_moment(&s1, &s2, &delta).unwrap();

        // diagonalize delta = V diag(l) V^T, substitute x = V y / sqrt(l)
        let eig = crate::linalg::hermitian_eig(&delta).unwrap();
        let nodes = [-(1.5_f64).sqrt(), 0.0, (1.5_f64).sqrt()];
        let weights = [
            std::f64::consts::PI.sqrt() / 6.0,
            2.0 * std::f64::consts::PI.sqrt() / 3.0,
            std::f64::consts::PI.sqrt() / 6.0,
        ];
        let mut total = 0.0;
        for (ti, wi) in nodes.iter().zip(weights) {
            for (tj, wj) in nodes.iter().zip(weights) {
                // y = sqrt(2) t, x = V diag(1/sqrt(l)) y
                let y = [2.0_f64.sqrt() * ti, 2.0_f64.sqrt() * tj];
                let mut x = [0.0_f64; 2];
                for r in 0..2 {
                    for c in 0..2 {
                        x[r] += eig.eigenvectors[(r, c)].re * y[c]
                            / eig.eigenvalues[c].sqrt();
                    }
                }
                let quad = |m: &M| -> f64 {
                    let mut acc = 0.0;
                    for r in 0..2 {
                        for c in 0..2 {
                            acc += x[r] * m[(r, c)].re * x[c];
                        }
                    }
                    acc
                };
                total += wi * wj * quad(&s1) * quad(&s2);
            }
        }
        // measure d^2x/(2pi): jacobian det = prod(1/sqrt(l)) * 2 (from y = sqrt2 t)
        let jac: f64 = 2.0 / (eig.eigenvalues[0] * eig.eigenvalues[1]).sqrt();
        let quadrature = total * jac / (2.0 * std::f64::consts::PI);
        assert!(
            (closed.re - quadrature).abs() < 1e-12 * quadrature.abs().max(1.0),
            "closed {closed} vs quadrature {quadrature}"
        );
        assert!(closed.im.abs() < 1e-15);
    }

    #[test]
    fn twin_beam_spectrum_identity() {
        // H(d) = 1/d^2 pins the copy/mode/quadrature ordering of the phase
        // coupling; any other ordering fails this.
        for d in [0.05_f64, 0.1, 0.2, 0.3, 0.45, 0.4999] {
            let h = twin_beam_qfi(GaussianMeasure::SymplecticEig, d).unwrap();
            let expect = d.powi(-2);
            assert!((h - expect).abs() / expect < 1e-10, "d={d}: {h} vs {expect}");
        }
    }

    #[test]
    fn log_negativity_route_is_flat() {
        for e in [0.1_f64, 0.5, 1.0, 2.0] {
            let h = twin_beam_qfi(GaussianMeasure::LogNegativity, e).unwrap();
            assert!((h - 1.0).abs() < 1e-10, "eps={e}: {h}");
        }
    }

    #[test]
    fn linear_entropy_route_matches_chain_rule() {
        for e in [0.1_f64, 0.3, 0.5, 0.7] {
            let h = twin_beam_qfi(GaussianMeasure::LinearEntropy, e).unwrap();
            let expect = ((2.0 - e) * (1.0 - e) * (1.0 - e) * e).recip();
            assert!((h - expect).abs() / expect < 1e-10, "eps={e}: {h} vs {expect}");
        }
    }

    #[test]
    fn mixed_states_rejected() {
        let cm = TwoModeCovariance::squeezed_thermal(0.5_f64, 0.5).unwrap();
        let ds = M::identity(4);
        assert!(matches!(
            pure_qfi_phase_space(&cm, &ds),
            Err(GaussianError::NotPure { .. })
        ));
    }
}
