//! Symmetric logarithmic derivative and quantum Fisher information.
//!
//! Everything is computed in the eigenbasis of the state. For an eigenvalue
//! pair (p_n, p_m) the SLD matrix element is 2 <n|d rho|m> / (p_n + p_m);
//! pairs with p_n + p_m below the kernel cutoff are dropped and counted. The
//! Fisher information is evaluated through two independent routes (the
//! eigenbasis double sum and the trace form with the explicit SLD) whose
//! residual disagreement is reported.



use crate::linalg::{hermitian_eig, require_density, ComplexMatrix, SpectralDecomposition};
use crate::scalar::{cr, fp, tol, Scalar};

use super::{
    kernel_cutoff, state_derivative, state_derivative_richardson, EstimationError, ParamFamily,
};

/// SLD operator together with the number of kernel terms dropped.
#[derive(Clone, Debug)]
pub struct SldResult<F: Scalar> {
    pub l: ComplexMatrix<F>,
    pub truncated_pairs: usize,
}

/// Scalar Fisher information with route diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct ScalarQfi<F: Scalar> {
    /// Eigen-sum value (the reference route).
    pub value: F,
    /// Relative disagreement between the eigen-sum and trace routes.
    pub route_delta: F,
    pub truncated_pairs: usize,
}

/// SLD from a precomputed spectral decomposition.
pub fn sld_from_parts<F: Scalar>(
    eig: &SpectralDecomposition<F>,
    drho: &ComplexMatrix<F>,
    cutoff: F,
) -> SldResult<F> {
    let n = eig.eigenvalues.len();
    let v = &eig.eigenvectors;
    let d = v.adjoint().matmul(drho).matmul(v);
    let mut l = ComplexMatrix::<F>::zeros(n, n);
    let mut truncated = 0usize;
    let two = fp::<F>(2.0);
    for a in 0..n {
        for b in 0..n {
            let den = eig.eigenvalues[a] + eig.eigenvalues[b];
            if den < cutoff {
                truncated += 1;
                continue;
            }
            l[(a, b)] = d[(a, b)].scale(two / den);
        }
    }
    SldResult { l: l.conjugate_by(v), truncated_pairs: truncated }
}

/// Symmetric logarithmic derivative of a state along a tangent direction.
pub fn sld<F: Scalar>(
    rho: &ComplexMatrix<F>,
    drho: &ComplexMatrix<F>,
    cutoff: F,
) -> Result<SldResult<F>, EstimationError> {
    require_density(rho)?;
    let scale = F::one().max(drho.max_abs());
    drho.require_hermitian(tol::<F>(1e-8) * scale)?;
    let eig = hermitian_eig(rho)?;
    Ok(sld_from_parts(&eig, drho, cutoff))
}

/// Fisher matrix from a spectral decomposition and tangent directions; the
/// double sum over eigenvalue pairs. Works on unnormalized blocks, which is
/// what the Fock-truncation oracles feed in sector by sector.
pub fn qfi_from_parts<F: Scalar>(
    eig: &SpectralDecomposition<F>,
    drhos: &[&ComplexMatrix<F>],
    cutoff: F,
) -> (ComplexMatrix<F>, usize) {
    let n = eig.eigenvalues.len();
    let k = drhos.len();
    let v = &eig.eigenvectors;
    let ds: Vec<ComplexMatrix<F>> =
        drhos.iter().map(|d| v.adjoint().matmul(d).matmul(v)).collect();
    let mut h = ComplexMatrix::<F>::zeros(k, k);
    let mut truncated = 0usize;
    let two = fp::<F>(2.0);
    for a in 0..n {
        for b in 0..n {
            let den = eig.eigenvalues[a] + eig.eigenvalues[b];
            if den < cutoff {
                truncated += 1;
                continue;
            }
            let w = two / den;
            for i in 0..k {
                for j in i..k {
                    let term = (ds[i][(a, b)] * ds[j][(b, a)]).re * w;
                    h[(i, j)] = h[(i, j)] + cr(term);
                }
            }
        }
    }
    for i in 0..k {
        for j in 0..i {
            h[(i, j)] = h[(j, i)];
        }
    }
    (h, truncated)
}

/// Trace-route Fisher matrix: H_ij = Re Tr[rho L_i L_j] (the symmetrized
/// anticommutator form, since the real part symmetrizes).
fn qfi_trace_route<F: Scalar>(
    rho: &ComplexMatrix<F>,
    eig: &SpectralDecomposition<F>,
    drhos: &[&ComplexMatrix<F>],
    cutoff: F,
) -> ComplexMatrix<F> {
    let k = drhos.len();
    let slds: Vec<ComplexMatrix<F>> =
        drhos.iter().map(|d| sld_from_parts(eig, d, cutoff).l).collect();
    let mut h = ComplexMatrix::<F>::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let prod = rho.matmul(&slds[i]).matmul(&slds[j]);
            h[(i, j)] = cr(prod.trace().re);
        }
    }
    // symmetrize: Tr[rho {L_i, L_j}]/2
    let half = fp::<F>(0.5);
    ComplexMatrix::from_fn(k, k, |i, j| (h[(i, j)] + h[(j, i)]).scale(half))
}

fn relative_delta<F: Scalar>(a: &ComplexMatrix<F>, b: &ComplexMatrix<F>) -> F {
    let scale = a.max_abs().max(b.max_abs()).max(tol::<F>(1e-300));
    (a - b).max_abs() / scale
}

/// Scalar quantum Fisher information for a state and one tangent direction.
pub fn qfi_scalar<F: Scalar>(
    rho: &ComplexMatrix<F>,
    drho: &ComplexMatrix<F>,
) -> Result<ScalarQfi<F>, EstimationError> {
    require_density(rho)?;
    let scale = F::one().max(drho.max_abs());
    drho.require_hermitian(tol::<F>(1e-8) * scale)?;
    let eig = hermitian_eig(rho)?;
    let cutoff = kernel_cutoff::<F>();
    let (h, truncated) = qfi_from_parts(&eig, &[drho], cutoff);
    let h_trace = qfi_trace_route(rho, &eig, &[drho], cutoff);
    Ok(ScalarQfi {
        value: h[(0, 0)].re,
        route_delta: relative_delta(&h, &h_trace),
        truncated_pairs: truncated,
    })
}

/// Quantum Fisher information matrix with variance bounds.
#[derive(Clone, Debug)]
pub struct QfiResult<F: Scalar> {
    h: ComplexMatrix<F>,
    h_inv: ComplexMatrix<F>,
    var_bounds: Vec<F>,
    singular: bool,
    route_delta: F,
    truncated_pairs: usize,
}

impl<F: Scalar> QfiResult<F> {
    /// Wrap a symmetric Fisher matrix, inverting by eigen-pseudo-inverse with
    /// threshold `1e-10 * max eigenvalue`; directions below threshold set the
    /// singular flag.
    pub fn from_matrix(
        h: ComplexMatrix<F>,
        route_delta: F,
        truncated_pairs: usize,
    ) -> Result<Self, EstimationError> {
        let eig = hermitian_eig(&h)?;
        let top = eig.eigenvalues.iter().fold(F::zero(), |m, &x| m.max(x.abs()));
        let threshold = fp::<F>(1e-10) * top.max(tol::<F>(1e-300));
        let singular = eig.eigenvalues.iter().any(|&x| x < threshold);
        let h_inv = eig.apply(|x| if x < threshold { cr(F::zero()) } else { cr(x.recip()) });
        let n = h.rows();
        let var_bounds = (0..n).map(|i| h_inv[(i, i)].re).collect();
        Ok(Self { h, h_inv, var_bounds, singular, route_delta, truncated_pairs })
    }

    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    /// The Fisher matrix itself.
    pub fn h(&self) -> &ComplexMatrix<F> {
        &self.h
    }

    /// Pseudo-inverse of the Fisher matrix.
    pub fn h_inv(&self) -> &ComplexMatrix<F> {
        &self.h_inv
    }

    /// Achievable single-parameter variance bounds: the diagonal of the
    /// inverse Fisher matrix.
    pub fn var_bounds(&self) -> &[F] {
        &self.var_bounds
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn route_delta(&self) -> F {
        self.route_delta
    }

    pub fn truncated_pairs(&self) -> usize {
        self.truncated_pairs
    }

    pub fn h_entry(&self, i: usize, j: usize) -> F {
        self.h[(i, j)].re
    }

    pub fn h_inv_entry(&self, i: usize, j: usize) -> F {
        self.h_inv[(i, j)].re
    }
}

/// Numeric Fisher information matrix of a parametrized family.
///
/// Derivatives come from the family (analytic when available, otherwise
/// central differences). If the two computation routes disagree beyond 1e-6
/// relative, finite differences are retried with Richardson extrapolation.
pub fn qfi_matrix<F: Scalar>(
    family: &dyn ParamFamily<F>,
    params: &[F],
) -> Result<QfiResult<F>, EstimationError> {
    family.check_params(params)?;
    let rho = family.density(params)?;
    require_density(&rho)?;
    let eig = hermitian_eig(&rho)?;
    let cutoff = kernel_cutoff::<F>();

    let n = family.arity();
    let mut derivs = Vec::with_capacity(n);
    let mut any_fd = false;
    for j in 0..n {
        let d = state_derivative(family, params, j)?;
        any_fd |= !d.analytic;
        derivs.push(d.matrix);
    }

    let build = |ds: &[ComplexMatrix<F>]| -> Result<(ComplexMatrix<F>, usize, F), EstimationError> {
        let refs: Vec<&ComplexMatrix<F>> = ds.iter().collect();
        let (h, truncated) = qfi_from_parts(&eig, &refs, cutoff);
        let h_trace = qfi_trace_route(&rho, &eig, &refs, cutoff);
        let delta = relative_delta(&h_trace, &h);
        Ok((h, truncated, delta))
    };

    let (mut h, mut truncated, mut delta) = build(&derivs)?;
    if delta > tol::<F>(1e-6) && any_fd {
        let mut refined = Vec::with_capacity(n);
        for j in 0..n {
            refined.push(state_derivative_richardson(family, params, j)?.matrix);
        }
        let (h2, t2, d2) = build(&refined)?;
        if d2 < delta {
            h = h2;
            truncated = t2;
            delta = d2;
        }
    }
    QfiResult::from_matrix(h, delta, truncated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cf;

    type M = ComplexMatrix<f64>;

    fn schmidt_vec(q: f64) -> Vec<num_complex::Complex<f64>> {
        vec![cf(q.sqrt(), 0.0), cf(0.0, 0.0), cf(0.0, 0.0), cf((1.0 - q).sqrt(), 0.0)]
    }

    fn schmidt_rho(q: f64) -> M {
        M::outer(&schmidt_vec(q))
    }

    fn schmidt_drho(q: f64) -> M {
        let v = schmidt_vec(q);
        let dv = vec![
            cf(0.5 / q.sqrt(), 0.0),
            cf(0.0, 0.0),
            cf(0.0, 0.0),
            cf(-0.5 / (1.0 - q).sqrt(), 0.0),
        ];
        let mut m = M::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = dv[i] * v[j].conj() + v[i] * dv[j].conj();
            }
        }
        m
    }

    #[test]
    fn commuting_diagonal_sld() {
        let rho = M::from_diag(&[0.3, 0.7]);
        let drho = M::from_diag(&[1.0, -1.0]);
        let r = sld(&rho, &drho, kernel_cutoff()).unwrap();
        assert!((r.l[(0, 0)].re - 1.0 / 0.3).abs() < 1e-12);
        assert!((r.l[(1, 1)].re + 1.0 / 0.7).abs() < 1e-12);
        assert_eq!(r.truncated_pairs, 0);
    }

    #[test]
    fn pure_family_sld_is_twice_derivative() {
        let q = 0.3;
        let r = sld(&schmidt_rho(q), &schmidt_drho(q), kernel_cutoff()).unwrap();
        // L = 2 d(rho) on the support+tangent subspace; check the Lyapunov
        // residual instead of entrywise equality (kernel terms are free).
        let rho = schmidt_rho(q);
        let lhs = (&r.l.matmul(&rho) + &rho.matmul(&r.l)).scale_re(0.5);
        assert!((&lhs - &schmidt_drho(q)).max_abs() < 1e-8);
        let direct = schmidt_drho(q).scale_re(2.0);
        assert!((&r.l - &direct).max_abs() < 1e-8);
    }

    #[test]
    fn schmidt_qfi_matches_closed_form() {
        for q in [0.1, 0.5, 0.9] {
            let r = qfi_scalar(&schmidt_rho(q), &schmidt_drho(q)).unwrap();
            let expect = 1.0 / (q * (1.0 - q));
            assert!((r.value - expect).abs() / expect < 1e-10, "q={q}");
            assert!(r.route_delta < 1e-10);
        }
    }

    #[test]
    fn constant_direction_gives_zero() {
        let rho = M::from_diag(&[0.25, 0.25, 0.25, 0.25]);
        let drho = M::zeros(4, 4);
        let r = qfi_scalar(&rho, &drho).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn rejects_non_hermitian_direction() {
        let rho = M::from_diag(&[0.5, 0.5]);
        let mut drho = M::zeros(2, 2);
        drho[(0, 1)] = cf(1.0, 0.0);
        assert!(sld(&rho, &drho, kernel_cutoff()).is_err());
    }

    #[test]
    fn pseudo_inverse_flags_singular_directions() {
        let h = M::from_diag(&[4.0, 0.0]);
        let r = QfiResult::from_matrix(h, 0.0, 0).unwrap();
        assert!(r.is_singular());
        assert!((r.var_bounds()[0] - 0.25).abs() < 1e-14);
        assert_eq!(r.var_bounds()[1], 0.0);
    }

    #[test]
    fn reparametrize_identity_is_noop() {
        let h = M::from_diag(&[4.0, 9.0]);
        let r = QfiResult::from_matrix(h, 0.0, 0).unwrap();
        let same = super::super::reparametrize(&r, &super::super::TransferMatrix::identity(2)).unwrap();
        assert!((same.h_entry(0, 0) - 4.0).abs() < 1e-14);
        assert!((same.h_entry(1, 1) - 9.0).abs() < 1e-14);
    }
}
