//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Deterministic, no randomization: identical input always yields identical
//! output. Eigenvalues are returned ascending, eigenvector phases are fixed by
//! making the largest-magnitude component real and positive.

use num_complex::Complex;

use crate::scalar::{cr, fp, tol, Scalar, C};

use super::matrix::ComplexMatrix;
use super::LinalgError;

/// Eigenvalues (ascending) and the unitary matrix of column eigenvectors.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition<F: Scalar> {
    pub eigenvalues: Vec<F>,
    pub eigenvectors: ComplexMatrix<F>,
}

impl<F: Scalar> SpectralDecomposition<F> {
    /// Reconstruct V diag(f(lambda)) V^dagger.
    pub fn apply(&self, f: impl Fn(F) -> C<F>) -> ComplexMatrix<F> {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for j in 0..n {
            let s = f(self.eigenvalues[j]);
            for i in 0..n {
                scaled[(i, j)] = v[(i, j)] * s;
            }
        }
        scaled.matmul(&v.adjoint())
    }

    /// Reconstruct the original matrix.
    pub fn reconstruct(&self) -> ComplexMatrix<F> {
        self.apply(cr)
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C<F>> {
        self.eigenvectors.column(k)
    }
}

/// Default elementwise Hermiticity tolerance for validated inputs.
pub fn hermiticity_tolerance<F: Scalar>() -> F {
    tol::<F>(1e-12)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Input asymmetry beyond `hermiticity_tolerance` (scaled by the matrix
/// magnitude) is rejected with the worst offending deviation.
pub fn hermitian_eig<F: Scalar>(m: &ComplexMatrix<F>) -> Result<SpectralDecomposition<F>, LinalgError> {
    let scale = F::one().max(m.max_abs());
    m.require_hermitian(hermiticity_tolerance::<F>() * scale)?;
    Ok(hermitian_eig_unchecked(m))
}

/// Same as [`hermitian_eig`] but trusts the caller on Hermiticity; only the
/// lower triangle and real diagonal parts are read.
pub fn hermitian_eig_unchecked<F: Scalar>(m: &ComplexMatrix<F>) -> SpectralDecomposition<F> {
    let n = m.rows();
    let mut a = m.clone();
    // Symmetrize exactly so rounding noise cannot bias the sweep.
    for i in 0..n {
        a[(i, i)] = cr(a[(i, i)].re);
        for j in i + 1..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()).scale(fp(0.5));
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::<F>::identity(n);

    let off = |a: &ComplexMatrix<F>| -> F {
        let mut s = F::zero();
        for i in 0..n {
            for j in i + 1..n {
                s = s + a[(i, j)].norm_sqr();
            }
        }
        s
    };

    let eps = F::epsilon();
    let scale = F::one().max(a.max_abs());
    let target = eps * eps * scale * scale * fp::<F>(n as f64) * fp::<F>(n as f64);
    let max_sweeps = 64;
    for _ in 0..max_sweeps {
        if off(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= eps * scale * fp(1e-3) {
                    continue;
                }
                // Unitary plane rotation R = [[c, -conj(s)], [s, c]] on the
                // (p,q) plane zeroing a_pq; the complex case reduces to the
                // real Jacobi problem after factoring out the phase of a_pq.
                let phase = apq / cr(mag);
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (mag + mag);
                // smaller-magnitude root of t^2 - 2 tau t - 1 = 0
                let t = if tau >= F::zero() {
                    -F::one() / (tau + (F::one() + tau * tau).sqrt())
                } else {
                    F::one() / (-tau + (F::one() + tau * tau).sqrt())
                };
                let c = F::one() / (F::one() + t * t).sqrt();
                let s = phase.conj().scale(t * c);
                // rows: (A_pj, A_qj) <- (c A_pj + conj(s) A_qj, -s A_pj + c A_qj)
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj.scale(c) + aqj * s.conj();
                    a[(q, j)] = aqj.scale(c) - apj * s;
                }
                // columns: (A_ip, A_iq) <- (c A_ip + s A_iq, -conj(s) A_ip + c A_iq)
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip.scale(c) + aiq * s;
                    a[(i, q)] = aiq.scale(c) - aip * s.conj();
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip.scale(c) + viq * s;
                    v[(i, q)] = viq.scale(c) - vip * s.conj();
                }
                a[(p, q)] = Complex::new(F::zero(), F::zero());
                a[(q, p)] = Complex::new(F::zero(), F::zero());
                a[(p, p)] = cr(a[(p, p)].re);
                a[(q, q)] = cr(a[(q, q)].re);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<F> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("eigenvalue comparison"));

    let eigenvalues: Vec<F> = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = ComplexMatrix::<F>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let col = v.column(src);
        // Phase convention: largest-magnitude component real positive.
        let mut kmax = 0;
        let mut best = F::zero();
        for (k, z) in col.iter().enumerate() {
            let mag = z.norm();
            if mag > best {
                best = mag;
                kmax = k;
            }
        }
        let phase = if best > F::zero() { col[kmax] / cr(best) } else { cr(F::one()) };
        let inv_phase = phase.conj();
        for i in 0..n {
            eigenvectors[(i, dst)] = col[i] * inv_phase;
        }
    }
    SpectralDecomposition { eigenvalues, eigenvectors }
}

/// exp(i theta G) for an involution (G^2 = I): cos(theta) I + i sin(theta) G.
pub fn unitary_from_involution<F: Scalar>(
    g: &ComplexMatrix<F>,
    theta: F,
) -> Result<ComplexMatrix<F>, LinalgError> {
    let n = g.rows();
    let g2 = g.matmul(g);
    let dev = (&g2 - &ComplexMatrix::identity(n)).max_abs();
    if dev > tol::<F>(1e-12) {
        return Err(LinalgError::NotInvolution { deviation: dev.to_f64().unwrap_or(f64::NAN) });
    }
    let cos_part = ComplexMatrix::<F>::identity(n).scale(cr(theta.cos()));
    let sin_part = g.scale(Complex::new(F::zero(), theta.sin()));
    Ok(&cos_part + &sin_part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cf;

    type M = ComplexMatrix<f64>;

    fn pauli_x() -> M {
        M::from_rows(&[vec![cf(0.0, 0.0), cf(1.0, 0.0)], vec![cf(1.0, 0.0), cf(0.0, 0.0)]])
    }

    #[test]
    fn identity_spectrum() {
        let d = hermitian_eig(&M::identity(2)).unwrap();
        assert_eq!(d.eigenvalues, vec![1.0, 1.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let d = hermitian_eig(&pauli_x()).unwrap();
        assert!((d.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((d.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_asymmetric_input() {
        let mut m = M::identity(3);
        m[(0, 2)] = cf(0.1, 0.0);
        assert!(matches!(hermitian_eig(&m), Err(LinalgError::NotHermitian { .. })));
    }

    #[test]
    fn reconstruction_9x9() {
        // Deterministic pseudo-random Hermitian matrix.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let raw = M::from_fn(9, 9, |_, _| cf(next(), next()));
        let h = &raw + &raw.adjoint();
        let d = hermitian_eig(&h).unwrap();
        assert!((&d.reconstruct() - &h).max_abs() < 1e-10);
        let vtv = d.eigenvectors.adjoint().matmul(&d.eigenvectors);
        assert!((&vtv - &M::identity(9)).max_abs() < 1e-10);
        for w in d.eigenvalues.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn involution_unitary() {
        let g = pauli_x().kron(&pauli_x());
        let u = unitary_from_involution(&g, std::f64::consts::FRAC_PI_2).unwrap();
        // exp(i pi/2 G) = i G
        assert!((&u - &g.scale(cf(0.0, 1.0))).max_abs() < 1e-14);
        let u0 = unitary_from_involution(&g, 0.0).unwrap();
        assert!((&u0 - &M::identity(4)).max_abs() < 1e-15);
        let ur = unitary_from_involution(&g, 0.7321).unwrap();
        assert!((&ur.matmul(&ur.adjoint()) - &M::identity(4)).max_abs() < 1e-12);
    }

    #[test]
    fn involution_rejected() {
        let g = M::from_rows(&[vec![cf(1.0, 0.0), cf(1.0, 0.0)], vec![cf(0.0, 0.0), cf(1.0, 0.0)]]);
        assert!(matches!(
            unitary_from_involution(&g, 0.3),
            Err(LinalgError::NotInvolution { .. })
        ));
    }
}
