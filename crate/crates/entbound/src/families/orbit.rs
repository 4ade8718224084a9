//! Entangled mixtures generated by an entangling rotation of a classically
//! correlated two-qubit state.
//!
//! The family mixes weights (p, 1-p) on the orbit of exp(i arccos(sqrt q)
//! sigma_x (x) sigma_x): the two moving eigenvectors carry Schmidt weight q,
//! so the negativity is 2 sqrt(q(1-q)) |1-2p| and the Fisher matrix is
//! diag(1/(p(1-p)), (1-2p)^2/(q(1-q))). The angle convention arccos(sqrt q)
//! (rather than arccos q) is fixed by requiring exactly those two closed
//! forms of the numerics.

use crate::estimation::{EstimationError, ParamFamily, Reparametrized, TransferMatrix};
use crate::linalg::ComplexMatrix;
use crate::scalar::{cf, cr, fp, Scalar, C};

use super::{check_open_unit, ket4, zero_c, FamilyError};

#[derive(Clone, Copy, Debug, Default)]
pub struct OrbitFamily;

impl OrbitFamily {
    /// Rotated basis vector carrying weight p.
    fn vec0<F: Scalar>(q: F) -> Vec<C<F>> {
        let c = q.sqrt();
        let s = (F::one() - q).sqrt();
        ket4(cr(c), zero_c(), zero_c(), cf::<F>(0.0, 1.0).scale(s))
    }

    /// Orthogonal partner carrying weight 1-p.
    fn vec1<F: Scalar>(q: F) -> Vec<C<F>> {
        let c = q.sqrt();
        let s = (F::one() - q).sqrt();
        ket4(cf::<F>(0.0, 1.0).scale(s), zero_c(), zero_c(), cr(c))
    }

    pub fn state<F: Scalar>(p: F, q: F) -> Result<ComplexMatrix<F>, FamilyError> {
        check_open_unit("p", p)?;
        check_open_unit("q", q)?;
        let m0 = ComplexMatrix::outer(&Self::vec0(q)).scale_re(p);
        let m1 = ComplexMatrix::outer(&Self::vec1(q)).scale_re(F::one() - p);
        Ok(&m0 + &m1)
    }

    /// eps_N = 2 sqrt(q(1-q)) |1-2p|.
    pub fn negativity<F: Scalar>(p: F, q: F) -> F {
        fp::<F>(2.0) * (q * (F::one() - q)).sqrt() * (F::one() - fp::<F>(2.0) * p).abs()
    }

    /// mu = 1 - 2p(1-p).
    pub fn purity<F: Scalar>(p: F) -> F {
        F::one() - fp::<F>(2.0) * p * (F::one() - p)
    }

    /// Invert (mu, eps_N) to the natural parameters on the p < 1/2 branch.
    pub fn params_from_purity_negativity<F: Scalar>(mu: F, eps: F) -> Result<(F, F), FamilyError> {
        let two = fp::<F>(2.0);
        let s = two * mu - F::one();
        if s <= F::zero() || mu >= F::one() {
            return Err(FamilyError::Domain {
                name: "mu",
                value: mu.to_f64().unwrap_or(f64::NAN),
                lo: 0.5,
                hi: 1.0,
            });
        }
        let p = (F::one() - s.sqrt()) * fp(0.5);
        let w = F::one() - eps * eps / s;
        if eps <= F::zero() || w <= F::zero() {
            return Err(FamilyError::MeasureRange {
                value: eps.to_f64().unwrap_or(f64::NAN),
                lo: 0.0,
                hi: s.sqrt().to_f64().unwrap_or(f64::NAN),
            });
        }
        let q = (F::one() - w.sqrt()) * fp(0.5);
        Ok((p, q))
    }

    /// Transfer matrix for (p, q) -> (mu, eps_N); row i holds the derivatives
    /// of the natural parameters with respect to new parameter i.
    pub fn transfer_purity_negativity<F: Scalar>(mu: F, eps: F) -> TransferMatrix<F> {
        let two = fp::<F>(2.0);
        let four = fp::<F>(4.0);
        let s = two * mu - F::one();
        let w = F::one() - eps * eps / s;
        let sw = w.sqrt();
        let dp_dmu = -(two * s.sqrt()).recip();
        let dq_dmu = -eps * eps / (two * sw * s * s);
        let dq_deps = eps / (two * sw * s);
        let _ = four;
        TransferMatrix::from_rows(&[vec![dp_dmu, dq_dmu], vec![F::zero(), dq_deps]])
    }

    /// Closed-form Fisher matrix diagonal in the natural parameters.
    pub fn qfi_closed<F: Scalar>(p: F, q: F) -> [F; 2] {
        let one = F::one();
        [
            (p * (one - p)).recip(),
            (one - fp::<F>(2.0) * p).powi(2) / (q * (one - q)),
        ]
    }

    /// Closed-form inverse Fisher matrix in the (mu, eps_N) parameters.
    pub fn inverse_qfi_purity_negativity<F: Scalar>(mu: F, eps: F) -> [[F; 2]; 2] {
        let two = fp::<F>(2.0);
        let diag0 = -fp::<F>(4.0) * mu * mu + fp::<F>(6.0) * mu - two;
        let off = two * eps * (F::one() - mu);
        [[diag0, off], [off, F::one() - eps * eps]]
    }

    /// The family expressed in (mu, eps_N) on the p < 1/2 branch.
    pub fn in_purity_negativity<F: Scalar>(&self) -> Reparametrized<'_, F> {
        Reparametrized::new(
            self,
            vec![(fp(0.5), F::one()), (F::zero(), F::one())],
            |v: &[F]| {
                let (p, q) = Self::params_from_purity_negativity(v[0], v[1])
                    .expect("parameters validated by domain check");
                vec![p, q]
            },
        )
        .with_jacobian(|v: &[F]| {
            let b = Self::transfer_purity_negativity(v[0], v[1]);
            // jacobian[i][j] = d old_i / d new_j
            vec![
                vec![b.entry(0, 0), b.entry(1, 0)],
                vec![b.entry(0, 1), b.entry(1, 1)],
            ]
        })
    }
}

impl<F: Scalar> ParamFamily<F> for OrbitFamily {
    fn arity(&self) -> usize {
        2
    }

    fn domain(&self) -> Vec<(F, F)> {
        vec![(F::zero(), F::one()), (F::zero(), F::one())]
    }

    fn density(&self, params: &[F]) -> Result<ComplexMatrix<F>, EstimationError> {
        self.check_params(params)?;
        let m0 = ComplexMatrix::outer(&Self::vec0(params[1])).scale_re(params[0]);
        let m1 = ComplexMatrix::outer(&Self::vec1(params[1])).scale_re(F::one() - params[0]);
        Ok(&m0 + &m1)
    }

    fn analytic_derivative(&self, params: &[F], j: usize) -> Option<ComplexMatrix<F>> {
        let (p, q) = (params[0], params[1]);
        match j {
            0 => {
                let m0 = ComplexMatrix::outer(&Self::vec0(q));
                let m1 = ComplexMatrix::outer(&Self::vec1(q));
                Some(&m0 - &m1)
            }
            1 => {
                let half = fp::<F>(0.5);
                let dc = half / q.sqrt();
                let ds = -half / (F::one() - q).sqrt();
                let v0 = Self::vec0(q);
                let dv0 = ket4(cr(dc), zero_c(), zero_c(), cf::<F>(0.0, 1.0).scale(ds));
                let v1 = Self::vec1(q);
                let dv1 = ket4(cf::<F>(0.0, 1.0).scale(ds), zero_c(), zero_c(), cr(dc));
                let sym = |v: &[C<F>], dv: &[C<F>]| {
                    ComplexMatrix::from_fn(4, 4, |i, k| dv[i] * v[k].conj() + v[i] * dv[k].conj())
                };
                Some(&sym(&v0, &dv0).scale_re(p) + &sym(&v1, &dv1).scale_re(F::one() - p))
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::{qfi_matrix, reparametrize};
    use crate::linalg::{hermitian_eig, negativity, BipartiteDims};

    #[test]
    fn spectrum_and_purity() {
        let rho = OrbitFamily::state(0.3_f64, 0.7).unwrap();
        let eig = hermitian_eig(&rho).unwrap();
        assert!(eig.eigenvalues[0].abs() < 1e-14);
        assert!(eig.eigenvalues[1].abs() < 1e-14);
        assert!((eig.eigenvalues[2] - 0.3).abs() < 1e-14);
        assert!((eig.eigenvalues[3] - 0.7).abs() < 1e-14);
        let mu = rho.matmul(&rho).trace().re;
        assert!((mu - OrbitFamily::purity(0.3_f64)).abs() < 1e-14);
    }

    #[test]
    fn closed_negativity_matches_trace_norm() {
        for (p, q) in [(0.25_f64, 0.5), (0.1, 0.2), (0.45, 0.8), (0.75, 0.3)] {
            let rho = OrbitFamily::state(p, q).unwrap();
            let got = negativity(&rho, BipartiteDims::qubits()).unwrap();
            let want = OrbitFamily::negativity(p, q);
            assert!((got - want).abs() < 1e-10, "p={p} q={q}: {got} vs {want}");
        }
        // p = 1/2 wipes out the correlations
        let rho = OrbitFamily::state(0.5_f64, 0.3).unwrap();
        assert!(negativity(&rho, BipartiteDims::qubits()).unwrap() < 1e-10);
    }

    #[test]
    fn numeric_qfi_is_the_closed_diagonal() {
        for (p, q) in [(0.25_f64, 0.5), (0.3, 0.7), (0.1, 0.2)] {
            let r = qfi_matrix(&OrbitFamily, &[p, q]).unwrap();
            let want = OrbitFamily::qfi_closed(p, q);
            for i in 0..2 {
                let got = r.h_entry(i, i);
                assert!((got - want[i]).abs() / want[i] < 1e-9, "entry {i} at ({p},{q})");
            }
            assert!(r.h_entry(0, 1).abs() < 1e-9);
        }
        let r = qfi_matrix(&OrbitFamily, &[0.25_f64, 0.5]).unwrap();
        assert!((r.h_entry(0, 0) - 16.0 / 3.0).abs() < 1e-9);
        assert!((r.h_entry(1, 1) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn purity_negativity_reparametrization() {
        let (mu, eps) = (0.8_f64, 0.3_f64);
        let (p, q) = OrbitFamily::params_from_purity_negativity(mu, eps).unwrap();
        assert!((OrbitFamily::purity(p) - mu).abs() < 1e-14);
        assert!((OrbitFamily::negativity(p, q) - eps).abs() < 1e-14);

        // closed transfer applied to the numeric Fisher matrix reproduces the
        // closed inverse
        let natural = qfi_matrix(&OrbitFamily, &[p, q]).unwrap();
        let b = OrbitFamily::transfer_purity_negativity(mu, eps);
        let re = reparametrize(&natural, &b).unwrap();
        let want = OrbitFamily::inverse_qfi_purity_negativity(mu, eps);
        for i in 0..2 {
            for j in 0..2 {
                assert!(
                    (re.h_inv_entry(i, j) - want[i][j]).abs() < 1e-8,
                    "({i},{j}): {} vs {}",
                    re.h_inv_entry(i, j),
                    want[i][j]
                );
            }
        }

        // direct finite differences in the new parameters agree
        let fam = OrbitFamily;
        let direct = qfi_matrix(&fam.in_purity_negativity::<f64>(), &[mu, eps]).unwrap();
        assert!((direct.h_inv_entry(1, 1) - (1.0 - eps * eps)).abs() < 1e-8);
    }

    #[test]
    fn infeasible_purity_negativity_pairs_rejected() {
        // eps cannot exceed sqrt(2 mu - 1)
        assert!(OrbitFamily::params_from_purity_negativity(0.6_f64, 0.9).is_err());
        assert!(OrbitFamily::params_from_purity_negativity(0.4_f64, 0.1).is_err());
    }
}
