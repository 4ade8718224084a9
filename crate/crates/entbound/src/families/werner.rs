//! Werner-like states: (1-p)/4 identity plus weight p on a Schmidt-form pure
//! state.
//!
//! The eigenvalues depend only on p, the eigenvectors only on q. Numerically
//! verified Fisher matrix: diag(3/(1+(2-3p)p), 2 p^2/(q(1-q)(1+p))); the
//! second entry follows from the same eigenbasis sum as every other family
//! here and reduces to the pure-state value 1/(q(1-q)) as p -> 1.

use crate::estimation::{EstimationError, ParamFamily, Reparametrized, TransferMatrix};
use crate::linalg::ComplexMatrix;
use crate::scalar::{fp, Scalar};

use super::schmidt::SchmidtFamily;
use super::{bisect, check_open_unit, FamilyError};

#[derive(Clone, Copy, Debug, Default)]
pub struct WernerFamily;

impl WernerFamily {
    pub fn state<F: Scalar>(p: F, q: F) -> Result<ComplexMatrix<F>, FamilyError> {
        check_open_unit("p", p)?;
        check_open_unit("q", q)?;
        let four = fp::<F>(4.0);
        let background = ComplexMatrix::<F>::identity(4).scale_re((F::one() - p) / four);
        let pure = ComplexMatrix::outer(&SchmidtFamily::state_vector(q)).scale_re(p);
        Ok(&background + &pure)
    }

    /// Spectrum {(1-p)/4 x3, (1+3p)/4}.
    pub fn spectrum<F: Scalar>(p: F) -> [F; 4] {
        let four = fp::<F>(4.0);
        let low = (F::one() - p) / four;
        [low, low, low, (F::one() + fp::<F>(3.0) * p) / four]
    }

    /// mu = (1 + 3 p^2)/4.
    pub fn purity<F: Scalar>(p: F) -> F {
        (F::one() + fp::<F>(3.0) * p * p) / fp::<F>(4.0)
    }

    /// eps_N = max{0, [p (1 + 4 sqrt(q(1-q))) - 1]/2}; the radical is
    /// q(1-q), which reproduces the pure-state limit at p = 1 and the
    /// partial-transpose trace norm to machine precision.
    pub fn negativity<F: Scalar>(p: F, q: F) -> F {
        let s = fp::<F>(4.0) * (q * (F::one() - q)).sqrt();
        ((p * (F::one() + s) - F::one()) * fp(0.5)).max(F::zero())
    }

    /// Entanglement threshold in p at fixed q: 1/(1 + 4 sqrt(q(1-q))).
    pub fn threshold_p<F: Scalar>(q: F) -> F {
        (F::one() + fp::<F>(4.0) * (q * (F::one() - q)).sqrt()).recip()
    }

    /// Invert the negativity for p at fixed q (linear).
    pub fn p_from_negativity<F: Scalar>(eps: F, q: F) -> Result<F, FamilyError> {
        if eps <= F::zero() {
            return Err(FamilyError::MeasureRange {
                value: eps.to_f64().unwrap_or(f64::NAN),
                lo: 0.0,
                hi: 1.0,
            });
        }
        let s = fp::<F>(4.0) * (q * (F::one() - q)).sqrt();
        let p = (fp::<F>(2.0) * eps + F::one()) / (F::one() + s);
        if p >= F::one() {
            return Err(FamilyError::MeasureRange {
                value: eps.to_f64().unwrap_or(f64::NAN),
                lo: 0.0,
                hi: (s / fp::<F>(2.0)).to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(p)
    }

    /// Invert the negativity for q at fixed p, on the q <= 1/2 branch, by
    /// bisection to 1e-12.
    pub fn q_from_negativity<F: Scalar>(eps: F, p: F) -> Result<F, FamilyError> {
        let half = fp::<F>(0.5);
        if eps <= F::zero() || eps >= Self::negativity(p, half) {
            return Err(FamilyError::MeasureRange {
                value: eps.to_f64().unwrap_or(f64::NAN),
                lo: 0.0,
                hi: Self::negativity(p, half).to_f64().unwrap_or(f64::NAN),
            });
        }
        bisect(fp(1e-15), half, eps, |q| Self::negativity(p, q))
    }

    /// Fisher matrix diagonal in the natural parameters, as the numerics
    /// reproduce it on the full grid.
    pub fn qfi_closed<F: Scalar>(p: F, q: F) -> [F; 2] {
        let one = F::one();
        let two = fp::<F>(2.0);
        let three = fp::<F>(3.0);
        [
            three / (one + (two - three * p) * p),
            two * p * p / (q * (one - q) * (one + p)),
        ]
    }

    /// d eps_N / d p at fixed q (entangled side).
    pub fn dnegativity_dp<F: Scalar>(q: F) -> F {
        (F::one() + fp::<F>(4.0) * (q * (F::one() - q)).sqrt()) * fp(0.5)
    }

    /// d eps_N / d q at fixed p (entangled side).
    pub fn dnegativity_dq<F: Scalar>(p: F, q: F) -> F {
        p * (F::one() - fp::<F>(2.0) * q) / (q * (F::one() - q)).sqrt()
    }

    /// The family expressed in (eps_N, q), fixed-q estimation of the
    /// negativity.
    pub fn in_negativity_q<F: Scalar>(&self) -> Reparametrized<'_, F> {
        Reparametrized::new(
            self,
            vec![(F::zero(), F::one()), (F::zero(), F::one())],
            |v: &[F]| {
                let p = Self::p_from_negativity(v[0], v[1]).expect("validated");
                vec![p, v[1]]
            },
        )
        .with_jacobian(|v: &[F]| {
            let b = Self::transfer_negativity_q(v[0], v[1]);
            vec![
                vec![b.entry(0, 0), b.entry(1, 0)],
                vec![b.entry(0, 1), b.entry(1, 1)],
            ]
        })
    }

    /// Transfer matrix for (p, q) -> (eps_N, q).
    pub fn transfer_negativity_q<F: Scalar>(eps: F, q: F) -> TransferMatrix<F> {
        let one = F::one();
        let two = fp::<F>(2.0);
        let s = fp::<F>(4.0) * (q * (one - q)).sqrt();
        let ds_dq = two * (one - two * q) / (q * (one - q)).sqrt();
        let dp_deps = two / (one + s);
        let dp_dq = -(two * eps + one) * ds_dq / ((one + s) * (one + s));
        TransferMatrix::from_rows(&[vec![dp_deps, F::zero()], vec![dp_dq, one]])
    }

    /// Transfer matrix for (p, q) -> (p, eps_N) on the q <= 1/2 branch.
    pub fn transfer_p_negativity<F: Scalar>(p: F, q: F) -> TransferMatrix<F> {
        let one = F::one();
        let de_dp = Self::dnegativity_dp(q);
        let de_dq = Self::dnegativity_dq(p, q);
        let dq_deps = de_dq.recip();
        let dq_dp = -de_dp / de_dq;
        TransferMatrix::from_rows(&[vec![one, dq_dp], vec![F::zero(), dq_deps]])
    }
}

impl<F: Scalar> ParamFamily<F> for WernerFamily {
    fn arity(&self) -> usize {
        2
    }

    fn domain(&self) -> Vec<(F, F)> {
        vec![(F::zero(), F::one()), (F::zero(), F::one())]
    }

    fn density(&self, params: &[F]) -> Result<ComplexMatrix<F>, EstimationError> {
        self.check_params(params)?;
        let four = fp::<F>(4.0);
        let background =
            ComplexMatrix::<F>::identity(4).scale_re((F::one() - params[0]) / four);
        let pure =
            ComplexMatrix::outer(&SchmidtFamily::state_vector(params[1])).scale_re(params[0]);
        Ok(&background + &pure)
    }

    fn analytic_derivative(&self, params: &[F], j: usize) -> Option<ComplexMatrix<F>> {
        let (p, q) = (params[0], params[1]);
        match j {
            0 => {
                let four = fp::<F>(4.0);
                let id = ComplexMatrix::<F>::identity(4).scale_re(-four.recip());
                let pure = ComplexMatrix::outer(&SchmidtFamily::state_vector(q));
                Some(&id + &pure)
            }
            1 => {
                let half = fp::<F>(0.5);
                let v = SchmidtFamily::state_vector(q);
                let dv = [
                    crate::scalar::cr(half / q.sqrt()),
                    crate::scalar::cf(0.0, 0.0),
                    crate::scalar::cf(0.0, 0.0),
                    crate::scalar::cr(-half / (F::one() - q).sqrt()),
                ];
                Some(
                    ComplexMatrix::from_fn(4, 4, |i, k| dv[i] * v[k].conj() + v[i] * dv[k].conj())
                        .scale_re(p),
                )
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::qfi_matrix;
    use crate::linalg::{hermitian_eig, negativity, BipartiteDims};

    #[test]
    fn spectrum_matches() {
        let rho = WernerFamily::state(0.3_f64, 0.6).unwrap();
        let eig = hermitian_eig(&rho).unwrap();
        let want = WernerFamily::spectrum(0.3_f64);
        for (got, want) in eig.eigenvalues.iter().zip(want) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn p_one_limit_is_pure_state() {
        let p = 1.0_f64 - 1e-9;
        let rho = WernerFamily::state(p, 0.4).unwrap();
        let pure = SchmidtFamily::state(0.4).unwrap();
        assert!((&rho - &pure).max_abs() < 1e-8);
    }

    #[test]
    fn closed_negativity_matches_trace_norm() {
        for (p, q) in [(0.5_f64, 0.5), (0.7, 0.3), (0.9, 0.1), (0.2, 0.5)] {
            let rho = WernerFamily::state(p, q).unwrap();
            let got = negativity(&rho, BipartiteDims::qubits()).unwrap();
            let want = WernerFamily::negativity(p, q);
            assert!((got - want).abs() < 1e-10, "({p},{q}): {got} vs {want}");
        }
        assert!((WernerFamily::negativity(0.5_f64, 0.5) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn below_threshold_measure_vanishes() {
        let q = 0.5_f64;
        let pth = WernerFamily::threshold_p(q);
        assert!((pth - 1.0 / 3.0).abs() < 1e-14);
        let rho = WernerFamily::state(pth - 0.01, q).unwrap();
        assert!(negativity(&rho, BipartiteDims::qubits()).unwrap() < 1e-12);
        assert_eq!(WernerFamily::negativity(pth - 0.01, q), 0.0);
    }

    #[test]
    fn numeric_qfi_matches_closed_diagonal() {
        for (p, q) in [(0.5_f64, 0.5), (0.3, 0.7), (0.8, 0.2)] {
            let r = qfi_matrix(&WernerFamily, &[p, q]).unwrap();
            let want = WernerFamily::qfi_closed(p, q);
            for i in 0..2 {
                let got = r.h_entry(i, i);
                assert!(
                    (got - want[i]).abs() / want[i] < 1e-9,
                    "entry {i} at ({p},{q}): {got} vs {}",
                    want[i]
                );
            }
            assert!(r.h_entry(0, 1).abs() < 1e-8);
        }
    }

    #[test]
    fn negativity_inversions_roundtrip() {
        let (p, q) = (0.7_f64, 0.22_f64);
        let eps = WernerFamily::negativity(p, q);
        let p_back = WernerFamily::p_from_negativity(eps, q).unwrap();
        assert!((p_back - p).abs() < 1e-13);
        let q_back = WernerFamily::q_from_negativity(eps, p).unwrap();
        assert!((q_back - q).abs() < 1e-11);
        assert!(WernerFamily::q_from_negativity(0.9_f64, 0.4).is_err());
    }
}
