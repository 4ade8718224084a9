//! Classical Fisher information of a POVM and the optimal SLD measurement.

use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::scalar::{tol, Scalar};

use super::{state_derivative, EstimationError, ParamFamily};

/// Probability of an outcome is skipped below this floor.
fn probability_floor<F: Scalar>() -> F {
    tol::<F>(1e-14)
}

fn validate_povm<F: Scalar>(effects: &[ComplexMatrix<F>]) -> Result<(), EstimationError> {
    if effects.is_empty() {
        return Err(EstimationError::InvalidPovm("empty effect list".into()));
    }
    let n = effects[0].rows();
    let mut sum = ComplexMatrix::<F>::zeros(n, n);
    for (k, e) in effects.iter().enumerate() {
        if e.rows() != n || !e.is_square() {
            return Err(EstimationError::InvalidPovm(format!("effect {k} has wrong shape")));
        }
        e.require_hermitian(tol::<F>(1e-10) * F::one().max(e.max_abs()))
            .map_err(|_| EstimationError::InvalidPovm(format!("effect {k} is not Hermitian")))?;
        let eig = hermitian_eig(e).map_err(EstimationError::Linalg)?;
        if eig.eigenvalues[0] < -tol::<F>(1e-10) {
            return Err(EstimationError::InvalidPovm(format!(
                "effect {k} has negative eigenvalue {:?}",
                eig.eigenvalues[0].to_f64()
            )));
        }
        sum = &sum + e;
    }
    let dev = (&sum - &ComplexMatrix::identity(n)).max_abs();
    if dev > tol::<F>(1e-10) {
        return Err(EstimationError::InvalidPovm(format!(
            "effects do not sum to the identity (deviation {:?})",
            dev.to_f64()
        )));
    }
    Ok(())
}

/// Classical Fisher information of a POVM at a state with tangent `drho`:
/// sum over outcomes of (d p_x)^2 / p_x.
pub fn classical_fisher<F: Scalar>(
    rho: &ComplexMatrix<F>,
    drho: &ComplexMatrix<F>,
    effects: &[ComplexMatrix<F>],
) -> Result<F, EstimationError> {
    validate_povm(effects)?;
    let floor = probability_floor::<F>();
    let mut fisher = F::zero();
    for e in effects {
        let p = e.matmul(rho).trace().re;
        if p < floor {
            continue;
        }
        let dp = e.matmul(drho).trace().re;
        fisher = fisher + dp * dp / p;
    }
    Ok(fisher)
}

/// Classical Fisher information of a POVM for one parameter of a family.
pub fn classical_fisher_family<F: Scalar>(
    family: &dyn ParamFamily<F>,
    params: &[F],
    j: usize,
    effects: &[ComplexMatrix<F>],
) -> Result<F, EstimationError> {
    let rho = family.density(params)?;
    let drho = state_derivative(family, params, j)?.matrix;
    classical_fisher(&rho, &drho, effects)
}

/// Rank-1 projectors onto the eigenbasis of an SLD operator, paired with the
/// corresponding eigenvalues. This is the measurement that saturates the
/// quantum Cramér-Rao bound.
pub fn sld_projectors<F: Scalar>(
    l: &ComplexMatrix<F>,
) -> Result<Vec<(F, ComplexMatrix<F>)>, EstimationError> {
    let eig = hermitian_eig(l)?;
    let n = eig.eigenvalues.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let v = eig.eigenvector(k);
        out.push((eig.eigenvalues[k], ComplexMatrix::outer(&v)));
    }
    Ok(out)
}

/// Convenience: drop the eigenvalues, keep the projectors.
pub fn projector_effects<F: Scalar>(projs: &[(F, ComplexMatrix<F>)]) -> Vec<ComplexMatrix<F>> {
    projs.iter().map(|(_, p)| p.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::{kernel_cutoff, qfi_scalar, sld};
    use crate::scalar::cf;

    type M = ComplexMatrix<f64>;

    fn qubit_family(q: f64) -> (M, M) {
        // rho = diag mixture rotated off-axis so nothing is trivially diagonal
        let v1 = vec![cf(0.8, 0.1), cf(0.3, -0.5)];
        let norm: f64 = v1.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let v1: Vec<_> = v1.iter().map(|z| z / norm).collect();
        let v2 = vec![-v1[1].conj(), v1[0].conj()];
        let rho = &M::outer(&v1).scale_re(q) + &M::outer(&v2).scale_re(1.0 - q);
        let drho = &M::outer(&v1) - &M::outer(&v2);
        (rho, drho)
    }

    #[test]
    fn sld_basis_saturates_quantum_bound() {
        let (rho, drho) = qubit_family(0.3);
        let h = qfi_scalar(&rho, &drho).unwrap().value;
        let l = sld(&rho, &drho, kernel_cutoff()).unwrap().l;
        let projs = sld_projectors(&l).unwrap();
        let f = classical_fisher(&rho, &drho, &projector_effects(&projs)).unwrap();
        assert!((f - h).abs() / h < 1e-10, "f={f} h={h}");
    }

    #[test]
    fn trivial_povm_carries_no_information() {
        let (rho, drho) = qubit_family(0.3);
        let f = classical_fisher(&rho, &drho, &[M::identity(2)]).unwrap();
        assert!(f.abs() < 1e-20);
    }

    #[test]
    fn completeness_enforced() {
        let (rho, drho) = qubit_family(0.3);
        let half = M::identity(2).scale_re(0.4);
        assert!(matches!(
            classical_fisher(&rho, &drho, &[half]),
            Err(EstimationError::InvalidPovm(_))
        ));
    }

    #[test]
    fn projectors_sum_to_identity() {
        let (_, drho) = qubit_family(0.42);
        let projs = sld_projectors(&drho).unwrap();
        let mut sum = M::zeros(2, 2);
        for (_, p) in &projs {
            sum = &sum + p;
        }
        assert!((&sum - &M::identity(2)).max_abs() < 1e-10);
    }
}
