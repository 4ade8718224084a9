//! Finite-dimensional state families with their entanglement measures,
//! closed-form Fisher information (regression references) and measure-based
//! reparametrizations.

mod horodecki;
mod orbit;
mod schmidt;
mod werner;

pub use horodecki::{
    a_from_lur_violation,
    lur_violation, lur_violation_deriv, Branch, HorodeckiFamily, LUR_MAX, LUR_PEAK_A,
};
pub use orbit::OrbitFamily;
pub use schmidt::SchmidtFamily;
pub use werner::WernerFamily;

use thiserror::Error;

use crate::scalar::{cf, Scalar, C};

/// Entanglement measures for the finite-dimensional families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureId {
    /// Trace-norm negativity.
    Negativity,
    /// Normalized linear entropy of a marginal.
    LinearEntropy,
    /// Relative violation of summed local uncertainty relations.
    LurViolation,
}

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("parameter {name} = {value} outside the open interval ({lo}, {hi})")]
    Domain { name: &'static str, value: f64, lo: f64, hi: f64 },

    #[error("measure {0:?} is not defined for this family")]
    UnsupportedMeasure(MeasureId),

    #[error("measure value {value} is outside the attainable range ({lo}, {hi})")]
    MeasureRange { value: f64, lo: f64, hi: f64 },

    #[error("bisection failed to bracket a root")]
    NoRoot,
}

pub(crate) fn check_open_unit<F: Scalar>(name: &'static str, x: F) -> Result<(), FamilyError> {
    if x > F::zero() && x < F::one() {
        Ok(())
    } else {
        Err(FamilyError::Domain {
            name,
            value: x.to_f64().unwrap_or(f64::NAN),
            lo: 0.0,
            hi: 1.0,
        })
    }
}

/// Two-qubit computational-basis ket with the given amplitudes on
/// |00>, |01>, |10>, |11>.
pub(crate) fn ket4<F: Scalar>(a00: C<F>, a01: C<F>, a10: C<F>, a11: C<F>) -> Vec<C<F>> {
    vec![a00, a01, a10, a11]
}

pub(crate) fn zero_c<F: Scalar>() -> C<F> {
    cf(0.0, 0.0)
}

/// Bisection on a monotone function, to absolute tolerance 1e-12 in the
/// argument.
pub(crate) fn bisect<F: Scalar>(
    mut lo: F,
    mut hi: F,
    target: F,
    f: impl Fn(F) -> F,
) -> Result<F, FamilyError> {
    let mut flo = f(lo) - target;
    let fhi = f(hi) - target;
    if flo == F::zero() {
        return Ok(lo);
    }
    if fhi == F::zero() {
        return Ok(hi);
    }
    if (flo > F::zero()) == (fhi > F::zero()) {
        return Err(FamilyError::NoRoot);
    }
    let tol = crate::scalar::tol::<F>(1e-12);
    let half = crate::scalar::fp::<F>(0.5);
    for _ in 0..200 {
        let mid = (lo + hi) * half;
        let fm = f(mid) - target;
        if fm == F::zero() || (hi - lo) < tol {
            return Ok(mid);
        }
        if (fm > F::zero()) == (flo > F::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * half)
}
