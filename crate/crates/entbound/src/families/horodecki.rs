//! Two-qutrit bound entangled states with positive partial transpose.
//!
//! One real parameter a in [0,1]; the state stays PPT on the whole range, so
//! negativity is blind to its correlations. The relative violation of summed
//! local uncertainty relations serves as the measure instead:
//! eps_U(a) = 3 a^2 (1-a) / (4 (2+a)(1+8a)^2), which vanishes at a = 0 and
//! a = 1 and peaks at a = 4/13 with value 2/1125. The inverse a(eps_U) is
//! double valued; every reparametrized quantity carries a branch tag.

use crate::estimation::{EstimationError, ParamFamily};
use crate::linalg::ComplexMatrix;
use crate::scalar::{cr, fp, Scalar, C};

use super::{bisect, FamilyError};

/// Location of the maximum of the LUR violation.
pub const LUR_PEAK_A: f64 = 4.0 / 13.0;
/// Maximum of the LUR violation, 2/1125.
pub const LUR_MAX: f64 = 2.0 / 1125.0;

/// Which side of the LUR-violation peak an inverse lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// a in (0, 4/13)
    Lower,
    /// a in (4/13, 1)
    Upper,
}

impl Branch {
    pub fn label(&self) -> &'static str {
        match self {
            Branch::Lower => "lower",
            Branch::Upper => "upper",
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct HorodeckiFamily;

/// Qutrit levels ordered {down, zero, up} -> indices {0, 1, 2}; the joint
/// index is 3*a + b.
fn idx(a: usize, b: usize) -> usize {
    3 * a + b
}

const DOWN: usize = 0;
const ZERO: usize = 1;
const UP: usize = 2;

impl HorodeckiFamily {
    pub fn state<F: Scalar>(a: F) -> Result<ComplexMatrix<F>, FamilyError> {
        if !(a >= F::zero() && a <= F::one()) {
            return Err(FamilyError::Domain {
                name: "a",
                value: a.to_f64().unwrap_or(f64::NAN),
                lo: 0.0,
                hi: 1.0,
            });
        }
        Ok(Self::build(a))
    }

    fn build<F: Scalar>(a: F) -> ComplexMatrix<F> {
        let one = F::one();
        let w = (one + fp::<F>(8.0) * a).recip();
        let mut rho = ComplexMatrix::<F>::zeros(9, 9);
        for (i, j) in [(DOWN, ZERO), (DOWN, UP), (ZERO, DOWN), (ZERO, UP), (UP, ZERO)] {
            let k = idx(i, j);
            rho[(k, k)] = cr(a * w);
        }
        let e = Self::sym_vector();
        let pe = ComplexMatrix::outer(&e).scale_re(fp::<F>(3.0) * a * w);
        let pi = ComplexMatrix::outer(&Self::tilted_vector(a)).scale_re(w);
        &(&rho + &pe) + &pi
    }

    /// (|down,down> + |zero,zero> + |up,up>)/sqrt(3).
    fn sym_vector<F: Scalar>() -> Vec<C<F>> {
        let amp = cr(fp::<F>(3.0).sqrt().recip());
        let mut v = vec![cr(F::zero()); 9];
        v[idx(DOWN, DOWN)] = amp;
        v[idx(ZERO, ZERO)] = amp;
        v[idx(UP, UP)] = amp;
        v
    }

    /// sqrt((1+a)/2)|up,down> + sqrt((1-a)/2)|up,up>.
    fn tilted_vector<F: Scalar>(a: F) -> Vec<C<F>> {
        let half = fp::<F>(0.5);
        let mut v = vec![cr(F::zero()); 9];
        v[idx(UP, DOWN)] = cr(((F::one() + a) * half).sqrt());
        v[idx(UP, UP)] = cr(((F::one() - a) * half).sqrt());
        v
    }

    fn tilted_vector_derivative<F: Scalar>(a: F) -> Vec<C<F>> {
        let half = fp::<F>(0.5);
        let quarter = fp::<F>(0.25);
        let mut v = vec![cr(F::zero()); 9];
        v[idx(UP, DOWN)] = cr(quarter / ((F::one() + a) * half).sqrt());
        v[idx(UP, UP)] = cr(-quarter / ((F::one() - a) * half).sqrt());
        v
    }
}

impl<F: Scalar> ParamFamily<F> for HorodeckiFamily {
    fn arity(&self) -> usize {
        1
    }

    fn domain(&self) -> Vec<(F, F)> {
        vec![(F::zero(), F::one())]
    }

    fn density(&self, params: &[F]) -> Result<ComplexMatrix<F>, EstimationError> {
        self.check_params(params)?;
        Ok(Self::build(params[0]))
    }

    fn analytic_derivative(&self, params: &[F], _j: usize) -> Option<ComplexMatrix<F>> {
        let a = params[0];
        let one = F::one();
        let wsq = (one + fp::<F>(8.0) * a).powi(2).recip();
        // d(a w)/da = w^2, d(3 a w)/da = 3 w^2, d(w)/da = -8 w^2
        let mut d = ComplexMatrix::<F>::zeros(9, 9);
        for (i, j) in [(DOWN, ZERO), (DOWN, UP), (ZERO, DOWN), (ZERO, UP), (UP, ZERO)] {
            let k = idx(i, j);
            d[(k, k)] = cr(wsq);
        }
        let pe = ComplexMatrix::outer(&Self::sym_vector()).scale_re(fp::<F>(3.0) * wsq);
        let pi_static =
            ComplexMatrix::outer(&Self::tilted_vector(a)).scale_re(-fp::<F>(8.0) * wsq);
        let w = (one + fp::<F>(8.0) * a).recip();
        let v = Self::tilted_vector(a);
        let dv = Self::tilted_vector_derivative(a);
        let pi_moving =
            ComplexMatrix::from_fn(9, 9, |i, k| dv[i] * v[k].conj() + v[i] * dv[k].conj())
                .scale_re(w);
        Some(&(&(&d + &pe) + &pi_static) + &pi_moving)
    }
}

/// Relative LUR violation eps_U(a) = 3 a^2 (1-a) / (4 (2+a)(1+8a)^2).
pub fn lur_violation<F: Scalar>(a: F) -> F {
    let one = F::one();
    let num = fp::<F>(3.0) * a * a * (one - a);
    let den = fp::<F>(4.0) * (fp::<F>(2.0) + a) * (one + fp::<F>(8.0) * a).powi(2);
    num / den
}

/// d eps_U / d a by the quotient rule.
pub fn lur_violation_deriv<F: Scalar>(a: F) -> F {
    let one = F::one();
    let num = a * a * (one - a);
    let dnum = fp::<F>(2.0) * a - fp::<F>(3.0) * a * a;
    let e8 = one + fp::<F>(8.0) * a;
    let den = (fp::<F>(2.0) + a) * e8 * e8;
    let dden = e8 * e8 + (fp::<F>(2.0) + a) * fp::<F>(16.0) * e8;
    fp::<F>(0.75) * (dnum * den - num * dden) / (den * den)
}

/// Invert the LUR violation on a chosen side of the peak, by bisection.
pub fn a_from_lur_violation<F: Scalar>(eps: F, branch: Branch) -> Result<F, FamilyError> {
    let max = fp::<F>(LUR_MAX);
    if eps <= F::zero() || eps >= max {
        return Err(FamilyError::MeasureRange {
            value: eps.to_f64().unwrap_or(f64::NAN),
            lo: 0.0,
            hi: LUR_MAX,
        });
    }
    let peak = fp::<F>(LUR_PEAK_A);
    match branch {
        Branch::Lower => bisect(fp(1e-12), peak, eps, lur_violation),
        Branch::Upper => bisect(peak, F::one() - fp(1e-12), eps, lur_violation),
    }
}
