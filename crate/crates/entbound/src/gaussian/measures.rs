//! Gaussian entanglement measures as monotone functions of the least
//! partial-transpose symplectic eigenvalue d in (0, 1/2], with closed-form
//! inverses and derivatives for reparametrized Fisher information.

use crate::scalar::{fp, Scalar};

use super::GaussianError;

/// Measures for two-mode Gaussian states. Every one of them is a strictly
/// decreasing function of the least symplectic eigenvalue of the partially
/// transposed covariance matrix on the entangled side d < 1/2 and vanishes
/// for d >= 1/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussianMeasure {
    /// The symplectic eigenvalue itself (estimated directly).
    SymplecticEig,
    /// Logarithmic negativity -ln(2d).
    LogNegativity,
    /// Linear entropy of a marginal, 1 - 4d/(1+4d^2); a monotone only for
    /// pure states.
    LinearEntropy,
    /// Linear mixed-state measure 1 - 2d.
    EpsS,
    /// Bures-distance measure (1-sqrt(2d))^2/(1+2d) for symmetric states.
    EpsB,
}

impl GaussianMeasure {
    pub fn label(&self) -> &'static str {
        match self {
            GaussianMeasure::SymplecticEig => "dtilde",
            GaussianMeasure::LogNegativity => "logNegativity",
            GaussianMeasure::LinearEntropy => "linearEntropy",
            GaussianMeasure::EpsS => "epsS",
            GaussianMeasure::EpsB => "epsB",
        }
    }

    /// Forward map d -> measure value. Any d >= 1/2 maps to zero
    /// (separable side); for `SymplecticEig` the value is d itself.
    pub fn value<F: Scalar>(&self, d: F) -> F {
        let half = fp::<F>(0.5);
        let one = F::one();
        let two = fp::<F>(2.0);
        let four = fp::<F>(4.0);
        if let GaussianMeasure::SymplecticEig = self {
            return d;
        }
        if d >= half {
            return F::zero();
        }
        match self {
            GaussianMeasure::SymplecticEig => unreachable!(),
            GaussianMeasure::LogNegativity => -(two * d).ln(),
            GaussianMeasure::LinearEntropy => one - four * d / (one + four * d * d),
            GaussianMeasure::EpsS => one - two * d,
            GaussianMeasure::EpsB => {
                let t = (two * d).sqrt();
                (one - t) * (one - t) / (one + two * d)
            }
        }
    }

    /// Inverse map measure value -> d on the entangled branch d in (0, 1/2).
    pub fn dtilde_from<F: Scalar>(&self, eps: F) -> Result<F, GaussianError> {
        let one = F::one();
        let two = fp::<F>(2.0);
        let check_unit = |hi: f64| -> Result<(), GaussianError> {
            if eps > F::zero() && eps < fp(hi) {
                Ok(())
            } else {
                Err(GaussianError::MeasureRange {
                    value: eps.to_f64().unwrap_or(f64::NAN),
                    lo: 0.0,
                    hi,
                })
            }
        };
        match self {
            GaussianMeasure::SymplecticEig => {
                if eps > F::zero() && eps <= fp(0.5) {
                    Ok(eps)
                } else {
                    Err(GaussianError::MeasureRange {
                        value: eps.to_f64().unwrap_or(f64::NAN),
                        lo: 0.0,
                        hi: 0.5,
                    })
                }
            }
            GaussianMeasure::LogNegativity => {
                if eps > F::zero() {
                    Ok((-eps).exp() * fp(0.5))
                } else {
                    Err(GaussianError::MeasureRange {
                        value: eps.to_f64().unwrap_or(f64::NAN),
                        lo: 0.0,
                        hi: f64::INFINITY,
                    })
                }
            }
            GaussianMeasure::LinearEntropy => {
                check_unit(1.0)?;
                let w = (eps * (two - eps)).sqrt();
                Ok((one - w) / (two * (one - eps)))
            }
            GaussianMeasure::EpsS => {
                check_unit(1.0)?;
                Ok((one - eps) * fp(0.5))
            }
            GaussianMeasure::EpsB => {
                check_unit(1.0)?;
                let w = (eps * (two - eps)).sqrt();
                let t = (one - w) / (one - eps);
                Ok(t * t * fp(0.5))
            }
        }
    }

    /// Analytic derivative of the inverse map, d(dtilde)/d(eps), on the
    /// entangled branch.
    pub fn ddtilde_deps<F: Scalar>(&self, eps: F) -> Result<F, GaussianError> {
        let one = F::one();
        let two = fp::<F>(2.0);
        match self {
            GaussianMeasure::SymplecticEig => Ok(one),
            GaussianMeasure::LogNegativity => Ok(-self.dtilde_from(eps)?),
            GaussianMeasure::LinearEntropy => {
                // d' = -(1-w)/(2 w (1-eps)^2), w = sqrt(eps(2-eps))
                let w = (eps * (two - eps)).sqrt();
                let om = one - eps;
                Ok(-(one - w) / (two * w * om * om))
            }
            GaussianMeasure::EpsS => Ok(-fp::<F>(0.5)),
            GaussianMeasure::EpsB => {
                // d = t^2/2 with t = (1-w)/(1-eps); dt/deps = -(1-w)/(w (1-eps)^2)
                let w = (eps * (two - eps)).sqrt();
                let om = one - eps;
                let t = (one - w) / om;
                let dt = -(one - w) / (w * om * om);
                Ok(t * dt)
            }
        }
    }
}
