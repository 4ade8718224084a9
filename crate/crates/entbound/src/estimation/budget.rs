//! Signal-to-noise ratio and measurement budgets.

use crate::scalar::{fp, Scalar};

/// Estimability of a parameter value: the quantum signal-to-noise ratio
/// Q = lambda^2 H and the number of measurements needed for a 3-sigma
/// confidence interval at relative error delta, M = 9 / (delta^2 Q).
#[derive(Clone, Copy, Debug)]
pub struct EstimationBudget<F: Scalar> {
    pub lambda: F,
    pub fisher: F,
    pub qsnr: F,
}

impl<F: Scalar> EstimationBudget<F> {
    pub fn new(lambda: F, fisher: F) -> Self {
        assert!(fisher >= F::zero(), "Fisher information must be nonnegative");
        Self { lambda, fisher, qsnr: lambda * lambda * fisher }
    }

    /// Measurement count for relative error `delta`; infinite when the
    /// signal-to-noise ratio vanishes (lambda = 0 or H = 0).
    pub fn measurements(&self, delta: F) -> F {
        assert!(delta > F::zero());
        if self.qsnr <= F::zero() {
            return F::infinity();
        }
        fp::<F>(9.0) / (delta * delta * self.qsnr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_qubit_budget() {
        // Q = q/(1-q) = 1 at q = 1/2, so delta = 0.1 needs 900 measurements.
        let q: f64 = 0.5;
        let b = EstimationBudget::new(q, 1.0 / (q * (1.0 - q)));
        assert!((b.qsnr - 1.0).abs() < 1e-14);
        assert!((b.measurements(0.1) - 900.0).abs() < 1e-9);
    }

    #[test]
    fn vanishing_parameter_needs_infinite_measurements() {
        let b = EstimationBudget::new(0.0_f64, 25.0);
        assert!(b.measurements(0.1).is_infinite());
        let b = EstimationBudget::new(0.3_f64, 0.0);
        assert!(b.measurements(0.1).is_infinite());
    }

    #[test]
    fn twin_beam_budget() {
        let b = EstimationBudget::new(0.2_f64, 25.0);
        assert!((b.qsnr - 1.0).abs() < 1e-12);
        assert!((b.measurements(0.01) - 90000.0).abs() < 1e-6);
    }

    #[test]
    fn monotone_in_qsnr_and_delta() {
        let b1 = EstimationBudget::new(0.5_f64, 1.0);
        let b2 = EstimationBudget::new(0.5_f64, 2.0);
        assert!(b2.measurements(0.1) < b1.measurements(0.1));
        assert!(b1.measurements(0.2) < b1.measurements(0.1));
    }
}
