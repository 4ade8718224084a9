//! Fock-basis route for the twin-beam: number-basis coefficients f_n and the
//! Fisher information 4 sum_n (d f_n)^2, fully independent of the phase-space
//! machinery.
//!
//! The prefactor 4 is the pure-state Fisher information 4[<dpsi|dpsi> +
//! <dpsi|psi>^2] with real coefficients, for which <psi|dpsi> = 0.

use crate::scalar::{fp, tol, Scalar};

use super::GaussianError;

/// Which entanglement measure parametrizes the coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwinBeamParam {
    /// f_n^2 = 2 (cosh e - 1)^n / (cosh e + 1)^{n+1}.
    LogNegativity,
    /// f_n^2 = 2 e^n (1 - e) / (2 - e)^{n+1}.
    LinearEntropy,
}

/// Truncated Fock expansion with its norm deficit.
#[derive(Clone, Debug)]
pub struct FockExpansion<F: Scalar> {
    pub coefficients: Vec<F>,
    pub deficit: F,
}

/// Fisher information from the truncated derivative sum.
#[derive(Clone, Copy, Debug)]
pub struct FockQfi<F: Scalar> {
    pub fisher: F,
    pub deficit: F,
    pub n_max: usize,
}

fn norm_deficit_limit<F: Scalar>() -> F {
    tol::<F>(1e-12)
}

/// Geometric decay ratio of f_n^2.
fn ratio<F: Scalar>(param: TwinBeamParam, eps: F) -> Result<F, GaussianError> {
    match param {
        TwinBeamParam::LogNegativity => {
            if eps < F::zero() {
                return Err(GaussianError::MeasureRange {
                    value: eps.to_f64().unwrap_or(f64::NAN),
                    lo: 0.0,
                    hi: f64::INFINITY,
                });
            }
            let c = eps.cosh();
            Ok((c - F::one()) / (c + F::one()))
        }
        TwinBeamParam::LinearEntropy => {
            if !(eps >= F::zero() && eps < F::one()) {
                return Err(GaussianError::MeasureRange {
                    value: eps.to_f64().unwrap_or(f64::NAN),
                    lo: 0.0,
                    hi: 1.0,
                });
            }
            Ok(eps / (fp::<F>(2.0) - eps))
        }
    }
}

/// Smallest truncation with tail below 1e-12, doubled so the derivative sum
/// converges at the same level.
fn auto_n_max<F: Scalar>(r: F) -> usize {
    if r <= F::zero() {
        return 8;
    }
    let limit = norm_deficit_limit::<F>();
    let n = (limit.ln() / r.ln()).ceil().to_f64().unwrap_or(8.0).max(4.0) as usize;
    (2 * n).max(8)
}

fn coefficient<F: Scalar>(param: TwinBeamParam, eps: F, n: usize) -> F {
    let one = F::one();
    let two = fp::<F>(2.0);
    let nf = fp::<F>(n as f64);
    match param {
        TwinBeamParam::LogNegativity => {
            let c = eps.cosh();
            // 2 (c-1)^n / (c+1)^{n+1}, in log form to survive large n
            if n == 0 {
                (two / (c + one)).sqrt()
            } else {
                let ln = two.ln() + nf * (c - one).ln() - (nf + one) * (c + one).ln();
                (ln * fp(0.5)).exp()
            }
        }
        TwinBeamParam::LinearEntropy => {
            if n == 0 {
                (two * (one - eps) / (two - eps)).sqrt()
            } else {
                let ln = two.ln() + nf * eps.ln() + (one - eps).ln()
                    - (nf + one) * (two - eps).ln();
                (ln * fp(0.5)).exp()
            }
        }
    }
}

/// d f_n / d eps, analytic.
fn coefficient_derivative<F: Scalar>(param: TwinBeamParam, eps: F, n: usize) -> F {
    let one = F::one();
    let half = fp::<F>(0.5);
    let nf = fp::<F>(n as f64);
    let f = coefficient(param, eps, n);
    match param {
        TwinBeamParam::LogNegativity => {
            let c = eps.cosh();
            let s = eps.sinh();
            // d(ln f) = [n s/(c-1) - (n+1) s/(c+1)] / 2
            let dlog = if n == 0 {
                -half * s / (c + one)
            } else {
                half * (nf * s / (c - one) - (nf + one) * s / (c + one))
            };
            f * dlog
        }
        TwinBeamParam::LinearEntropy => {
            let two = fp::<F>(2.0);
            let dlog = if n == 0 {
                half * (-(one - eps).recip() + (two - eps).recip())
            } else {
                half * (nf / eps - (one - eps).recip() + (nf + one) / (two - eps))
            };
            f * dlog
        }
    }
}

/// Twin-beam Fock coefficients at the requested truncation (or an automatic
/// one); errors when an explicit truncation leaves a norm deficit above
/// 1e-12.
pub fn twin_beam_coefficients<F: Scalar>(
    param: TwinBeamParam,
    eps: F,
    n_max: Option<usize>,
) -> Result<FockExpansion<F>, GaussianError> {
    let r = ratio(param, eps)?;
    let n = n_max.unwrap_or_else(|| auto_n_max(r));
    let coefficients: Vec<F> = (0..=n).map(|k| coefficient(param, eps, k)).collect();
    let norm: F = coefficients.iter().map(|&f| f * f).sum();
    let deficit = (F::one() - norm).max(F::zero());
    let limit = norm_deficit_limit::<F>();
    if n_max.is_some() && deficit > limit {
        return Err(GaussianError::TruncationTooSmall {
            deficit: deficit.to_f64().unwrap_or(f64::NAN),
            limit: limit.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(FockExpansion { coefficients, deficit })
}

/// Fisher information of the twin-beam in the chosen parametrization from
/// the Fock derivative sum.
pub fn twin_beam_fock_qfi<F: Scalar>(
    param: TwinBeamParam,
    eps: F,
    n_max: Option<usize>,
) -> Result<FockQfi<F>, GaussianError> {
    let expansion = twin_beam_coefficients(param, eps, n_max)?;
    let n = expansion.coefficients.len() - 1;
    let mut sum = F::zero();
    for k in 0..=n {
        let d = coefficient_derivative(param, eps, k);
        sum = sum + d * d;
    }
    Ok(FockQfi { fisher: fp::<F>(4.0) * sum, deficit: expansion.deficit, n_max: n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_limit() {
        let e = twin_beam_coefficients(TwinBeamParam::LogNegativity, 0.0_f64, None).unwrap();
        assert!((e.coefficients[0] - 1.0).abs() < 1e-15);
        assert!(e.coefficients[1..].iter().all(|&f| f == 0.0));
    }

    #[test]
    fn normalization_from_geometric_series() {
        let e = twin_beam_coefficients(TwinBeamParam::LogNegativity, 2.0_f64, Some(400)).unwrap();
        let norm: f64 = e.coefficients.iter().map(|f| f * f).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        let e = twin_beam_coefficients(TwinBeamParam::LinearEntropy, 0.6_f64, None).unwrap();
        let norm: f64 = e.coefficients.iter().map(|f| f * f).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn too_small_truncation_rejected() {
        assert!(matches!(
            twin_beam_coefficients(TwinBeamParam::LogNegativity, 2.0_f64, Some(10)),
            Err(GaussianError::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn log_negativity_fisher_is_unit() {
        for e in [0.2_f64, 0.7, 1.5, 2.5] {
            let r = twin_beam_fock_qfi(TwinBeamParam::LogNegativity, e, None).unwrap();
            assert!((r.fisher - 1.0).abs() < 1e-10, "eps={e}: {}", r.fisher);
        }
    }

    #[test]
    fn linear_entropy_fisher_closed_form() {
        for e in [0.1_f64, 0.3, 0.5, 0.8] {
            let r = twin_beam_fock_qfi(TwinBeamParam::LinearEntropy, e, None).unwrap();
            let expect = ((2.0 - e) * (1.0 - e) * (1.0 - e) * e).recip();
            assert!(
                (r.fisher - expect).abs() / expect < 1e-10,
                "eps={e}: {} vs {expect}",
                r.fisher
            );
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let e = 0.8_f64;
        let h = 1e-6;
        for n in [0usize, 1, 3, 10] {
            let an = coefficient_derivative(TwinBeamParam::LogNegativity, e, n);
            let fd = (coefficient(TwinBeamParam::LogNegativity, e + h, n)
                - coefficient(TwinBeamParam::LogNegativity, e - h, n))
                / (2.0 * h);
            assert!((an - fd).abs() < 1e-8, "n={n}: {an} vs {fd}");
        }
    }
}
