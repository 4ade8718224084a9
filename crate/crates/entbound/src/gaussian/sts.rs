//! Squeezed symmetric thermal states: closed-form Fisher matrix in the
//! natural parameters (r, N_t), the reparametrization to (d-tilde, mu) with
//! mu = 1/(1 + 2 N_t), measure-specific variance bounds, and an independent
//! Fock-basis oracle.
//!
//! The oracle builds the state in the number basis sector by sector: the
//! two-mode squeezer preserves the photon-number difference, so the density
//! matrix is block diagonal over sectors |n+d, n>. Each sector is
//! exponentiated, differentiated analytically and fed to the eigenbasis
//! Fisher sum; sector contributions add.

use crate::estimation::{qfi_from_parts, TransferMatrix};
use crate::linalg::{hermitian_eig_unchecked, ComplexMatrix};
use crate::scalar::{cr, fp, tol, Scalar};

use super::{GaussianError, GaussianMeasure};

/// Least partial-transpose symplectic eigenvalue: exp(-2r) (1 + 2 N_t) / 2.
pub fn sts_dtilde<F: Scalar>(r: F, n_thermal: F) -> F {
    (-fp::<F>(2.0) * r).exp() * (F::one() + fp::<F>(2.0) * n_thermal) * fp(0.5)
}

/// Thermal purity parameter mu = 1/(1 + 2 N_t) (per mode; the global purity
/// of the two-mode state is its square).
pub fn sts_mu<F: Scalar>(n_thermal: F) -> F {
    (F::one() + fp::<F>(2.0) * n_thermal).recip()
}

/// Closed-form Fisher matrix diagonal in (r, N_t):
/// (8 - 4/(1 + 2 N_t (1 + N_t)), 2/(N_t (1 + N_t))).
pub fn sts_qfi_closed<F: Scalar>(r: F, n_thermal: F) -> Result<[F; 2], GaussianError> {
    check_rn(r, n_thermal)?;
    let one = F::one();
    let two = fp::<F>(2.0);
    let n = n_thermal;
    Ok([
        fp::<F>(8.0) - fp::<F>(4.0) / (one + two * n * (one + n)),
        two / (n * (one + n)),
    ])
}

/// Transfer matrix for (r, N_t) -> (d-tilde, mu); row i holds the derivatives
/// of the natural parameters with respect to new parameter i.
pub fn sts_transfer<F: Scalar>(dtilde: F, mu: F) -> TransferMatrix<F> {
    let two = fp::<F>(2.0);
    TransferMatrix::from_rows(&[
        vec![-(two * dtilde).recip(), F::zero()],
        vec![-(two * mu).recip(), -(two * mu * mu).recip()],
    ])
}

/// Closed-form inverse Fisher matrix in (d-tilde, mu):
/// [[d^2, -d mu (1-mu^2)/2], [-d mu (1-mu^2)/2, mu^2 (1-mu^2)/2]].
pub fn sts_inverse_qfi<F: Scalar>(dtilde: F, mu: F) -> [[F; 2]; 2] {
    let half = fp::<F>(0.5);
    let om2 = F::one() - mu * mu;
    let off = -dtilde * mu * om2 * half;
    [[dtilde * dtilde, off], [off, mu * mu * om2 * half]]
}

/// Variance bound, signal-to-noise ratio and the underlying symplectic
/// eigenvalue for estimating a measure of a squeezed thermal state at fixed
/// purity.
#[derive(Clone, Copy, Debug)]
pub struct StsBound<F: Scalar> {
    pub dtilde: F,
    pub var_bound: F,
    pub qsnr: F,
}

/// Bounds for the mixed-state measures. The d-tilde variance bound is
/// d-tilde^2 independently of the purity, so every measure bound follows by
/// the scalar chain rule.
pub fn sts_bounds<F: Scalar>(
    measure: GaussianMeasure,
    eps: F,
    mu: F,
) -> Result<StsBound<F>, GaussianError> {
    if !(mu > F::zero() && mu < F::one()) {
        return Err(GaussianError::Domain {
            name: "mu",
            value: mu.to_f64().unwrap_or(f64::NAN),
            lo: 0.0,
            hi: 1.0,
        });
    }
    match measure {
        GaussianMeasure::SymplecticEig | GaussianMeasure::EpsS | GaussianMeasure::EpsB => {}
        other => {
            return Err(GaussianError::MeasureRange {
                value: f64::NAN,
                lo: 0.0,
                hi: 0.0,
            })
            .map_err(|_| GaussianError::Unphysical {
                reason: format!("measure {} is not defined for mixed states here", other.label()),
            })
        }
    }
    let dtilde = measure.dtilde_from(eps)?;
    let slope = measure.ddtilde_deps(eps)?;
    let var_bound = dtilde * dtilde / (slope * slope);
    let qsnr = if var_bound > F::zero() { eps * eps / var_bound } else { F::infinity() };
    Ok(StsBound { dtilde, var_bound, qsnr })
}

fn check_rn<F: Scalar>(r: F, n_thermal: F) -> Result<(), GaussianError> {
    if !(r > F::zero()) {
        return Err(GaussianError::Domain {
            name: "r",
            value: r.to_f64().unwrap_or(f64::NAN),
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    if !(n_thermal > F::zero()) {
        return Err(GaussianError::Domain {
            name: "n_thermal",
            value: n_thermal.to_f64().unwrap_or(f64::NAN),
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    Ok(())
}

/// Numeric Fisher matrix from the Fock-basis oracle.
#[derive(Clone, Debug)]
pub struct StsOracleResult<F: Scalar> {
    pub h: [[F; 2]; 2],
    /// Number of photon-number-difference sectors summed (counting both
    /// signs).
    pub sectors: usize,
    /// Total captured trace; the deficit bounds the truncation error.
    pub trace_weight: F,
}

/// Independent numeric route: eigendecompose the Fock-truncated state sector
/// by sector and apply the eigenbasis Fisher sum with analytic derivatives.
///
/// `n_max` is the per-sector excitation cutoff (default 48); sectors are
/// included until their trace drops below 1e-11.
pub fn sts_qfi_fock_oracle<F: Scalar>(
    r: F,
    n_thermal: F,
    n_max: Option<usize>,
) -> Result<StsOracleResult<F>, GaussianError> {
    check_rn(r, n_thermal)?;
    let n_max = n_max.unwrap_or(48);
    let sector_cut = tol::<F>(1e-11);
    let kernel_cut = tol::<F>(1e-12);

    let mut h = [[F::zero(); 2]; 2];
    let mut sectors = 0usize;
    let mut trace_weight = F::zero();
    let mut diff = 0usize;
    loop {
        let (rho, drho_r, drho_n, weight) = sector_state(diff, r, n_thermal, n_max);
        if diff > 0 && weight < sector_cut {
            break;
        }
        let eig = hermitian_eig_unchecked(&rho);
        let (hb, _) = qfi_from_parts(&eig, &[&drho_r, &drho_n], kernel_cut);
        let mult = if diff == 0 { F::one() } else { fp::<F>(2.0) };
        for i in 0..2 {
            for j in 0..2 {
                h[i][j] = h[i][j] + hb[(i, j)].re * mult;
            }
        }
        trace_weight = trace_weight + weight * mult;
        sectors += if diff == 0 { 1 } else { 2 };
        diff += 1;
        if diff > 4 * n_max {
            break;
        }
    }
    Ok(StsOracleResult { h, sectors, trace_weight })
}

/// Thermal occupation probability N^n / (1+N)^{n+1}.
fn thermal_weight<F: Scalar>(n: usize, nt: F) -> F {
    nt.powi(n as i32) / (F::one() + nt).powi(n as i32 + 1)
}

/// One photon-number-difference sector: the state, its analytic derivatives
/// in r and N_t, and its trace.
fn sector_state<F: Scalar>(
    diff: usize,
    r: F,
    nt: F,
    n_max: usize,
) -> (ComplexMatrix<F>, ComplexMatrix<F>, ComplexMatrix<F>, F) {
    let dim = n_max + 1;
    // two-mode squeezing generator restricted to the sector; real
    // antisymmetric tridiagonal with couplings sqrt((n+1+diff)(n+1))
    let mut k = ComplexMatrix::<F>::zeros(dim, dim);
    for n in 0..n_max {
        let amp = (fp::<F>((n + 1 + diff) as f64) * fp::<F>((n + 1) as f64)).sqrt();
        k[(n + 1, n)] = cr(amp);
        k[(n, n + 1)] = cr(-amp);
    }
    // exp(r K) through the Hermitian matrix i K
    let ik = ComplexMatrix::from_fn(dim, dim, |i, j| {
        let v = k[(i, j)];
        num_complex::Complex::new(-v.im, v.re)
    });
    let eig = hermitian_eig_unchecked(&ik);
    let s_complex = eig.apply(|x| {
        let phase = -r * x;
        num_complex::Complex::new(phase.cos(), phase.sin())
    });
    let s = ComplexMatrix::from_fn(dim, dim, |i, j| cr(s_complex[(i, j)].re));

    let weights: Vec<F> =
        (0..dim).map(|n| thermal_weight(n + diff, nt) * thermal_weight(n, nt)).collect();
    let dweights: Vec<F> = (0..dim)
        .map(|n| {
            let w = weights[n];
            let na = fp::<F>((n + diff) as f64);
            let nb = fp::<F>(n as f64);
            let one = F::one();
            w * (na / nt - (na + one) / (one + nt) + nb / nt - (nb + one) / (one + nt))
        })
        .collect();

    let scaled = |col_scale: &[F]| -> ComplexMatrix<F> {
        let mut m = s.clone();
        for j in 0..dim {
            for i in 0..dim {
                m[(i, j)] = m[(i, j)].scale(col_scale[j]);
            }
        }
        m.matmul(&s.transpose())
    };
    let rho = scaled(&weights);
    let drho_n = scaled(&dweights);
    // d/dr exp(rK) D exp(rK)^T = K rho - rho K
    let drho_r = &k.matmul(&rho) - &rho.matmul(&k);
    let trace = rho.trace().re;
    (rho, drho_r, drho_n, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::reparametrize;
    use crate::estimation::QfiResult;
    use crate::linalg::ComplexMatrix;
    use crate::scalar::cr;

    #[test]
    fn closed_form_values() {
        let h = sts_qfi_closed(0.5_f64, 1.0).unwrap();
        assert!((h[0] - 7.2).abs() < 1e-14);
        assert!((h[1] - 1.0).abs() < 1e-14);
        // N_t -> 0 limit approaches the pure twin-beam value 4
        let h = sts_qfi_closed(0.5_f64, 1e-9).unwrap();
        assert!((h[0] - 4.0).abs() < 1e-7);
    }

    #[test]
    fn oracle_matches_closed_form() {
        for (r, nt) in [(0.5_f64, 0.5_f64), (0.2, 0.8), (1.0, 1.0)] {
            let closed = sts_qfi_closed(r, nt).unwrap();
            let oracle = sts_qfi_fock_oracle(r, nt, None).unwrap();
            for i in 0..2 {
                let rel = (oracle.h[i][i] - closed[i]).abs() / closed[i];
                assert!(rel < 1e-6, "({r},{nt}) entry {i}: rel {rel}");
            }
            assert!(oracle.h[0][1].abs() < 1e-9);
            assert!((1.0 - oracle.trace_weight).abs() < 1e-9);
        }
    }

    #[test]
    fn inverse_matrix_follows_from_transfer() {
        let (r, nt) = (0.4_f64, 0.6_f64);
        let d = sts_dtilde(r, nt);
        let mu = sts_mu(nt);
        let closed = sts_qfi_closed(r, nt).unwrap();
        let mut h = ComplexMatrix::<f64>::zeros(2, 2);
        h[(0, 0)] = cr(closed[0]);
        h[(1, 1)] = cr(closed[1]);
        let natural = QfiResult::from_matrix(h, 0.0, 0).unwrap();
        let moved = reparametrize(&natural, &sts_transfer(d, mu)).unwrap();
        let want = sts_inverse_qfi(d, mu);
        for i in 0..2 {
            for j in 0..2 {
                assert!(
                    (moved.h_inv_entry(i, j) - want[i][j]).abs() < 1e-12,
                    "({i},{j}): {} vs {}",
                    moved.h_inv_entry(i, j),
                    want[i][j]
                );
            }
        }
        // and the headline value: Var(dtilde) = dtilde^2, independent of mu
        assert!((moved.h_inv_entry(0, 0) - d * d).abs() < 1e-12);
    }

    #[test]
    fn measure_bounds() {
        // Var(epsS) = (1-eps)^2
        let b = sts_bounds(GaussianMeasure::EpsS, 0.4_f64, 0.5).unwrap();
        assert!((b.var_bound - 0.36).abs() < 1e-14);
        assert!((b.dtilde - 0.3).abs() < 1e-14);
        // epsS = 0 boundary value 1 approached
        let b = sts_bounds(GaussianMeasure::EpsS, 1e-12_f64, 0.5).unwrap();
        assert!((b.var_bound - 1.0).abs() < 1e-9);
        // Var(epsB) peaks at 1 - 1/sqrt(2) with value 1/16
        let peak = 1.0 - 1.0 / 2.0_f64.sqrt();
        let b = sts_bounds(GaussianMeasure::EpsB, peak, 0.5).unwrap();
        assert!((b.var_bound - 0.0625).abs() < 1e-12);
        for de in [-1e-3, 1e-3] {
            let b2 = sts_bounds(GaussianMeasure::EpsB, peak + de, 0.5).unwrap();
            assert!(b2.var_bound < b.var_bound);
        }
        // off-scope measures rejected
        assert!(sts_bounds(GaussianMeasure::LinearEntropy, 0.3_f64, 0.5).is_err());
    }

    #[test]
    fn qsnr_identities() {
        // Q(dtilde) = 1 on the entire range
        for d in [0.05_f64, 0.2, 0.45] {
            let b = sts_bounds(GaussianMeasure::SymplecticEig, d, 0.7).unwrap();
            assert!((b.qsnr - 1.0).abs() < 1e-12);
        }
        // small-measure asymptotics: Q(epsS) ~ eps^2, Q(epsB) ~ 2 eps
        let e = 1e-4_f64;
        let qs = sts_bounds(GaussianMeasure::EpsS, e, 0.5).unwrap().qsnr;
        assert!((qs / (e * e) - 1.0).abs() < 0.01);
        let qb = sts_bounds(GaussianMeasure::EpsB, e, 0.5).unwrap().qsnr;
        assert!((qb / (2.0 * e) - 1.0).abs() < 0.01);
    }
}
