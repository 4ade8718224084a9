//! Precision bounds for estimating the entanglement of bipartite quantum
//! states.
//!
//! Entanglement is not an observable; its value must be inferred from
//! measurements of other quantities, which makes it a parameter-estimation
//! problem. This crate computes the quantum-mechanical limits of that
//! procedure for a catalogue of qubit, qutrit and Gaussian state families:
//!
//! - [`linalg`]: dense complex linear algebra for small dimensions with the
//!   bipartite kernels (partial transpose/trace, negativity),
//! - [`estimation`]: symmetric logarithmic derivatives, quantum Fisher
//!   information (scalar and matrix), classical Fisher information of a POVM,
//!   reparametrization, signal-to-noise ratios, measurement budgets and a
//!   Monte Carlo saturation harness,
//! - [`families`]: two-qubit pure states, entangled mixtures, Werner-like
//!   states and a two-qutrit family with positive partial transpose, together
//!   with their entanglement measures and closed-form reference values,
//! - [`gaussian`]: two-mode covariance matrices, symplectic eigenvalues,
//!   Gaussian entanglement measures, a phase-space evaluation of the
//!   pure-state Fisher information and Fock-basis oracles,
//! - [`verify`]: the regression catalogue run by the command-line `verify`
//!   subcommand.
//!
//! All numeric code is generic over the real scalar type (see
//! [`scalar::Scalar`]); the aliases below fix `f64` for ordinary use.

pub mod estimation;
pub mod families;
pub mod gaussian;
pub mod linalg;
pub mod scalar;
pub mod verify;

/// Working real type for ordinary use.
pub type Real = f64;
/// Complex matrix over [`Real`].
pub type Matrix = linalg::ComplexMatrix<Real>;
/// Spectral decomposition over [`Real`].
pub type Spectral = linalg::SpectralDecomposition<Real>;
// (alias restored once estimation lands)
// pub type Qfi = estimation::QfiResult<Real>;

// pub type Covariance = gaussian::TwoModeCovariance<Real>;
