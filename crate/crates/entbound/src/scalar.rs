//! Scalar abstraction: the whole crate is generic over the real floating-point
//! type via `num-traits`. Concrete code should use the `f64` aliases exported
//! from the crate root.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, NumAssign};

/// Real scalar: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
}

/// Shorthand for the complex type built on a scalar.
pub type C<F> = Complex<F>;

/// Convert an `f64` constant into the working scalar type.
///
/// Panics only if the conversion is unrepresentable, which cannot happen for
/// the finite constants used in this crate.
#[inline]
pub fn fp<F: Scalar>(x: f64) -> F {
    F::from_f64(x).expect("constant not representable in scalar type")
}

/// A tolerance constant, floored at a small multiple of the machine epsilon so
/// that reduced-precision scalars (`f32`) keep usable thresholds.
#[inline]
pub fn tol<F: Scalar>(t: f64) -> F {
    fp::<F>(t).max(F::epsilon() * fp::<F>(256.0))
}

/// Complex number from real `f64` parts.
#[inline]
pub fn cf<F: Scalar>(re: f64, im: f64) -> C<F> {
    Complex::new(fp(re), fp(im))
}

/// Purely real complex value.
#[inline]
pub fn cr<F: Scalar>(re: F) -> C<F> {
    Complex::new(re, F::zero())
}
