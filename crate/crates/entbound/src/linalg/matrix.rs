//! Dense complex matrices for small dimensions.
//!
//! Row-major storage, value semantics. Everything here targets matrices of
//! dimension well below ~200, which is all the Fock-truncation oracles ever
//! need; no attempt is made at blocking or sparsity.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;

use crate::scalar::{cr, Scalar, C};

use super::LinalgError;

/// Dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix<F: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<C<F>>,
}

impl<F: Scalar> ComplexMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![Complex::new(F::zero(), F::zero()); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(F::one(), F::zero());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<F>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from nested rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<C<F>>]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    /// Real diagonal matrix.
    pub fn from_diag(diag: &[F]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = cr(d);
        }
        m
    }

    /// Rank-1 projector |v><v|.
    pub fn outer(v: &[C<F>]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<C<F>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conjugate(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C<F> {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).fold(Complex::new(F::zero(), F::zero()), |a, b| a + b)
    }

    pub fn scale(&self, s: C<F>) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * s)
    }

    pub fn scale_re(&self, s: F) -> Self {
        self.scale(cr(s))
    }

    /// Largest entry magnitude (max norm).
    pub fn max_abs(&self) -> F {
        self.data.iter().map(|z| z.norm()).fold(F::zero(), F::max)
    }

    /// Largest deviation from the conjugate transpose.
    pub fn max_asymmetry(&self) -> F {
        assert!(self.is_square());
        let mut worst = F::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tolerance: F) -> bool {
        self.is_square() && self.max_asymmetry() <= tolerance
    }

    /// Reject non-Hermitian input with a diagnostic of the worst asymmetry.
    pub fn require_hermitian(&self, tolerance: F) -> Result<(), LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let asym = self.max_asymmetry();
        if asym > tolerance {
            return Err(LinalgError::NotHermitian { max_asymmetry: asym.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(())
    }

    /// Matrix product.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == F::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Apply the matrix to a vector.
    pub fn matvec(&self, v: &[C<F>]) -> Vec<C<F>> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self[(i, j)] * v[j])
                    .fold(Complex::new(F::zero(), F::zero()), |a, b| a + b)
            })
            .collect()
    }

    /// U * A * U^dagger.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.matmul(self).matmul(&u.adjoint())
    }

    /// Kronecker (tensor) product.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (ra, ca, rb, cb) = (self.rows, self.cols, rhs.rows, rhs.cols);
        Self::from_fn(ra * rb, ca * cb, |i, j| self[(i / rb, j / cb)] * rhs[(i % rb, j % cb)])
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn det(&self) -> C<F> {
        assert!(self.is_square());
        let n = self.rows;
        let mut lu = self.clone();
        let mut det = Complex::new(F::one(), F::zero());
        for k in 0..n {
            let mut pivot = k;
            let mut best = lu[(k, k)].norm();
            for i in k + 1..n {
                let mag = lu[(i, k)].norm();
                if mag > best {
                    best = mag;
                    pivot = i;
                }
            }
            if best == F::zero() {
                return Complex::new(F::zero(), F::zero());
            }
            if pivot != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(pivot, j)];
                    lu[(pivot, j)] = tmp;
                }
                det = -det;
            }
            det = det * lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / lu[(k, k)];
                for j in k..n {
                    let sub = factor * lu[(k, j)];
                    lu[(i, j)] = lu[(i, j)] - sub;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let mut pivot = k;
            let mut best = a[(k, k)].norm();
            for i in k + 1..n {
                let mag = a[(i, k)].norm();
                if mag > best {
                    best = mag;
                    pivot = i;
                }
            }
            if best == F::zero() {
                return Err(LinalgError::Singular);
            }
            if pivot != k {
                for j in 0..n {
                    let t = a[(k, j)];
                    a[(k, j)] = a[(pivot, j)];
                    a[(pivot, j)] = t;
                    let t = inv[(k, j)];
                    inv[(k, j)] = inv[(pivot, j)];
                    inv[(pivot, j)] = t;
                }
            }
            let d = a[(k, k)];
            for j in 0..n {
                a[(k, j)] = a[(k, j)] / d;
                inv[(k, j)] = inv[(k, j)] / d;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[(i, k)];
                if f.norm_sqr() == F::zero() {
                    continue;
                }
                for j in 0..n {
                    let s1 = f * a[(k, j)];
                    a[(i, j)] = a[(i, j)] - s1;
                    let s2 = f * inv[(k, j)];
                    inv[(i, j)] = inv[(i, j)] - s2;
                }
            }
        }
        Ok(inv)
    }
}

impl<F: Scalar> Index<(usize, usize)> for ComplexMatrix<F> {
    type Output = C<F>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<F> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F: Scalar> IndexMut<(usize, usize)> for ComplexMatrix<F> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<F> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Scalar> Add for &ComplexMatrix<F> {
    type Output = ComplexMatrix<F>;
    fn add(self, rhs: Self) -> ComplexMatrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + rhs[(i, j)])
    }
}

impl<F: Scalar> Sub for &ComplexMatrix<F> {
    type Output = ComplexMatrix<F>;
    fn sub(self, rhs: Self) -> ComplexMatrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - rhs[(i, j)])
    }
}

impl<F: Scalar> Neg for &ComplexMatrix<F> {
    type Output = ComplexMatrix<F>;
    fn neg(self) -> ComplexMatrix<F> {
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| -self[(i, j)])
    }
}

impl<F: Scalar> Mul for &ComplexMatrix<F> {
    type Output = ComplexMatrix<F>;
    fn mul(self, rhs: Self) -> ComplexMatrix<F> {
        self.matmul(rhs)
    }
}

/// Inner product <a|b> with the physicist's convention (conjugate on the left).
pub fn inner<F: Scalar>(a: &[C<F>], b: &[C<F>]) -> C<F> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * *y).fold(Complex::new(F::zero(), F::zero()), |s, t| s + t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cf;

    type M = ComplexMatrix<f64>;

    #[test]
    fn kron_of_identities() {
        let i2 = M::identity(2);
        assert_eq!(i2.kron(&i2), M::identity(4));
    }

    #[test]
    fn det_and_inverse_roundtrip() {
        let a = M::from_rows(&[
            vec![cf(2.0, 1.0), cf(0.0, -1.0), cf(0.5, 0.0)],
            vec![cf(1.0, 0.0), cf(3.0, 0.0), cf(0.0, 2.0)],
            vec![cf(0.0, 0.5), cf(-1.0, 0.0), cf(1.0, -1.0)],
        ]);
        let inv = a.inverse().unwrap();
        let prod = a.matmul(&inv);
        assert!((&prod - &M::identity(3)).max_abs() < 1e-13);
        let det_inv = inv.det();
        assert!((a.det() * det_inv - cf(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn asymmetry_diagnostic() {
        let mut a = M::identity(2);
        a[(0, 1)] = cf(0.0, 1e-3);
        let err = a.require_hermitian(1e-12).unwrap_err();
        match err {
            LinalgError::NotHermitian { max_asymmetry } => {
                assert!((max_asymmetry - 1e-3).abs() < 1e-12)
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
