//! Dense row-major matrices over an exact [`Ring`].

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Ring, UniPoly};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

/// Matrix over the Gaussian rationals.
pub type ExactMatrix = Matrix<GaussianRational>;

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from small integer rows. Panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| T::from_i64(x)).collect())
                .collect(),
        )
        .expect("rectangular rows")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn diagonal(diag: Vec<T>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (k, x) in diag.into_iter().enumerate() {
            m.entries[k * n + k] = x;
        }
        m
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

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut T {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &mut self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        *self.get_mut(r, c) = value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Conjugate transpose `A*`.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.mul_ref(s))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Ring::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|k| self.get(k, k).clone()).collect()
    }

    pub fn trace(&self) -> T {
        self.diagonal_entries().iter().fold(T::zero(), |acc, x| acc.add_ref(x))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.entries[r * rhs.cols + c];
                    *slot = slot.add_ref(&a.mul_ref(b));
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, op: &str, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "cannot {op} {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", T::add_ref)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "subtract", T::sub_ref)
    }

    /// `XY - YX`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(rhs)?.try_sub(&rhs.try_mul(self)?)
    }

    /// First `(row, col)` in row-major order where the matrices differ.
    /// Shape mismatches report `(0, 0)`.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols, k % self.cols))
    }
}

impl ExactMatrix {
    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !work.get(r, col).is_zero()).ok_or(Error::Singular)?;
            if pivot != col {
                work.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = work.get(col, col).inv()?;
            work.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col || work.get(r, col).is_zero() {
                    continue;
                }
                let factor = work.get(r, col).clone();
                work.axpy_row(r, col, &factor);
                inv.axpy_row(r, col, &factor);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &GaussianRational) {
        for c in 0..self.cols {
            let x = self.get(r, c) * s;
            self.set(r, c, x);
        }
    }

    // row[target] -= factor * row[source]
    fn axpy_row(&mut self, target: usize, source: usize, factor: &GaussianRational) {
        for c in 0..self.cols {
            let x = self.get(target, c) - &(factor * self.get(source, c));
            self.set(target, c, x);
        }
    }
}

impl Matrix<UniPoly> {
    /// The numeric matrix of `v^k` coefficients.
    pub fn coefficient(&self, k: usize) -> ExactMatrix {
        self.map(|p| p.coeff(k))
    }

    /// `c + v·x` entry-wise lift of `I + v X`-style expressions: returns
    /// `constant + v * linear`.
    pub fn affine(constant: &ExactMatrix, linear: &ExactMatrix) -> Result<Self> {
        if constant.rows != linear.rows || constant.cols != linear.cols {
            return Err(Error::Shape("affine parts differ in shape".into()));
        }
        Ok(Matrix::from_fn(constant.rows, constant.cols, |r, c| {
            UniPoly::linear(constant.get(r, c).clone(), linear.get(r, c).clone())
        }))
    }
}

impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_mul(rhs).expect("matrix shapes")
    }
}

impl<T: Ring> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_add(rhs).expect("matrix shapes")
    }
}

impl<T: Ring> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_sub(rhs).expect("matrix shapes")
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            f.write_str("  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{:?}", self.entries[r * self.cols + c])?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let a = ExactMatrix::from_ints(&[[1, 1, 1], [1, -1, 0], [1, 1, -2]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, ExactMatrix::identity(3));
        let c = ExactMatrix::from_rows(vec![vec![g("1"), g("8i")], vec![g("1"), g("-9/2i")]]).unwrap();
        assert_eq!(&c.inverse().unwrap() * &c, ExactMatrix::identity(2));
    }

    #[test]
    fn singular_and_shape_errors() {
        let a = ExactMatrix::from_ints(&[[1, 1], [1, 1]]);
        assert_eq!(a.inverse(), Err(Error::Singular));
        let b = ExactMatrix::from_ints(&[[1, 2, 3]]);
        assert!(matches!(a.try_mul(&b.transpose()), Err(Error::Shape(_))));
        assert!(ExactMatrix::new(2, 2, alloc::vec![g("1")]).is_err());
        assert!(ExactMatrix::from_rows(alloc::vec![alloc::vec![g("1")], alloc::vec![]]).is_err());
    }

    #[test]
    fn adjoint_conjugates() {
        let a = ExactMatrix::from_rows(vec![vec![g("1"), g("8i")], vec![g("2-1i"), g("0")]]).unwrap();
        let adj = a.adjoint();
        assert_eq!(adj.get(1, 0), &g("-8i"));
        assert_eq!(adj.get(0, 1), &g("2+1i"));
        assert_eq!(adj.adjoint(), a);
    }

    #[test]
    fn first_difference_locates_entry() {
        let a = ExactMatrix::identity(3);
        let mut b = a.clone();
        b.set(2, 1, g("1"));
        assert_eq!(a.first_difference(&b), Some((2, 1)));
        assert_eq!(a.first_difference(&a), None);
    }
}
