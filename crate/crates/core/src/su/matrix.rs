use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Hilbert-space dimension: one spin or two spins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dim {
    Two,
    Four,
}

impl Dim {
    pub fn size(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Four => 4,
        }
    }

    pub fn from_size(n: usize) -> Result<Self> {
        match n {
            2 => Ok(Dim::Two),
            4 => Ok(Dim::Four),
            _ => Err(Error::BadDimension(n)),
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.size())
    }
}

/// Dense square complex matrix of dimension 2 or 4, stored row-major.
///
/// Entries outside the leading `dim x dim` block are always zero, so
/// derived equality compares only meaningful data.
#[derive(Clone, Copy, PartialEq)]
pub struct Matrix {
    dim: Dim,
    data: [Complex64; 16],
}

impl Matrix {
    pub fn zeros(dim: Dim) -> Self {
        Self {
            dim,
            data: [ZERO; 16],
        }
    }

    pub fn identity(dim: Dim) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim.size() {
            m.data[k * 4 + k] = ONE;
        }
        m
    }

    /// Build from a row-major slice of length 4 or 16.
    pub fn from_rows(entries: &[Complex64]) -> Result<Self> {
        let dim = match entries.len() {
            4 => Dim::Two,
            16 => Dim::Four,
            n => return Err(Error::BadDimension((n as f64).sqrt() as usize)),
        };
        let n = dim.size();
        let mut m = Self::zeros(dim);
        for i in 0..n {
            for j in 0..n {
                m.data[i * 4 + j] = entries[i * n + j];
            }
        }
        Ok(m)
    }

    pub fn from_real_rows(entries: &[f64]) -> Result<Self> {
        let c: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_rows(&c)
    }

    pub fn diagonal(entries: &[Complex64]) -> Result<Self> {
        let dim = Dim::from_size(entries.len())?;
        let mut m = Self::zeros(dim);
        for (k, &z) in entries.iter().enumerate() {
            m.data[k * 4 + k] = z;
        }
        Ok(m)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.dim.size()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        debug_assert!(row < self.size() && col < self.size());
        self.data[row * 4 + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        debug_assert!(row < self.size() && col < self.size());
        self.data[row * 4 + col] = value;
    }

    /// Row-major entries of the `dim x dim` block.
    pub fn entries(&self) -> Vec<Complex64> {
        let n = self.size();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.size();
        let mut m = Self::zeros(self.dim);
        for i in 0..n {
            for j in 0..n {
                m.data[j * 4 + i] = self.data[i * 4 + j].conj();
            }
        }
        m
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let mut m = *self;
        m.data.iter_mut().for_each(|x| *x *= z);
        m
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.scale(Complex64::new(x, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.size()).map(|k| self.get(k, k)).sum()
    }

    /// Kronecker product of two 2x2 matrices; `self` is the left factor.
    pub fn kron(&self, rhs: &Matrix) -> Result<Self> {
        if self.dim != Dim::Two || rhs.dim != Dim::Two {
            return Err(Error::DimensionMismatch(self.size(), rhs.size()));
        }
        let mut m = Self::zeros(Dim::Four);
        for (a, b) in (0..2).flat_map(|a| (0..2).map(move |b| (a, b))) {
            for (c, d) in (0..2).flat_map(|c| (0..2).map(move |d| (c, d))) {
                m.data[(2 * a + c) * 4 + (2 * b + d)] = self.get(a, b) * rhs.get(c, d);
            }
        }
        Ok(m)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `max |(M^dagger M - I)_ij|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().matmul(self);
        p.max_abs_diff(&Matrix::identity(self.dim))
            .expect("same dimension")
    }

    /// `max |(M - M^dagger)_ij|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint()).expect("same dimension")
    }

    pub fn check_dim(&self, other: &Matrix) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.size(), other.size()))
        }
    }

    /// Matrix product; panics on dimension mismatch.
    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let n = self.size();
        let mut m = Self::zeros(self.dim);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * 4 + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    m.data[i * 4 + j] += a * rhs.data[k * 4 + j];
                }
            }
        }
        m
    }

    pub(crate) fn to_nalgebra(self) -> nalgebra::DMatrix<Complex64> {
        let n = self.size();
        nalgebra::DMatrix::from_fn(n, n, |i, j| self.get(i, j))
    }

    pub(crate) fn from_nalgebra(m: &nalgebra::DMatrix<Complex64>) -> Result<Self> {
        let dim = Dim::from_size(m.nrows())?;
        if m.ncols() != m.nrows() {
            return Err(Error::DimensionMismatch(m.nrows(), m.ncols()));
        }
        let mut out = Self::zeros(dim);
        for i in 0..dim.size() {
            for j in 0..dim.size() {
                out.data[i * 4 + j] = m[(i, j)];
            }
        }
        Ok(out)
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        self.matmul(&rhs)
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl Add for Matrix {
    type Output = Matrix;
    fn add(mut self, rhs: Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        self.data
            .iter_mut()
            .zip(rhs.data.iter())
            .for_each(|(a, b)| *a += b);
        self
    }
}

impl Sub for Matrix {
    type Output = Matrix;
    fn sub(mut self, rhs: Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        self.data
            .iter_mut()
            .zip(rhs.data.iter())
            .for_each(|(a, b)| *a -= b);
        self
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix({}x{}) [", self.size(), self.size())?;
        for i in 0..self.size() {
            write!(f, "  ")?;
            for j in 0..self.size() {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
