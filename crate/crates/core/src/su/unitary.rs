use std::ops::Mul;

use num_complex::Complex64;

use super::matrix::{Dim, Matrix};
use crate::error::{Error, Result};

/// Tolerance on `U^dagger U - I` accepted for a propagator.
pub const UNITARY_TOL: f64 = 1e-12;

/// A 2x2 or 4x4 unitary propagator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary(Matrix);

impl Unitary {
    pub fn new(m: Matrix) -> Result<Self> {
        let defect = m.unitarity_defect();
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary(defect));
        }
        Ok(Self(m))
    }

    /// Wrap without checking; only for products of checked unitaries.
    pub(crate) fn from_matrix_unchecked(m: Matrix) -> Self {
        Self(m)
    }

    pub fn identity(dim: Dim) -> Self {
        Self(Matrix::identity(dim))
    }

    pub fn diagonal(phases: &[Complex64]) -> Result<Self> {
        Self::new(Matrix::diagonal(phases)?)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> Dim {
        self.0.dim()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0.get(row, col)
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// `e^{i alpha} U`.
    pub fn with_global_phase(&self, alpha: f64) -> Self {
        Self(self.0.scale(Complex64::from_polar(1.0, alpha)))
    }

    pub fn kron(&self, rhs: &Unitary) -> Result<Self> {
        Ok(Self(self.0.kron(&rhs.0)?))
    }

    pub fn max_abs_diff(&self, other: &Unitary) -> Result<f64> {
        self.0.max_abs_diff(&other.0)
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.0.unitarity_defect()
    }

    /// Action on a computational basis state: column `index` of `U`.
    pub fn apply_to_basis(&self, index: usize) -> Vec<Complex64> {
        (0..self.0.size()).map(|r| self.0.get(r, index)).collect()
    }
}

impl Mul for Unitary {
    type Output = Unitary;
    fn mul(self, rhs: Unitary) -> Unitary {
        Unitary(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Unitary> for &'a Unitary {
    type Output = Unitary;
    fn mul(self, rhs: &Unitary) -> Unitary {
        Unitary(self.0.matmul(&rhs.0))
    }
}
