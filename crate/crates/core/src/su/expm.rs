use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use super::matrix::Matrix;
use super::operators::{Generator, PRODUCT_OPERATOR_TOL};
use super::unitary::Unitary;
use crate::error::{Error, Result};

/// `exp(-i theta G)` for a generator with `G^2 = I/4`.
///
/// Uses `cos(theta/2) I - 2i sin(theta/2) G`, which is exact for every
/// named product operator and any unit-norm combination of anticommuting
/// ones (pulse phases, tilted coupling axes).
pub fn expm_rotation(g: &Generator, theta: f64) -> Result<Unitary> {
    let defect = g.product_operator_defect();
    if defect > PRODUCT_OPERATOR_TOL {
        return Err(Error::NotProductOperator(defect));
    }
    let (s, c) = (0.5 * theta).sin_cos();
    let m =
        Matrix::identity(g.dim()).scale_real(c) + g.matrix().scale(Complex64::new(0.0, -2.0 * s));
    Ok(Unitary::from_matrix_unchecked(m))
}

/// `exp(-i theta G)` for any Hermitian generator, by eigendecomposition
/// `V diag(e^{-i theta lambda_k}) V^dagger`.
///
/// Slower than [`expm_rotation`]; kept as an independent route for checking it.
pub fn expm_generic(g: &Generator, theta: f64) -> Result<Unitary> {
    let m = g.matrix();
    let defect = m.hermiticity_defect();
    if defect > super::operators::HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let eig = SymmetricEigen::try_new(m.to_nalgebra(), f64::EPSILON, 0).ok_or(Error::Eigen)?;
    let v = &eig.eigenvectors;
    let phases = nalgebra::DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues
            .iter()
            .map(|&lambda| Complex64::from_polar(1.0, -theta * lambda)),
    );
    let u = v * nalgebra::DMatrix::from_diagonal(&phases) * v.adjoint();
    Unitary::new(Matrix::from_nalgebra(&u)?)
}
