//! Product operators in NMR normalization: single-spin operators are Pauli
//! matrices divided by two, bilinear terms such as `2IzSz` are
//! `(sigma_z (x) sigma_z) / 2`. Spin I is the left tensor factor, so the
//! two-spin basis order is |00>, |01>, |10>, |11> with the I label first.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::{Dim, Matrix};
use crate::error::{Error, Result};

/// Tolerance on `G - G^dagger` accepted for a generator.
pub const HERMITIAN_TOL: f64 = 1e-14;

/// Tolerance on `G^2 - I/4` required by the closed-form exponential.
pub const PRODUCT_OPERATOR_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    I,
    S,
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spin::I => write!(f, "I"),
            Spin::S => write!(f, "S"),
        }
    }
}

impl FromStr for Spin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "i" => Ok(Spin::I),
            "S" | "s" => Ok(Spin::S),
            other => Err(Error::InvalidArgument(format!("unknown spin `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductOperator {
    Ix,
    Iy,
    Iz,
    Sx,
    Sy,
    Sz,
    /// `2 I_z S_z`, the Ising coupling axis.
    IzSz2,
    /// `2 I_z S_x`, the axis the coupling is tilted towards.
    IzSx2,
}

impl ProductOperator {
    pub const ALL: [ProductOperator; 8] = [
        ProductOperator::Ix,
        ProductOperator::Iy,
        ProductOperator::Iz,
        ProductOperator::Sx,
        ProductOperator::Sy,
        ProductOperator::Sz,
        ProductOperator::IzSz2,
        ProductOperator::IzSx2,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ProductOperator::Ix => "Ix",
            ProductOperator::Iy => "Iy",
            ProductOperator::Iz => "Iz",
            ProductOperator::Sx => "Sx",
            ProductOperator::Sy => "Sy",
            ProductOperator::Sz => "Sz",
            ProductOperator::IzSz2 => "2IzSz",
            ProductOperator::IzSx2 => "2IzSx",
        }
    }

    /// In-plane operator `x` or `y` for a given spin.
    pub fn transverse(spin: Spin, y: bool) -> Self {
        match (spin, y) {
            (Spin::I, false) => ProductOperator::Ix,
            (Spin::I, true) => ProductOperator::Iy,
            (Spin::S, false) => ProductOperator::Sx,
            (Spin::S, true) => ProductOperator::Sy,
        }
    }

    pub fn longitudinal(spin: Spin) -> Self {
        match spin {
            Spin::I => ProductOperator::Iz,
            Spin::S => ProductOperator::Sz,
        }
    }

    fn is_single_i(self) -> bool {
        matches!(
            self,
            ProductOperator::Ix | ProductOperator::Iy | ProductOperator::Iz
        )
    }
}

impl fmt::Display for ProductOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ProductOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProductOperator::ALL
            .iter()
            .copied()
            .find(|op| op.label() == s)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

/// Half-Pauli matrices `sigma/2`, indexed x = 0, y = 1, z = 2.
fn half_pauli(axis: usize) -> Matrix {
    let h = 0.5;
    let rows: [Complex64; 4] = match axis {
        0 => [0.0.into(), h.into(), h.into(), 0.0.into()],
        1 => [
            0.0.into(),
            Complex64::new(0.0, -h),
            Complex64::new(0.0, h),
            0.0.into(),
        ],
        _ => [h.into(), 0.0.into(), 0.0.into(), (-h).into()],
    };
    Matrix::from_rows(&rows).expect("2x2")
}

/// Hermitian generator of a rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Generator(Matrix);

impl Generator {
    /// Validate a Hermitian matrix as a generator.
    pub fn new(m: Matrix) -> Result<Self> {
        let defect = m.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> Dim {
        self.0.dim()
    }

    /// `max |(G^2 - I/4)_ij|`; zero for every named product operator.
    pub fn product_operator_defect(&self) -> f64 {
        let sq = self.0 * self.0;
        sq.max_abs_diff(&Matrix::identity(self.dim()).scale_real(0.25))
            .expect("same dimension")
    }

    /// `cos(phi) a + sin(phi) b`, the in-plane combination used for
    /// pulse phases and tilted coupling axes.
    pub fn in_plane(a: Generator, b: Generator, phi: f64) -> Result<Self> {
        a.0.check_dim(&b.0)?;
        Generator::new(a.0.scale_real(phi.cos()) + b.0.scale_real(phi.sin()))
    }

    /// Pulse generator `Gx cos(phi) + Gy sin(phi)` acting on one spin.
    pub fn transverse(spin: Spin, phi: f64, dim: Dim) -> Result<Self> {
        let x = product_operator(ProductOperator::transverse(spin, false), dim)?;
        let y = product_operator(ProductOperator::transverse(spin, true), dim)?;
        Generator::in_plane(x, y, phi)
    }

    /// Tilted coupling axis `2IzSz cos(phi) + 2IzSx sin(phi)`.
    pub fn tilted_coupling(phi: f64) -> Self {
        let zz = product_operator(ProductOperator::IzSz2, Dim::Four).expect("4x4");
        let zx = product_operator(ProductOperator::IzSx2, Dim::Four).expect("4x4");
        Generator::in_plane(zz, zx, phi).expect("same dimension")
    }
}

/// Named product operator in the requested dimension.
///
/// Single-spin operators of spin I exist in both dimensions; everything
/// involving spin S needs the two-spin space.
pub fn product_operator(op: ProductOperator, dim: Dim) -> Result<Generator> {
    use ProductOperator::*;
    let m = match dim {
        Dim::Two if op.is_single_i() => half_pauli(axis_index(op)),
        Dim::Two => {
            return Err(Error::LabelDimension {
                label: op.label().to_string(),
                dim: 2,
            })
        }
        Dim::Four => {
            let id = Matrix::identity(Dim::Two);
            match op {
                Ix | Iy | Iz => half_pauli(axis_index(op)).kron(&id)?,
                Sx | Sy | Sz => id.kron(&half_pauli(axis_index(op)))?,
                IzSz2 => half_pauli(2).kron(&half_pauli(2))?.scale_real(2.0),
                IzSx2 => half_pauli(2).kron(&half_pauli(0))?.scale_real(2.0),
            }
        }
    };
    Ok(Generator(m))
}

/// Parse a label such as `"2IzSx"` and build the operator.
pub fn product_operator_by_label(label: &str, dim: usize) -> Result<Generator> {
    let op: ProductOperator = label.parse()?;
    product_operator(op, Dim::from_size(dim)?)
}

fn axis_index(op: ProductOperator) -> usize {
    use ProductOperator::*;
    match op {
        Ix | Sx => 0,
        Iy | Sy => 1,
        _ => 2,
    }
}
