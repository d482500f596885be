use num_complex::Complex64;

use super::unitary::Unitary;
use crate::error::Result;

/// Propagator fidelity `|Tr(V U^dagger)| / Tr(U U^dagger)`.
///
/// The modulus makes the result blind to a global phase between `V` and `U`.
pub fn fidelity(v: &Unitary, u: &Unitary) -> Result<f64> {
    Ok(trace_overlap(v, u)?.norm() / v.dim().size() as f64)
}

/// `1 - fidelity(v, u)`.
pub fn infidelity(v: &Unitary, u: &Unitary) -> Result<f64> {
    Ok(1.0 - fidelity(v, u)?)
}

/// `Tr(V U^dagger) = sum_ij V_ij conj(U_ij)`.
pub fn trace_overlap(v: &Unitary, u: &Unitary) -> Result<Complex64> {
    v.matrix().check_dim(u.matrix())?;
    let n = v.dim().size();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += v.get(i, j) * u.get(i, j).conj();
        }
    }
    Ok(acc)
}

/// Whether `e^{i alpha} A` matches `B` entrywise within `tol` for some phase.
///
/// The phase is fixed by aligning the largest-magnitude entry of `B`.
pub fn equal_up_to_global_phase(a: &Unitary, b: &Unitary, tol: f64) -> Result<bool> {
    a.matrix().check_dim(b.matrix())?;
    let n = b.dim().size();
    let (mut row, mut col, mut best) = (0, 0, -1.0);
    for i in 0..n {
        for j in 0..n {
            let m = b.get(i, j).norm();
            if m > best {
                (row, col, best) = (i, j, m);
            }
        }
    }
    let pivot = a.get(row, col);
    if pivot.norm() == 0.0 {
        return Ok(false);
    }
    let alpha = b.get(row, col).arg() - pivot.arg();
    Ok(a.with_global_phase(alpha).max_abs_diff(b)? <= tol)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::error::Error;
    use crate::su::expm::expm_rotation;
    use crate::su::matrix::Dim;
    use crate::su::operators::{product_operator, ProductOperator};

    #[test]
    fn self_fidelity_is_one() {
        let g = product_operator(ProductOperator::IzSx2, Dim::Four).unwrap();
        let u = expm_rotation(&g, 1.1).unwrap();
        assert!((fidelity(&u, &u).unwrap() - 1.0).abs() < 1e-15);
        let v = u.with_global_phase(0.77);
        assert!((fidelity(&v, &u).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn naive_pulse_error_gives_cosine() {
        let g = product_operator(ProductOperator::Ix, Dim::Two).unwrap();
        let theta = PI / 2.0;
        let eps = 0.1;
        let u = expm_rotation(&g, theta).unwrap();
        let v = expm_rotation(&g, theta * (1.0 + eps)).unwrap();
        let f = fidelity(&v, &u).unwrap();
        assert!((f - (PI / 40.0).cos()).abs() < 1e-15);
        assert!((f - 0.996917).abs() < 1e-6);
    }

    #[test]
    fn dimension_mismatch() {
        let a = Unitary::identity(Dim::Two);
        let b = Unitary::identity(Dim::Four);
        assert_eq!(fidelity(&a, &b), Err(Error::DimensionMismatch(2, 4)));
        assert!(equal_up_to_global_phase(&a, &b, 1e-12).is_err());
    }

    #[test]
    fn global_phase_comparison() {
        let g = product_operator(ProductOperator::Sy, Dim::Four).unwrap();
        let u = expm_rotation(&g, 0.4).unwrap();
        assert!(equal_up_to_global_phase(&u, &u.with_global_phase(PI / 7.0), 1e-12).unwrap());

        let one = Complex64::new(1.0, 0.0);
        let cz = Unitary::diagonal(&[one, one, one, -one]).unwrap();
        assert!(!equal_up_to_global_phase(&Unitary::identity(Dim::Four), &cz, 1e-12).unwrap());
    }
}
