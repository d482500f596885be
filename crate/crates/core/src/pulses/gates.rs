use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::su::{Matrix, Unitary};

/// Reference gates that sequences are compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IdealGate {
    /// `diag(e^{i phi/2}, e^{-i phi/2}, e^{-i phi/2}, e^{i phi/2})`.
    ///
    /// This is `exp(+i phi 2IzSz)`: free evolution through `phi` gives the
    /// same matrix with `phi -> -phi`.
    Ising(f64),
    /// Controlled phase shift `diag(1, 1, 1, -1)`.
    CPhase,
    /// Controlled NOT with spin I as control and spin S as target.
    Cnot,
    Hadamard,
}

pub fn ideal_gate(gate: IdealGate) -> Unitary {
    let one = Complex64::new(1.0, 0.0);
    match gate {
        IdealGate::Ising(phi) => {
            let p = Complex64::from_polar(1.0, phi / 2.0);
            let m = p.conj();
            Unitary::diagonal(&[p, m, m, p]).expect("unit-modulus diagonal")
        }
        IdealGate::CPhase => Unitary::diagonal(&[one, one, one, -one]).expect("diagonal"),
        IdealGate::Cnot => {
            let h = Unitary::identity(crate::su::Dim::Two)
                .kron(&ideal_gate(IdealGate::Hadamard))
                .expect("2x2 factors");
            h * ideal_gate(IdealGate::CPhase) * h
        }
        IdealGate::Hadamard => {
            let r = FRAC_1_SQRT_2;
            Unitary::new(Matrix::from_real_rows(&[r, r, r, -r]).expect("2x2")).expect("unitary")
        }
    }
}

impl fmt::Display for IdealGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealGate::Ising(phi) => write!(f, "ising:{phi}"),
            IdealGate::CPhase => write!(f, "cphase"),
            IdealGate::Cnot => write!(f, "cnot"),
            IdealGate::Hadamard => write!(f, "hadamard"),
        }
    }
}

impl FromStr for IdealGate {
    type Err = Error;

    /// `cphase` (or `cz`), `cnot`, `hadamard`, or `ising:<phi in radians>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cphase" | "cz" => Ok(IdealGate::CPhase),
            "cnot" => Ok(IdealGate::Cnot),
            "hadamard" | "h" => Ok(IdealGate::Hadamard),
            _ => {
                let phi = s
                    .strip_prefix("ising:")
                    .and_then(|v| v.parse::<f64>().ok())
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown gate `{s}`")))?;
                Ok(IdealGate::Ising(phi))
            }
        }
    }
}
