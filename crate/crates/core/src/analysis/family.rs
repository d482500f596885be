use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pulses::{
    build_bb1, build_naive, build_naive_cnot, build_robust_cnot_with, compile, ideal_gate,
    BuildOptions, ErrorModel, Flavor, IdealGate, PulseSequence,
};
use crate::su::{fidelity, Unitary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Naive,
    Bb1,
}

/// Which gate a family implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    /// Rotation of a lone spin about x.
    SingleQubit,
    /// Rotation about `2IzSz`.
    Ising,
    /// Controlled NOT built around a `pi/2` Ising rotation.
    Cnot,
}

/// Which systematic error a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorAxis {
    Coupling,
    Pulse,
}

impl ErrorAxis {
    pub fn model(self, eps: f64) -> Result<ErrorModel> {
        match self {
            ErrorAxis::Coupling => ErrorModel::with_coupling(eps),
            ErrorAxis::Pulse => ErrorModel::with_pulse(eps),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ErrorAxis::Coupling => "coupling",
            ErrorAxis::Pulse => "pulse",
        }
    }
}

impl FromStr for ErrorAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "j" | "J" | "coupling" => Ok(ErrorAxis::Coupling),
            "pulse" | "amplitude" => Ok(ErrorAxis::Pulse),
            other => Err(Error::InvalidArgument(format!(
                "unknown error axis `{other}`"
            ))),
        }
    }
}

/// A sequence builder with its rotation angle: everything needed to turn
/// an error size into a propagator and compare it with the ideal gate.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    pub scheme: Scheme,
    pub gate: GateKind,
    /// Rotation angle; ignored for CNOT, which is always built on `pi/2`.
    pub theta: f64,
    pub options: BuildOptions,
    sequence: PulseSequence,
    ideal: Unitary,
}

impl Family {
    pub fn new(scheme: Scheme, gate: GateKind, theta: f64) -> Result<Self> {
        Self::with_options(scheme, gate, theta, BuildOptions::default())
    }

    pub fn with_options(
        scheme: Scheme,
        gate: GateKind,
        theta: f64,
        options: BuildOptions,
    ) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidArgument(format!("rotation angle {theta}")));
        }
        let (sequence, ideal) = match gate {
            GateKind::SingleQubit | GateKind::Ising => {
                let flavor = if gate == GateKind::Ising {
                    Flavor::Ising
                } else {
                    Flavor::QUBIT
                };
                let seq = match scheme {
                    Scheme::Naive => build_naive(theta, flavor)?,
                    Scheme::Bb1 => build_bb1(theta, flavor)?,
                };
                let seq = if options.robust_pulses {
                    seq.with_bb1_pulses()?
                } else {
                    seq
                };
                (seq, flavor.target_rotation(theta)?)
            }
            GateKind::Cnot => {
                let seq = match scheme {
                    Scheme::Naive => build_naive_cnot(options)?,
                    Scheme::Bb1 => build_robust_cnot_with(options)?,
                };
                (seq, ideal_gate(IdealGate::Cnot))
            }
        };
        let theta = if gate == GateKind::Cnot {
            FRAC_PI_2
        } else {
            theta
        };
        Ok(Self {
            scheme,
            gate,
            theta,
            options,
            sequence,
            ideal,
        })
    }

    pub fn sequence(&self) -> &PulseSequence {
        &self.sequence
    }

    pub fn ideal(&self) -> &Unitary {
        &self.ideal
    }

    /// Pulse error for single-spin families, coupling error otherwise.
    pub fn default_axis(&self) -> ErrorAxis {
        match self.gate {
            GateKind::SingleQubit => ErrorAxis::Pulse,
            GateKind::Ising | GateKind::Cnot => ErrorAxis::Coupling,
        }
    }

    pub fn propagator(&self, eps: f64, axis: ErrorAxis) -> Result<Unitary> {
        compile(&self.sequence, &axis.model(eps)?)
    }

    pub fn fidelity(&self, eps: f64, axis: ErrorAxis) -> Result<f64> {
        fidelity(&self.propagator(eps, axis)?, &self.ideal)
    }

    pub fn infidelity(&self, eps: f64, axis: ErrorAxis) -> Result<f64> {
        Ok(1.0 - self.fidelity(eps, axis)?)
    }

    /// Infidelity along the family's default axis, as a plain function of
    /// the error size.
    pub fn infidelity_curve(&self) -> impl Fn(f64) -> Result<f64> + Sync + '_ {
        let axis = self.default_axis();
        move |eps| self.infidelity(eps, axis)
    }

    pub fn label(&self) -> String {
        let scheme = match self.scheme {
            Scheme::Naive => "naive",
            Scheme::Bb1 => "bb1",
        };
        let gate = match self.gate {
            GateKind::SingleQubit => "single",
            GateKind::Ising => "ising",
            GateKind::Cnot => "cnot",
        };
        format!("{scheme}-{gate}")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} theta={:.6}pi",
            self.label(),
            self.theta / std::f64::consts::PI
        )
    }
}

/// Parse `naive-ising`, `bb1-single`, `bb1-cnot`, ... into its parts.
pub fn parse_family_name(name: &str) -> Result<(Scheme, GateKind)> {
    let (scheme, gate) = name
        .split_once('-')
        .ok_or_else(|| Error::InvalidArgument(format!("unknown family `{name}`")))?;
    let scheme = match scheme {
        "naive" => Scheme::Naive,
        "bb1" => Scheme::Bb1,
        _ => return Err(Error::InvalidArgument(format!("unknown family `{name}`"))),
    };
    let gate = match gate {
        "single" | "1q" | "qubit" => GateKind::SingleQubit,
        "ising" | "zz" => GateKind::Ising,
        "cnot" => GateKind::Cnot,
        _ => return Err(Error::InvalidArgument(format!("unknown family `{name}`"))),
    };
    Ok((scheme, gate))
}
