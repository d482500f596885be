use std::f64::consts::{FRAC_PI_4, TAU};
use std::fmt;

use crate::error::{Error, Result};
use crate::su::{Dim, Spin};

/// What a sequence step does physically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    /// Rotation of one spin about the in-plane axis `x cos(phi) + y sin(phi)`.
    Pulse(Spin),
    /// Free evolution under the coupling `pi J 2IzSz`.
    Ising,
    /// Rotation about `2IzSz cos(phi) + 2IzSx sin(phi)`.
    Tilted,
}

impl ElementKind {
    pub fn name(self) -> &'static str {
        match self {
            ElementKind::Pulse(_) => "pulse",
            ElementKind::Ising => "ising",
            ElementKind::Tilted => "tilted",
        }
    }

    pub fn is_coupling(self) -> bool {
        !matches!(self, ElementKind::Pulse(_))
    }
}

/// One step of a pulse sequence with its nominal rotation angle and phase.
///
/// The phase is stored reduced to `[0, 2pi)`. Coupling elements have
/// non-negative angles since free evolution cannot run backwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseElement {
    kind: ElementKind,
    angle: f64,
    phase: f64,
}

/// Reduce an angle to `[0, 2pi)`.
pub fn wrap_phase(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

impl PulseElement {
    pub fn pulse(target: Spin, angle: f64, phase: f64) -> Result<Self> {
        Self::checked(ElementKind::Pulse(target), angle, phase)
    }

    pub fn ising(angle: f64) -> Result<Self> {
        Self::checked(ElementKind::Ising, angle, 0.0)
    }

    pub fn tilted(angle: f64, phase: f64) -> Result<Self> {
        Self::checked(ElementKind::Tilted, angle, phase)
    }

    fn checked(kind: ElementKind, angle: f64, phase: f64) -> Result<Self> {
        if !angle.is_finite() || !phase.is_finite() {
            return Err(Error::InvalidElement(format!(
                "non-finite angle {angle} or phase {phase}"
            )));
        }
        if kind.is_coupling() && angle < 0.0 {
            return Err(Error::InvalidElement(format!(
                "coupling evolution angle {angle} is negative"
            )));
        }
        Ok(Self {
            kind,
            angle,
            phase: wrap_phase(phase),
        })
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn target(&self) -> Option<Spin> {
        match self.kind {
            ElementKind::Pulse(s) => Some(s),
            _ => None,
        }
    }

    /// Free-evolution time in units of `t = 1/(4J)`; `None` for pulses.
    ///
    /// The coupling `pi J 2IzSz` turns through `pi/4` in one unit.
    pub fn duration_in_t(&self) -> Option<f64> {
        self.kind.is_coupling().then(|| self.angle / FRAC_PI_4)
    }

    pub fn fits(&self, dim: Dim) -> bool {
        match (dim, self.kind) {
            (Dim::Four, _) => true,
            (Dim::Two, ElementKind::Pulse(Spin::I)) => true,
            (Dim::Two, _) => false,
        }
    }
}

impl fmt::Display for PulseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ElementKind::Pulse(s) => write!(
                f,
                "{}({:.4} rad)_{:.2}deg",
                s,
                self.angle,
                self.phase.to_degrees()
            ),
            ElementKind::Ising => write!(f, "ZZ({:.4} rad)", self.angle),
            ElementKind::Tilted => write!(
                f,
                "ZZ({:.4} rad)_{:.2}deg",
                self.angle,
                self.phase.to_degrees()
            ),
        }
    }
}

/// Time-ordered steps; element 0 executes first.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSequence {
    dim: Dim,
    elements: Vec<PulseElement>,
}

impl PulseSequence {
    pub fn new(dim: Dim, elements: Vec<PulseElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(bad) = elements.iter().find(|e| !e.fits(dim)) {
            return Err(Error::InvalidElement(format!(
                "{bad} does not act on a {dim}-dimensional space"
            )));
        }
        Ok(Self { dim, elements })
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn elements(&self) -> &[PulseElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn into_elements(self) -> Vec<PulseElement> {
        self.elements
    }

    /// Whether every step is a coupling evolution (no single-spin pulses).
    pub fn is_coupling_only(&self) -> bool {
        self.elements.iter().all(|e| e.kind.is_coupling())
    }

    /// Sum of free-evolution durations in units of `t = 1/(4J)`.
    pub fn total_coupling_duration(&self) -> f64 {
        self.elements
            .iter()
            .filter_map(|e| e.duration_in_t())
            .fold(0.0, |acc, d| acc + d)
    }

    /// Concatenate in time order.
    pub fn then(mut self, other: PulseSequence) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim.size(), other.dim.size()));
        }
        self.elements.extend(other.elements);
        Ok(self)
    }
}

/// Fractional systematic errors applied when compiling a sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorModel {
    coupling: f64,
    pulse: f64,
    time_scale: f64,
}

impl Default for ErrorModel {
    fn default() -> Self {
        Self::ideal()
    }
}

impl ErrorModel {
    /// `coupling` is `J_real / J_nominal - 1`, `pulse` the fractional
    /// drive-strength error, `time_scale` a multiplier on every
    /// free-evolution duration.
    pub fn new(coupling: f64, pulse: f64, time_scale: f64) -> Result<Self> {
        if !(coupling.is_finite() && coupling >= -1.0) {
            return Err(Error::InvalidErrorModel(format!(
                "coupling error {coupling} must be finite and >= -1"
            )));
        }
        if !pulse.is_finite() {
            return Err(Error::InvalidErrorModel(format!(
                "pulse error {pulse} must be finite"
            )));
        }
        if !(time_scale.is_finite() && time_scale > 0.0) {
            return Err(Error::InvalidErrorModel(format!(
                "time scale {time_scale} must be finite and > 0"
            )));
        }
        Ok(Self {
            coupling,
            pulse,
            time_scale,
        })
    }

    pub const fn ideal() -> Self {
        Self {
            coupling: 0.0,
            pulse: 0.0,
            time_scale: 1.0,
        }
    }

    pub fn with_coupling(eps: f64) -> Result<Self> {
        Self::new(eps, 0.0, 1.0)
    }

    pub fn with_pulse(eps: f64) -> Result<Self> {
        Self::new(0.0, eps, 1.0)
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn pulse(&self) -> f64 {
        self.pulse
    }

    pub fn time_scale(&self) -> f64 {
        self.time_scale
    }

    /// Factor applied to every coupling-derived angle.
    pub fn coupling_factor(&self) -> f64 {
        (1.0 + self.coupling) * self.time_scale
    }

    pub fn pulse_factor(&self) -> f64 {
        1.0 + self.pulse
    }
}
