use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::compile::{MINUS_Y, PLUS_Y};
use super::element::{ElementKind, PulseElement, PulseSequence};
use crate::error::{Error, Result};
use crate::su::{expm_rotation, product_operator, Dim, ProductOperator, Spin, Unitary};

/// What a composite sequence rotates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// In-plane pulses on one spin; `target` must be I when `dim` is 2.
    SingleQubit { target: Spin, dim: Dim },
    /// Rotations about tilted coupling axes.
    Ising,
}

impl Flavor {
    /// A lone spin in a two-dimensional space.
    pub const QUBIT: Flavor = Flavor::SingleQubit {
        target: Spin::I,
        dim: Dim::Two,
    };

    pub fn dim(self) -> Dim {
        match self {
            Flavor::SingleQubit { dim, .. } => dim,
            Flavor::Ising => Dim::Four,
        }
    }

    fn element(self, angle: f64, phase: f64) -> Result<PulseElement> {
        match self {
            Flavor::SingleQubit { target, .. } => PulseElement::pulse(target, angle, phase),
            Flavor::Ising if phase == 0.0 => PulseElement::ising(angle),
            Flavor::Ising => PulseElement::tilted(angle, phase),
        }
    }

    /// The error-free rotation `exp(-i theta G)` about the flavor's x axis.
    pub fn target_rotation(self, theta: f64) -> Result<Unitary> {
        let g = match self {
            Flavor::SingleQubit { target, dim } => {
                product_operator(ProductOperator::transverse(target, false), dim)?
            }
            Flavor::Ising => product_operator(ProductOperator::IzSz2, Dim::Four)?,
        };
        expm_rotation(&g, theta)
    }
}

/// Knobs for the composite builders.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Replace every nonzero single-spin pulse by its own BB1 expansion.
    pub robust_pulses: bool,
}

/// BB1 phases `phi1 = arccos(-theta / 4pi)` and `phi2 = 3 phi1`.
pub fn bb1_angles(theta: f64) -> Result<(f64, f64)> {
    let x = -theta / (4.0 * PI);
    if !x.is_finite() || x.abs() > 1.0 {
        return Err(Error::Bb1Domain(theta));
    }
    let phi1 = x.acos();
    Ok((phi1, 3.0 * phi1))
}

/// `(angle, phase)` pairs of the time-symmetric BB1 sequence
/// `(theta/2)_0 pi_phi1 2pi_phi2 pi_phi1 (theta/2)_0`, offset by `phase0`.
fn bb1_steps(theta: f64, phase0: f64) -> Result<[(f64, f64); 5]> {
    let (phi1, phi2) = bb1_angles(theta)?;
    Ok([
        (theta / 2.0, phase0),
        (PI, phase0 + phi1),
        (2.0 * PI, phase0 + phi2),
        (PI, phase0 + phi1),
        (theta / 2.0, phase0),
    ])
}

/// Single uncompensated rotation through `theta`.
pub fn build_naive(theta: f64, flavor: Flavor) -> Result<PulseSequence> {
    flavor.check()?;
    let (theta, phase0) = flavor.orient(theta);
    PulseSequence::new(flavor.dim(), vec![flavor.element(theta, phase0)?])
}

/// Five-step BB1 composite rotation through `theta`.
pub fn build_bb1(theta: f64, flavor: Flavor) -> Result<PulseSequence> {
    flavor.check()?;
    let (theta, phase0) = flavor.orient(theta);
    let elements = bb1_steps(theta, phase0)?
        .iter()
        .map(|&(a, p)| flavor.element(a, p))
        .collect::<Result<Vec<_>>>()?;
    PulseSequence::new(flavor.dim(), elements)
}

impl Flavor {
    /// Coupling cannot evolve backwards, so a negative Ising angle becomes
    /// a positive one about the reversed axis (all phases shifted by pi).
    fn orient(self, theta: f64) -> (f64, f64) {
        match self {
            Flavor::Ising if theta < 0.0 => (-theta, PI),
            _ => (theta, 0.0),
        }
    }

    fn check(self) -> Result<()> {
        match self {
            Flavor::SingleQubit {
                target: Spin::S,
                dim: Dim::Two,
            } => Err(Error::InvalidElement(
                "spin S needs a four-dimensional space".into(),
            )),
            _ => Ok(()),
        }
    }
}

impl PulseSequence {
    /// Replace every nonzero pulse `theta_phi` by its BB1 expansion about
    /// the same axis. Coupling elements are untouched.
    pub fn with_bb1_pulses(&self) -> Result<PulseSequence> {
        let mut out = Vec::with_capacity(self.len() * 5);
        for e in self.elements() {
            match e.kind() {
                ElementKind::Pulse(spin) if e.angle() != 0.0 => {
                    for (a, p) in bb1_steps(e.angle(), e.phase())? {
                        out.push(PulseElement::pulse(spin, a, p)?);
                    }
                }
                _ => out.push(*e),
            }
        }
        PulseSequence::new(self.dim(), out)
    }
}

/// `Rz(alpha)` on one spin built from in-plane pulses:
/// `(pi/2)_{-x}`, then `alpha` about `y`, then `(pi/2)_x`.
pub fn z_rotation_pulses(spin: Spin, alpha: f64) -> Result<Vec<PulseElement>> {
    let y_phase = if alpha >= 0.0 { PLUS_Y } else { MINUS_Y };
    Ok(vec![
        PulseElement::pulse(spin, FRAC_PI_2, PI)?,
        PulseElement::pulse(spin, alpha.abs(), y_phase)?,
        PulseElement::pulse(spin, FRAC_PI_2, 0.0)?,
    ])
}

/// Hadamard (up to a global phase of `-i`) as `(pi/2)_y` followed by `pi_x`.
pub fn hadamard_pulses(spin: Spin) -> Result<Vec<PulseElement>> {
    Ok(vec![
        PulseElement::pulse(spin, FRAC_PI_2, PLUS_Y)?,
        PulseElement::pulse(spin, PI, 0.0)?,
    ])
}

/// Controlled phase shift from a quarter-period Ising evolution.
///
/// `CZ = e^{i global_phase} Rz_I(z_rotation_i) Rz_S(z_rotation_s) exp(-i (pi/2) 2IzSz)`;
/// the z rotations are realized by pulses after the evolution.
#[derive(Debug, Clone, PartialEq)]
pub struct CzFromIsing {
    pub sequence: PulseSequence,
    pub evolution_angle: f64,
    pub z_rotation_i: f64,
    pub z_rotation_s: f64,
    pub global_phase: f64,
}

impl CzFromIsing {
    /// Undo the bookkept global phase on a compiled propagator.
    pub fn phase_corrected(&self, compiled: &Unitary) -> Unitary {
        compiled.with_global_phase(self.global_phase)
    }
}

const CZ_Z_ROTATION: f64 = -FRAC_PI_2;
const CZ_GLOBAL_PHASE: f64 = -FRAC_PI_4;

fn cz_dressing() -> Result<Vec<PulseElement>> {
    let mut v = z_rotation_pulses(Spin::I, CZ_Z_ROTATION)?;
    v.extend(z_rotation_pulses(Spin::S, CZ_Z_ROTATION)?);
    Ok(v)
}

pub fn cz_from_ising() -> Result<CzFromIsing> {
    let mut elements = vec![PulseElement::ising(FRAC_PI_2)?];
    elements.extend(cz_dressing()?);
    Ok(CzFromIsing {
        sequence: PulseSequence::new(Dim::Four, elements)?,
        evolution_angle: FRAC_PI_2,
        z_rotation_i: CZ_Z_ROTATION,
        z_rotation_s: CZ_Z_ROTATION,
        global_phase: CZ_GLOBAL_PHASE,
    })
}

/// Wrap a core that implements `exp(-i (pi/2) 2IzSz)` into a CNOT with
/// spin S as target: Hadamard on S, core, CZ z rotations, Hadamard on S.
fn cnot_around(core: Vec<PulseElement>) -> Result<PulseSequence> {
    let mut elements = hadamard_pulses(Spin::S)?;
    elements.extend(core);
    elements.extend(cz_dressing()?);
    elements.extend(hadamard_pulses(Spin::S)?);
    PulseSequence::new(Dim::Four, elements)
}

/// CNOT whose coupling step is a single free evolution of `2t`.
pub fn build_naive_cnot(options: BuildOptions) -> Result<PulseSequence> {
    let seq = cnot_around(vec![PulseElement::ising(FRAC_PI_2)?])?;
    apply_options(seq, options)
}

/// CNOT whose coupling step is the BB1 Ising sequence for `theta = pi/2`,
/// with every tilted period realized as a `+-y` pulse sandwich on spin S.
pub fn build_robust_cnot() -> Result<PulseSequence> {
    build_robust_cnot_with(BuildOptions::default())
}

pub fn build_robust_cnot_with(options: BuildOptions) -> Result<PulseSequence> {
    let core = build_bb1(FRAC_PI_2, Flavor::Ising)?.expand_tilted()?;
    let seq = cnot_around(core.into_elements())?;
    apply_options(seq, options)
}

fn apply_options(seq: PulseSequence, options: BuildOptions) -> Result<PulseSequence> {
    if options.robust_pulses {
        seq.with_bb1_pulses()
    } else {
        Ok(seq)
    }
}
