use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::element::{wrap_phase, ElementKind, ErrorModel, PulseElement, PulseSequence};
use crate::error::{Error, Result};
use crate::su::{expm_rotation, Dim, Generator, Spin, Unitary};

/// Phase of a pulse about `+y`.
pub const PLUS_Y: f64 = FRAC_PI_2;
/// Phase of a pulse about `-y`.
pub const MINUS_Y: f64 = 3.0 * FRAC_PI_2;

const PHASE_TOL: f64 = 1e-12;

/// Propagator of one element under the given systematic errors.
///
/// Pulse angles scale by `1 + eps_pulse`; coupling angles by
/// `(1 + eps_J) * time_scale`. Tilted elements are exponentiated directly.
pub fn element_propagator(e: &PulseElement, dim: Dim, em: &ErrorModel) -> Result<Unitary> {
    if !e.fits(dim) {
        return Err(Error::InvalidElement(format!(
            "{e} does not act on a {dim}-dimensional space"
        )));
    }
    match e.kind() {
        ElementKind::Pulse(spin) => {
            let g = Generator::transverse(spin, e.phase(), dim)?;
            expm_rotation(&g, e.angle() * em.pulse_factor())
        }
        ElementKind::Ising | ElementKind::Tilted => {
            let g = Generator::tilted_coupling(e.phase());
            expm_rotation(&g, e.angle() * em.coupling_factor())
        }
    }
}

/// Time-ordered product `U_{n-1} ... U_1 U_0`.
pub fn compile(seq: &PulseSequence, em: &ErrorModel) -> Result<Unitary> {
    let mut u = Unitary::identity(seq.dim());
    for e in seq.elements() {
        u = element_propagator(e, seq.dim(), em)? * u;
    }
    Ok(u)
}

/// Realize a tilted evolution as free Ising evolution between pulses on S.
///
/// A `phi` pulse about `-y` rotates the tilted axis onto `2IzSz`; after the
/// evolution a `phi` pulse about `+y` rotates it back.
pub fn sandwich_decomposition(e: &PulseElement) -> Result<PulseSequence> {
    if e.kind() != ElementKind::Tilted {
        return Err(Error::InvalidElement(format!(
            "sandwich decomposition needs a tilted element, got {e}"
        )));
    }
    let phi = e.phase();
    PulseSequence::new(
        Dim::Four,
        vec![
            PulseElement::pulse(Spin::S, phi, MINUS_Y)?,
            PulseElement::ising(e.angle())?,
            PulseElement::pulse(Spin::S, phi, PLUS_Y)?,
        ],
    )
}

impl PulseSequence {
    /// Replace every tilted element by its pulse sandwich.
    pub fn expand_tilted(&self) -> Result<PulseSequence> {
        let mut out = Vec::with_capacity(self.len() * 3);
        for e in self.elements() {
            if e.kind() == ElementKind::Tilted {
                out.extend(sandwich_decomposition(e)?.into_elements());
            } else {
                out.push(*e);
            }
        }
        PulseSequence::new(self.dim(), out)
    }

    /// Drop zero-angle pulses and fuse runs of adjacent pulses on the same
    /// spin whose axes are parallel or antiparallel.
    ///
    /// Fused rotations share one axis so their angles add, and the pulse
    /// error scales the sum the same way it scaled each part: the result
    /// compiles to the same propagator under every error model.
    pub fn merge_collinear_pulses(&self) -> Result<PulseSequence> {
        let mut out: Vec<PulseElement> = Vec::with_capacity(self.len());
        for e in self.elements() {
            if is_null_pulse(e) {
                continue;
            }
            if let Some(last) = out.last().copied() {
                if let Some(merged) = fuse(&last, e)? {
                    out.pop();
                    if !is_null_pulse(&merged) {
                        out.push(merged);
                    }
                    continue;
                }
            }
            out.push(*e);
        }
        // a sequence that cancels completely keeps its first element
        if out.is_empty() {
            out.push(self.elements()[0]);
        }
        PulseSequence::new(self.dim(), out)
    }
}

fn is_null_pulse(e: &PulseElement) -> bool {
    matches!(e.kind(), ElementKind::Pulse(_)) && e.angle() == 0.0
}

fn fuse(a: &PulseElement, b: &PulseElement) -> Result<Option<PulseElement>> {
    let (ElementKind::Pulse(sa), ElementKind::Pulse(sb)) = (a.kind(), b.kind()) else {
        return Ok(None);
    };
    if sa != sb {
        return Ok(None);
    }
    let delta = wrap_phase(b.phase() - a.phase());
    let sign = if delta < PHASE_TOL || TAU - delta < PHASE_TOL {
        1.0
    } else if (delta - PI).abs() < PHASE_TOL {
        -1.0
    } else {
        return Ok(None);
    };
    let net = a.angle() + sign * b.angle();
    let merged = if net >= 0.0 {
        PulseElement::pulse(sa, net, a.phase())?
    } else {
        PulseElement::pulse(sa, -net, a.phase() + PI)?
    };
    Ok(Some(merged))
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::su::{equal_up_to_global_phase, expm_generic};

    fn polar(a: f64) -> Complex64 {
        Complex64::from_polar(1.0, a)
    }

    #[test]
    fn ising_quarter_turn_is_diagonal() {
        let e = PulseElement::ising(PI / 2.0).unwrap();
        let u = element_propagator(&e, Dim::Four, &ErrorModel::ideal()).unwrap();
        let expected = Unitary::diagonal(&[
            polar(-PI / 4.0),
            polar(PI / 4.0),
            polar(PI / 4.0),
            polar(-PI / 4.0),
        ])
        .unwrap();
        assert!(u.max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn y_pulse_on_s() {
        let e = PulseElement::pulse(Spin::S, PI, PLUS_Y).unwrap();
        let u = element_propagator(&e, Dim::Four, &ErrorModel::ideal()).unwrap();
        // I (x) exp(-i pi sigma_y / 2)
        let sy = Generator::transverse(Spin::I, PLUS_Y, Dim::Two).unwrap();
        let ry = expm_rotation(&sy, PI).unwrap();
        let expected = Unitary::identity(Dim::Two).kron(&ry).unwrap();
        assert!(u.max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn tilted_matches_generic_exponential() {
        let phi = (-1.0f64 / 8.0).acos();
        let e = PulseElement::tilted(PI, phi).unwrap();
        let em = ErrorModel::with_coupling(0.1).unwrap();
        let u = element_propagator(&e, Dim::Four, &em).unwrap();
        let g = Generator::tilted_coupling(phi);
        let oracle = expm_generic(&g, 1.1 * PI).unwrap();
        assert!(u.max_abs_diff(&oracle).unwrap() < 1e-12);
    }

    #[test]
    fn element_dimension_mismatch() {
        let e = PulseElement::ising(1.0).unwrap();
        assert!(element_propagator(&e, Dim::Two, &ErrorModel::ideal()).is_err());
    }

    #[test]
    fn sandwich_with_zero_phase_is_bare_evolution() {
        let e = PulseElement::tilted(0.7, 0.0).unwrap();
        let s = sandwich_decomposition(&e).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.elements()[0].angle(), 0.0);
        assert_eq!(s.elements()[2].angle(), 0.0);
        let u = compile(&s, &ErrorModel::ideal()).unwrap();
        let bare = compile(
            &PulseSequence::new(Dim::Four, vec![PulseElement::ising(0.7).unwrap()]).unwrap(),
            &ErrorModel::ideal(),
        )
        .unwrap();
        assert!(u.max_abs_diff(&bare).unwrap() < 1e-15);
    }

    #[test]
    fn sandwich_sign_order_is_minus_then_plus() {
        let phi = (-1.0f64 / 8.0).acos();
        let e = PulseElement::tilted(PI, phi).unwrap();
        let direct = element_propagator(&e, Dim::Four, &ErrorModel::ideal()).unwrap();
        let s = sandwich_decomposition(&e).unwrap();
        assert!((s.elements()[0].phase() - MINUS_Y).abs() < 1e-15);
        assert!((s.elements()[2].phase() - PLUS_Y).abs() < 1e-15);
        let u = compile(&s, &ErrorModel::ideal()).unwrap();
        assert!(equal_up_to_global_phase(&u, &direct, 1e-12).unwrap());

        // the opposite order tilts towards -2IzSx instead
        let swapped = PulseSequence::new(
            Dim::Four,
            vec![s.elements()[2], s.elements()[1], s.elements()[0]],
        )
        .unwrap();
        let w = compile(&swapped, &ErrorModel::ideal()).unwrap();
        assert!(!equal_up_to_global_phase(&w, &direct, 1e-6).unwrap());
    }

    #[test]
    fn coupling_error_passes_through_sandwich() {
        let e = PulseElement::tilted(2.0 * PI, 5.1).unwrap();
        let em = ErrorModel::with_coupling(-0.23).unwrap();
        let direct = element_propagator(&e, Dim::Four, &em).unwrap();
        let u = compile(&sandwich_decomposition(&e).unwrap(), &em).unwrap();
        assert!(equal_up_to_global_phase(&u, &direct, 1e-12).unwrap());
    }

    #[test]
    fn sandwich_rejects_other_kinds() {
        assert!(sandwich_decomposition(&PulseElement::ising(1.0).unwrap()).is_err());
        assert!(sandwich_decomposition(&PulseElement::pulse(Spin::S, 1.0, 0.0).unwrap()).is_err());
    }

    #[test]
    fn compile_single_element_equals_element_propagator() {
        let e = PulseElement::tilted(1.3, 0.4).unwrap();
        let seq = PulseSequence::new(Dim::Four, vec![e]).unwrap();
        let em = ErrorModel::ideal();
        assert_eq!(
            compile(&seq, &em).unwrap(),
            element_propagator(&e, Dim::Four, &em).unwrap()
        );
    }

    #[test]
    fn compile_applies_element_zero_first() {
        let a = PulseElement::pulse(Spin::I, 0.3, 0.0).unwrap();
        let b = PulseElement::pulse(Spin::I, 0.5, PLUS_Y).unwrap();
        let seq = PulseSequence::new(Dim::Two, vec![a, b]).unwrap();
        let em = ErrorModel::ideal();
        let ua = element_propagator(&a, Dim::Two, &em).unwrap();
        let ub = element_propagator(&b, Dim::Two, &em).unwrap();
        assert_eq!(compile(&seq, &em).unwrap(), ub * ua);
    }

    #[test]
    fn merge_fuses_antiparallel_pulses() {
        let seq = PulseSequence::new(
            Dim::Four,
            vec![
                PulseElement::pulse(Spin::S, 0.0, MINUS_Y).unwrap(),
                PulseElement::ising(1.0).unwrap(),
                PulseElement::pulse(Spin::S, 1.7, PLUS_Y).unwrap(),
                PulseElement::pulse(Spin::S, 5.1, MINUS_Y).unwrap(),
                PulseElement::ising(2.0).unwrap(),
            ],
        )
        .unwrap();
        let merged = seq.merge_collinear_pulses().unwrap();
        assert_eq!(merged.len(), 3);
        let p = merged.elements()[1];
        assert!((p.angle() - 3.4).abs() < 1e-12);
        assert!((p.phase() - MINUS_Y).abs() < 1e-12);
        for em in [
            ErrorModel::ideal(),
            ErrorModel::new(0.1, -0.07, 1.3).unwrap(),
        ] {
            let a = compile(&seq, &em).unwrap();
            let b = compile(&merged, &em).unwrap();
            assert!(a.max_abs_diff(&b).unwrap() < 1e-12);
        }
    }

    #[test]
    fn merge_keeps_something_for_all_zero_sequence() {
        let seq = PulseSequence::new(
            Dim::Two,
            vec![PulseElement::pulse(Spin::I, 0.0, 0.0).unwrap(); 3],
        )
        .unwrap();
        assert_eq!(seq.merge_collinear_pulses().unwrap().len(), 1);
    }
}
