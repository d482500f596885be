//! Human-readable and structured listings of a pulse sequence.
//!
//! Text form, one element per line:
//!
//! ```text
//! # dim 4
//! # kind target theta_pi phi_deg duration_t
//! ising - 0.250000 0.0000 1.0000
//! pulse S 0.539907 270.0000 -
//! ...
//! # total_coupling_duration_t 18.0000
//! ```
//!
//! `theta_pi` is the nominal rotation angle in units of pi, `phi_deg` the
//! phase in degrees, and `duration_t` the free-evolution time in units of
//! `t = 1/(4J)` (`-` for pulses).

use std::f64::consts::PI;
use std::fmt::Write;

use serde::Serialize;

use super::element::{PulseElement, PulseSequence};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElementRecord {
    pub kind: &'static str,
    pub target: Option<String>,
    pub theta_rad: f64,
    pub theta_pi: f64,
    pub phi_deg: f64,
    pub duration_t: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceRecord {
    pub dim: usize,
    pub elements: Vec<ElementRecord>,
    pub total_coupling_duration_t: f64,
}

impl From<&PulseElement> for ElementRecord {
    fn from(e: &PulseElement) -> Self {
        Self {
            kind: e.kind().name(),
            target: e.target().map(|s| s.to_string()),
            theta_rad: e.angle(),
            theta_pi: e.angle() / PI,
            phi_deg: e.phase().to_degrees(),
            duration_t: e.duration_in_t(),
        }
    }
}

impl From<&PulseSequence> for SequenceRecord {
    fn from(seq: &PulseSequence) -> Self {
        Self {
            dim: seq.dim().size(),
            elements: seq.elements().iter().map(ElementRecord::from).collect(),
            total_coupling_duration_t: seq.total_coupling_duration(),
        }
    }
}

pub fn dump_text(seq: &PulseSequence) -> String {
    let mut out = String::new();
    writeln!(out, "# dim {}", seq.dim()).unwrap();
    writeln!(out, "# kind target theta_pi phi_deg duration_t").unwrap();
    for e in seq.elements() {
        let r = ElementRecord::from(e);
        let target = r.target.as_deref().unwrap_or("-");
        let duration = r
            .duration_t
            .map(|d| format!("{d:.4}"))
            .unwrap_or_else(|| "-".into());
        writeln!(
            out,
            "{} {} {:.6} {:.4} {}",
            r.kind, target, r.theta_pi, r.phi_deg, duration
        )
        .unwrap();
    }
    writeln!(
        out,
        "# total_coupling_duration_t {:.4}",
        seq.total_coupling_duration()
    )
    .unwrap();
    out
}
