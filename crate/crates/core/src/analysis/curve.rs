use std::io::{self, Write};

use rayon::prelude::*;

use super::family::{ErrorAxis, Family};
use crate::error::{Error, Result};
use crate::su::{fidelity, Unitary};

/// Largest fidelity accepted from a compile before it is treated as a bug.
pub const FIDELITY_SLACK: f64 = 1e-12;

pub const CSV_HEADER: &str = "epsilon,fidelity,infidelity";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub epsilon: f64,
    pub fidelity: f64,
}

impl Sample {
    pub fn infidelity(&self) -> f64 {
        1.0 - self.fidelity
    }
}

/// Fidelity against one ideal gate, sampled over increasing error sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityCurve {
    pub family: String,
    pub ideal: String,
    pub axis: ErrorAxis,
    samples: Vec<Sample>,
}

impl FidelityCurve {
    pub fn new(
        family: impl Into<String>,
        ideal: impl Into<String>,
        axis: ErrorAxis,
        samples: Vec<Sample>,
    ) -> Result<Self> {
        check_increasing(samples.iter().map(|s| s.epsilon))?;
        if let Some(bad) = samples
            .iter()
            .find(|s| !(0.0..=1.0 + FIDELITY_SLACK).contains(&s.fidelity))
        {
            return Err(Error::InvalidArgument(format!(
                "fidelity {} at epsilon {} is outside [0, 1]",
                bad.fidelity, bad.epsilon
            )));
        }
        Ok(Self {
            family: family.into(),
            ideal: ideal.into(),
            axis,
            samples,
        })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn max_infidelity(&self) -> f64 {
        self.samples
            .iter()
            .map(Sample::infidelity)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Sample closest to `eps`.
    pub fn nearest(&self, eps: f64) -> Option<&Sample> {
        self.samples
            .iter()
            .min_by(|a, b| (a.epsilon - eps).abs().total_cmp(&(b.epsilon - eps).abs()))
    }

    /// CSV with header `epsilon,fidelity,infidelity`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for s in &self.samples {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e}",
                s.epsilon,
                s.fidelity,
                s.infidelity()
            )?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec");
        String::from_utf8(buf).expect("ascii")
    }
}

fn check_increasing(values: impl Iterator<Item = f64>) -> Result<()> {
    let mut prev: Option<f64> = None;
    for v in values {
        if !v.is_finite() {
            return Err(Error::InvalidGrid(format!("non-finite grid point {v}")));
        }
        if let Some(p) = prev {
            if v <= p {
                return Err(Error::InvalidGrid(format!(
                    "grid is not strictly increasing at {p} -> {v}"
                )));
            }
        }
        prev = Some(v);
    }
    Ok(())
}

/// Evenly spaced grid `min, min + step, ...` up to `max`.
///
/// When the span is a whole number of steps the endpoints are hit exactly.
pub fn linear_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite() && step.is_finite()) {
        return Err(Error::InvalidGrid("non-finite bound or step".into()));
    }
    if step <= 0.0 {
        return Err(Error::InvalidGrid(format!("step {step} must be > 0")));
    }
    if min >= max {
        return Err(Error::InvalidGrid(format!("min {min} must be < max {max}")));
    }
    let span = (max - min) / step;
    let n = (span + 1e-9).floor();
    if n > 1e7 {
        return Err(Error::InvalidGrid(format!("{n} grid points is too many")));
    }
    let n = n as usize;
    let exact = (span - n as f64).abs() < 1e-9;
    Ok((0..=n)
        .map(|i| {
            if exact {
                // lerp keeps both endpoints exact
                let t = i as f64 / n as f64;
                if i == n {
                    max
                } else {
                    min + (max - min) * t
                }
            } else {
                min + step * i as f64
            }
        })
        .collect())
}

/// Fidelity of `family` against `ideal` at every grid point, varying one
/// error axis. Points are evaluated in parallel and returned in grid order.
pub fn sweep(
    family: &Family,
    ideal: &Unitary,
    grid: &[f64],
    axis: ErrorAxis,
) -> Result<FidelityCurve> {
    if family.ideal().dim() != ideal.dim() {
        return Err(Error::DimensionMismatch(
            family.ideal().dim().size(),
            ideal.dim().size(),
        ));
    }
    check_increasing(grid.iter().copied())?;
    let samples = grid
        .par_iter()
        .map(|&eps| {
            let f = fidelity(&family.propagator(eps, axis)?, ideal)?;
            Ok(Sample {
                epsilon: eps,
                fidelity: f,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    FidelityCurve::new(family.label(), ideal_label(family), axis, samples)
}

fn ideal_label(family: &Family) -> String {
    use super::family::GateKind;
    match family.gate {
        GateKind::SingleQubit => format!("rx({})", family.theta),
        GateKind::Ising => format!("zz({})", family.theta),
        GateKind::Cnot => "cnot".into(),
    }
}

impl Family {
    /// Sweep against this family's own ideal gate.
    pub fn sweep(&self, grid: &[f64], axis: ErrorAxis) -> Result<FidelityCurve> {
        sweep(self, self.ideal(), grid, axis)
    }
}
