use crate::error::{Error, Result};

/// Relative width at which bisection stops.
pub const BISECTION_REL_TOL: f64 = 1e-4;

/// Default upper end of the error search.
pub const DEFAULT_SEARCH_MAX: f64 = 1.0;

const LINEAR_SAMPLES: usize = 1024;
const LOG_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobustRange {
    /// Largest `eps` with `1 - F <= threshold` on all of `[-eps, eps]`.
    pub epsilon_max: f64,
    /// The threshold was never exceeded before the search bound, which is
    /// what `epsilon_max` then holds.
    pub saturated: bool,
}

/// Half-width of the symmetric error interval over which the infidelity
/// stays at or below `threshold`.
///
/// The interval `(0, search_max]` is scanned on a mixed log/linear grid for
/// the first point where either `+eps` or `-eps` exceeds the threshold; the
/// crossing is then bisected to relative width [`BISECTION_REL_TOL`]. The
/// returned bound is on the passing side of the crossing.
pub fn robust_range<F>(infidelity: F, threshold: f64, search_max: f64) -> Result<RobustRange>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "threshold {threshold} must be in (0, 1]"
        )));
    }
    if !(search_max > 0.0 && search_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "search bound {search_max} must be positive"
        )));
    }
    let worst = |eps: f64| -> Result<f64> { Ok(infidelity(eps)?.max(infidelity(-eps)?)) };

    if infidelity(0.0)? > threshold {
        return Ok(RobustRange {
            epsilon_max: 0.0,
            saturated: false,
        });
    }

    let mut probes: Vec<f64> = (1..=LINEAR_SAMPLES)
        .map(|k| search_max * k as f64 / LINEAR_SAMPLES as f64)
        .chain(
            (0..LOG_SAMPLES)
                .map(|k| search_max * 10f64.powf(-8.0 + 8.0 * k as f64 / LOG_SAMPLES as f64)),
        )
        .collect();
    probes.sort_by(f64::total_cmp);
    probes.dedup();

    let mut good = 0.0;
    for eps in probes {
        if worst(eps)? > threshold {
            return Ok(RobustRange {
                epsilon_max: bisect(&worst, threshold, good, eps)?,
                saturated: false,
            });
        }
        good = eps;
    }
    Ok(RobustRange {
        epsilon_max: search_max,
        saturated: true,
    })
}

fn bisect<G>(worst: &G, threshold: f64, mut lo: f64, mut hi: f64) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    while hi - lo > BISECTION_REL_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if worst(mid)? > threshold {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(lo)
}

/// `robust_range(robust) / robust_range(naive)` at a common threshold.
pub fn range_ratio<F, G>(naive: F, robust: G, threshold: f64, search_max: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
    G: Fn(f64) -> Result<f64>,
{
    let n = robust_range(naive, threshold, search_max)?;
    let r = robust_range(robust, threshold, search_max)?;
    if n.epsilon_max == 0.0 {
        return Err(Error::InvalidArgument(
            "baseline family has zero robust range".into(),
        ));
    }
    Ok(r.epsilon_max / n.epsilon_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_crossing() {
        let r = robust_range(|e| Ok(e * e), 1e-4, 1.0).unwrap();
        assert!(!r.saturated);
        assert!((r.epsilon_max / 1e-2 - 1.0).abs() < 2e-4);
        assert!(r.epsilon_max <= 1e-2);
    }

    #[test]
    fn asymmetric_curve_uses_worse_side() {
        let r = robust_range(|e| Ok(if e < 0.0 { 4.0 * e * e } else { e * e }), 1e-2, 1.0).unwrap();
        assert!((r.epsilon_max / 0.05 - 1.0).abs() < 2e-4);
    }

    #[test]
    fn saturates_when_never_exceeded() {
        let r = robust_range(|e| Ok(e.abs() * 0.5), 1.0, 1.0).unwrap();
        assert!(r.saturated);
        assert_eq!(r.epsilon_max, 1.0);
    }

    #[test]
    fn first_crossing_of_non_monotone_curve() {
        // dips back below the threshold after 0.3; the first crossing wins
        let f = |e: f64| Ok(if e.abs() < 0.5 { e.abs() } else { 0.0 });
        let r = robust_range(f, 0.3, 1.0).unwrap();
        assert!((r.epsilon_max - 0.3).abs() < 1e-4);
    }

    #[test]
    fn imperfect_at_zero() {
        let r = robust_range(|_| Ok(0.5), 0.1, 1.0).unwrap();
        assert_eq!(r.epsilon_max, 0.0);
        assert!(range_ratio(|_| Ok(0.5), |e| Ok(e * e), 0.1, 1.0).is_err());
    }

    #[test]
    fn threshold_validation() {
        assert!(robust_range(Ok, 0.0, 1.0).is_err());
        assert!(robust_range(Ok, 1.5, 1.0).is_err());
        assert!(robust_range(Ok, 0.5, -1.0).is_err());
    }

    #[test]
    fn identical_families_ratio_is_one() {
        let f = |e: f64| Ok(e * e);
        assert_eq!(range_ratio(f, f, 1e-6, 1.0).unwrap(), 1.0);
    }
}
