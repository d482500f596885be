use crate::error::{Error, Result};

/// Infidelities below this are dominated by rounding in `1 - F`.
pub const NOISE_FLOOR: f64 = 1e-13;

/// Largest allowed gap between the log-log slope and its integer exponent.
pub const SLOPE_TOL: f64 = 0.05;

/// Default window for curves whose infidelity starts at second order.
pub const ORDER2_WINDOW: (f64, f64) = (1e-3, 1e-2);

/// Default window for curves whose infidelity starts at sixth order.
pub const ORDER6_WINDOW: (f64, f64) = (0.03, 0.1);

pub const DEFAULT_POINTS: usize = 20;

/// Leading-order model `1 - F(eps) ~ coefficient * eps^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesFit {
    pub exponent: u32,
    pub coefficient: f64,
    /// Unrounded least-squares slope of `log(1 - F)` against `log eps`.
    pub slope: f64,
    pub fit_window: (f64, f64),
    /// Largest relative deviation of the model from the sampled infidelity.
    pub residual: f64,
}

/// Recover the leading power and prefactor of an infidelity curve.
///
/// The curve is sampled at `n_points` log-spaced errors in `window`; the
/// slope of the least-squares line through `(log eps, log(1 - F))` is
/// rounded to the exponent, and the coefficient is the least-squares
/// intercept with that exponent held fixed.
pub fn fit_leading_order<F>(infidelity: F, window: (f64, f64), n_points: usize) -> Result<SeriesFit>
where
    F: Fn(f64) -> Result<f64>,
{
    let (a, b) = window;
    if !(a > 0.0 && a < b && b.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "fit window ({a}, {b}) must satisfy 0 < a < b"
        )));
    }
    if n_points < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 points, got {n_points}"
        )));
    }
    let ratio = (b / a).ln();
    let mut xs = Vec::with_capacity(n_points);
    let mut ys = Vec::with_capacity(n_points);
    for k in 0..n_points {
        let eps = a * (ratio * k as f64 / (n_points - 1) as f64).exp();
        let inf = infidelity(eps)?;
        if inf.is_nan() || inf <= NOISE_FLOOR {
            return Err(Error::BelowNoiseFloor {
                epsilon: eps,
                infidelity: inf,
            });
        }
        xs.push(eps.ln());
        ys.push(inf.ln());
    }

    let n = n_points as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;

    let exponent = slope.round().max(1.0);
    if (slope - exponent).abs() > SLOPE_TOL {
        return Err(Error::InvalidArgument(format!(
            "log-log slope {slope:.4} is not within {SLOPE_TOL} of an integer"
        )));
    }
    let log_c = ys
        .iter()
        .zip(&xs)
        .map(|(y, x)| y - exponent * x)
        .sum::<f64>()
        / n;
    let coefficient = log_c.exp();
    let residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| ((log_c + exponent * x).exp() / y.exp() - 1.0).abs())
        .fold(0.0, f64::max);

    Ok(SeriesFit {
        exponent: exponent as u32,
        coefficient,
        slope,
        fit_window: window,
        residual,
    })
}
