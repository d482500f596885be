//! Error sweeps, leading-order fits, and robust-range root finding.

mod curve;
mod family;
mod fit;
mod range;
pub mod verify;

pub use curve::{linear_grid, sweep, FidelityCurve, Sample, CSV_HEADER, FIDELITY_SLACK};
pub use family::{parse_family_name, ErrorAxis, Family, GateKind, Scheme};
pub use fit::{
    fit_leading_order, SeriesFit, DEFAULT_POINTS, NOISE_FLOOR, ORDER2_WINDOW, ORDER6_WINDOW,
    SLOPE_TOL,
};
pub use range::{range_ratio, robust_range, RobustRange, BISECTION_REL_TOL, DEFAULT_SEARCH_MAX};
