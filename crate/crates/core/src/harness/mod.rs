//! Experiments comparing exact kernels, closed-form asymptotics and the
//! geometric oracles.

pub mod bracket;
pub mod crossover;
pub mod oracle;

use serde::{Deserialize, Serialize};

pub use bracket::{
    bracket_rows, fit_error_scaling, geometric_degrees, relative_bracket_error, theta_grid, CompareRow, ScalingOutcome,
    DEFAULT_THETA_GRID, CSV_HEADER, EXACT_THRESHOLD,
};
pub use crossover::{crossover_benchmark, CrossoverConfig, CrossoverReport, CrossoverRow};
pub use oracle::{c_constant_convergence, run_oracle, CRatioRow, OracleConfig, OracleEntry, OracleReport};

/// Version tag carried by every JSON summary.
pub const SCHEMA_VERSION: u32 = 1;

/// Least-squares line through `(log k, log error)` points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: Vec<(f64, f64)>,
}

/// Ordinary least squares `y = slope x + intercept`; returns
/// `(slope, intercept, r²)`, or `None` with fewer than two distinct `x`.
pub fn ols(points: &[(f64, f64)]) -> Option<(f64, f64, f64)> {
    let m = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
    Some((slope, intercept, r2))
}

impl ScalingFit {
    pub fn from_points(points: Vec<(f64, f64)>) -> Option<Self> {
        let (slope, intercept, r_squared) = ols(&points)?;
        Some(Self {
            slope,
            intercept,
            r_squared,
            points,
        })
    }
}
