//! Exact versus leading-order comparison on the angle window and the
//! log-log error fits.
//!
//! The relative error at `θ` is `|exact − leading| / amplitude`, which isolates
//! the bracket remainder. The sup over the window is taken on a uniform grid,
//! so it is a lower bound for the true sup.

use serde::{Deserialize, Serialize};

use super::ScalingFit;
use crate::asymptotics::{legendre_leading, AngleWindow};
use crate::error::{Error, Result};
use crate::special::{legendre_normalized, ZonalIndex};

pub const DEFAULT_THETA_GRID: usize = 512;

/// Errors at or below this level count as exact.
pub const EXACT_THRESHOLD: f64 = 1e-12;

pub const CSV_HEADER: &str = "n,k,delta,C,theta,exact,asymptotic,abs_err,rel_err";

/// `m` interior points `lo + (i+1)(hi−lo)/(m+1)`.
pub fn theta_grid(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    let h = (hi - lo) / (m as f64 + 1.0);
    (0..m).map(|i| lo + (i as f64 + 1.0) * h).collect()
}

/// One comparison cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub n: u32,
    pub k: u32,
    pub delta: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub theta: f64,
    pub exact: f64,
    pub asymptotic: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

impl CompareRow {
    /// CSV line without a trailing newline, shortest round-trip floats.
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.delta,
            self.c,
            self.theta,
            self.exact,
            self.asymptotic,
            self.abs_err,
            self.rel_err
        )
    }
}

pub fn bracket_rows(idx: ZonalIndex, window: &AngleWindow, grid: usize) -> Result<Vec<CompareRow>> {
    if grid == 0 {
        return Err(Error::InvalidParameter("theta grid needs at least one point".into()));
    }
    let (lo, hi) = window.nonempty_bounds(idx.k())?;
    theta_grid(lo, hi, grid)
        .into_iter()
        .map(|theta| {
            let exact = legendre_normalized(idx, theta.cos())?;
            let lead = legendre_leading(idx, theta)?;
            let abs_err = (exact - lead.value).abs();
            Ok(CompareRow {
                n: idx.n(),
                k: idx.k(),
                delta: window.delta(),
                c: window.c(),
                theta,
                exact,
                asymptotic: lead.value,
                abs_err,
                rel_err: abs_err / lead.amplitude,
            })
        })
        .collect()
}

/// Grid max of the relative bracket error over the window at degree `k`.
pub fn relative_bracket_error(idx: ZonalIndex, window: &AngleWindow, grid: usize) -> Result<f64> {
    Ok(bracket_rows(idx, window, grid)?
        .iter()
        .fold(0.0, |m, r| m.max(r.rel_err)))
}

/// Either a fitted power law or, when every error is at roundoff level, an
/// exactness report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScalingOutcome {
    Exact { max_error: f64 },
    Fit(ScalingFit),
}

impl ScalingOutcome {
    pub fn fit(&self) -> Option<&ScalingFit> {
        match self {
            Self::Fit(f) => Some(f),
            Self::Exact { .. } => None,
        }
    }
}

/// Fits `log(relative_bracket_error)` against `log k` over `ks`.
pub fn fit_error_scaling(n: u32, ks: &[u32], window: &AngleWindow, grid: usize) -> Result<ScalingOutcome> {
    if ks.len() < 5 {
        return Err(Error::InvalidParameter(format!(
            "scaling fit needs at least 5 degrees, got {}",
            ks.len()
        )));
    }
    let mut errs = Vec::with_capacity(ks.len());
    for &k in ks {
        errs.push((k, relative_bracket_error(ZonalIndex::new(n, k)?, window, grid)?));
    }
    let max_error = errs.iter().fold(0.0f64, |m, e| m.max(e.1));
    if max_error <= EXACT_THRESHOLD {
        return Ok(ScalingOutcome::Exact { max_error });
    }
    if errs.iter().any(|e| e.1 <= 0.0) {
        return Err(Error::InvalidParameter("zero error at some degree; slope undefined".into()));
    }
    let pts = errs.iter().map(|&(k, e)| (f64::from(k).ln(), e.ln())).collect();
    ScalingFit::from_points(pts)
        .map(ScalingOutcome::Fit)
        .ok_or_else(|| Error::InvalidParameter("degrees must be distinct".into()))
}

/// Powers of two from `k_min` to `k_max` inclusive (`k_min` rounded as given).
pub fn geometric_degrees(k_min: u32, k_max: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut k = k_min.max(1);
    while k <= k_max {
        out.push(k);
        match k.checked_mul(2) {
            Some(v) => k = v,
            None => break,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(n: u32, k: u32) -> ZonalIndex {
        ZonalIndex::new(n, k).unwrap()
    }

    #[test]
    fn grid_is_interior_and_uniform() {
        let g = theta_grid(1.0, 2.0, 3);
        assert_eq!(g, vec![1.25, 1.5, 1.75]);
    }

    #[test]
    fn chebyshev_window_is_exact() {
        let w = AngleWindow::new(1.0, 0.0).unwrap();
        for k in [1u32, 10, 100, 1000, 4096] {
            assert!(relative_bracket_error(idx(1, k), &w, 512).unwrap() < 1e-12);
        }
    }

    #[test]
    fn laplace_window_error() {
        let w = AngleWindow::new(1.0, 0.0).unwrap();
        let e1 = relative_bracket_error(idx(2, 1024), &w, 512).unwrap();
        let e4 = relative_bracket_error(idx(2, 4096), &w, 512).unwrap();
        assert!(e1 < 0.01 && e4 < e1, "{e1} {e4}");
        let wide = AngleWindow::new(1.0, 0.1).unwrap();
        assert!(relative_bracket_error(idx(2, 1024), &wide, 512).unwrap() >= e1);
    }

    #[test]
    fn empty_window_is_an_error() {
        let w = AngleWindow::new(2.0, 0.0).unwrap();
        assert!(matches!(
            relative_bracket_error(idx(2, 10), &w, 16),
            Err(Error::EmptyWindow { .. })
        ));
    }

    #[test]
    fn scaling_examples() {
        let w = AngleWindow::new(1.0, 0.0).unwrap();
        let ks = geometric_degrees(64, 4096);
        assert_eq!(ks.len(), 7);
        match fit_error_scaling(1, &ks, &w, 512).unwrap() {
            ScalingOutcome::Exact { max_error } => assert!(max_error < 1e-12),
            other => panic!("{other:?}"),
        }
        for n in [2, 3] {
            let f = fit_error_scaling(n, &ks, &w, 512).unwrap();
            let f = f.fit().unwrap();
            assert!((-1.25..=-0.75).contains(&f.slope), "n={n} slope {}", f.slope);
            assert!(f.r_squared > 0.95);
        }
        assert!(fit_error_scaling(2, &ks[..3], &w, 512).is_err());
    }

    #[test]
    fn csv_line_round_trips() {
        let r = bracket_rows(idx(2, 7), &AngleWindow::new(0.5, 0.0).unwrap(), 3).unwrap()[1];
        let line = r.csv_line();
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), CSV_HEADER.split(',').count());
        assert_eq!(fields[5].parse::<f64>().unwrap().to_bits(), r.exact.to_bits());
    }
}
