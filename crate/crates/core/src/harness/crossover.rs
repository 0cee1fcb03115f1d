//! Timing of exact recurrence versus the closed-form leading term.

use serde::{Deserialize, Serialize};
use std::hint::black_box;
use std::time::Instant;

use super::bracket::{relative_bracket_error, theta_grid, DEFAULT_THETA_GRID};
use crate::asymptotics::{legendre_leading, AngleWindow};
use crate::error::{Error, Result};
use crate::special::{legendre_normalized, ZonalIndex};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverConfig {
    pub n: u32,
    pub ks: Vec<u32>,
    pub window: AngleWindow,
    pub error_budget: f64,
    /// Evaluations per path and degree.
    pub evaluations: usize,
    /// Evaluations per timed batch.
    pub batch: usize,
}

impl CrossoverConfig {
    pub fn new(n: u32, ks: Vec<u32>, window: AngleWindow, error_budget: f64) -> Self {
        Self {
            n,
            ks,
            window,
            error_budget,
            evaluations: 100_000,
            batch: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverRow {
    pub k: u32,
    /// Median over batches of nanoseconds per evaluation.
    pub exact_ns: f64,
    pub asymptotic_ns: f64,
    pub max_rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverReport {
    pub n: u32,
    pub error_budget: f64,
    pub rows: Vec<CrossoverRow>,
    /// Smallest sampled `k` where the closed form is faster and within budget.
    pub k_star: Option<u32>,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    let m = v.len();
    if m % 2 == 1 {
        v[m / 2]
    } else {
        0.5 * (v[m / 2 - 1] + v[m / 2])
    }
}

fn time_batches<F: Fn(f64) -> f64>(thetas: &[f64], evaluations: usize, batch: usize, f: F) -> f64 {
    let batches = evaluations.div_ceil(batch);
    let mut per_eval = Vec::with_capacity(batches);
    let mut j = 0;
    for _ in 0..batches {
        let start = Instant::now();
        let mut acc = 0.0;
        for _ in 0..batch {
            acc += f(black_box(thetas[j % thetas.len()]));
            j += 1;
        }
        black_box(acc);
        per_eval.push(start.elapsed().as_nanos() as f64 / batch as f64);
    }
    median(per_eval)
}

/// Times both paths on the calling thread, degree by degree.
pub fn crossover_benchmark(cfg: &CrossoverConfig) -> Result<CrossoverReport> {
    if cfg.error_budget.is_nan() || cfg.error_budget <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "error budget must be positive, got {}",
            cfg.error_budget
        )));
    }
    if cfg.batch == 0 || cfg.evaluations == 0 {
        return Err(Error::InvalidParameter("evaluations and batch must be positive".into()));
    }
    let mut ks = cfg.ks.clone();
    ks.sort_unstable();
    ks.dedup();
    let mut rows = Vec::with_capacity(ks.len());
    for k in ks {
        let idx = ZonalIndex::new(cfg.n, k)?;
        let (lo, hi) = cfg.window.nonempty_bounds(k)?;
        let thetas = theta_grid(lo, hi, 257);
        let cosines: Vec<f64> = thetas.iter().map(|t| t.cos()).collect();
        let exact_ns = time_batches(&cosines, cfg.evaluations, cfg.batch, |t| {
            legendre_normalized(idx, t).unwrap_or(f64::NAN)
        });
        let asymptotic_ns = time_batches(&thetas, cfg.evaluations, cfg.batch, |t| {
            legendre_leading(idx, t).map_or(f64::NAN, |a| a.value)
        });
        let max_rel_err = relative_bracket_error(idx, &cfg.window, DEFAULT_THETA_GRID)?;
        rows.push(CrossoverRow {
            k,
            exact_ns,
            asymptotic_ns,
            max_rel_err,
        });
    }
    let k_star = rows
        .iter()
        .find(|r| r.asymptotic_ns < r.exact_ns && r.max_rel_err <= cfg.error_budget)
        .map(|r| r.k);
    Ok(CrossoverReport {
        n: cfg.n,
        error_budget: cfg.error_budget,
        rows,
        k_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn rejects_bad_budget() {
        let w = AngleWindow::new(1.0, 0.0).unwrap();
        assert!(crossover_benchmark(&CrossoverConfig::new(2, vec![64], w, 0.0)).is_err());
    }

    #[test]
    fn small_benchmark_orders_degrees() {
        let w = AngleWindow::new(1.0, 0.0).unwrap();
        let mut cfg = CrossoverConfig::new(2, vec![4096, 64], w, 1e-2);
        cfg.evaluations = 20_000;
        let r = crossover_benchmark(&cfg).unwrap();
        assert_eq!(r.rows.iter().map(|x| x.k).collect::<Vec<_>>(), vec![64, 4096]);
        assert!(r.rows[1].exact_ns > r.rows[0].exact_ns);
        assert!(r.k_star.is_some_and(|k| k <= 4096));
    }
}
