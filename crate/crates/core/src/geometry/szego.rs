//! Level-`k` Szegő kernel `Π_{r,k}` on `X_r`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::SQRT_2;

use super::cone::ConeBasis;
use super::frame::{fubini_study_distance, ComplexPoint, MANIFOLD_TOL};
use crate::error::{Error, Result};
use crate::special::ZonalIndex;

/// `Π_{r,k}(x, y) = r^{-(2k+2n-1)} Σ_j s_j(x) conj(s_j(y))` with `s_j` the
/// orthonormal family of a [`ConeBasis`] on `X_1`.
#[derive(Debug, Clone)]
pub struct SzegoEvaluator {
    basis: ConeBasis,
    radius: f64,
}

impl SzegoEvaluator {
    pub fn new(basis: ConeBasis, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!("radius must be positive, got {radius}")));
        }
        Ok(Self { basis, radius })
    }

    pub fn basis(&self) -> &ConeBasis {
        &self.basis
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn idx(&self) -> ZonalIndex {
        self.basis.idx()
    }

    /// Same basis at another radius.
    pub fn at_radius(&self, radius: f64) -> Result<Self> {
        Self::new(self.basis.clone(), radius)
    }

    /// `r^{-(2k+2n-1)}`.
    pub fn prefactor(&self) -> f64 {
        let idx = self.idx();
        self.radius.powi(-(2 * idx.k() as i32 + 2 * idx.n() as i32 - 1))
    }

    fn check(&self, z: &ComplexPoint, name: &str) -> Result<()> {
        if z.dim() != self.idx().n() as usize + 1 {
            return Err(Error::Dimension(format!("{name} has {} coordinates", z.dim())));
        }
        if !z.on_xr(self.radius, MANIFOLD_TOL) {
            return Err(Error::OffManifold(format!(
                "{name}: |z| = {}, |zᵗz| = {}, expected X_r with r = {}",
                z.norm(),
                z.bilinear_square().norm(),
                self.radius
            )));
        }
        Ok(())
    }

    pub fn eval(&self, x: &ComplexPoint, y: &ComplexPoint) -> Result<Complex64> {
        self.check(x, "x")?;
        self.check(y, "y")?;
        let sx = self.basis.values(&x.z);
        let sy = self.basis.values(&y.z);
        Ok(self.prefactor() * pair_sum(&sx, &sy))
    }
}

/// `Σ a_j conj(b_j)`, written so that swapping the arguments conjugates the
/// result bit for bit.
pub(crate) fn pair_sum(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let mut re = 0.0;
    let mut im = 0.0;
    for (x, y) in a.iter().zip(b) {
        re += x.re * y.re + x.im * y.im;
        im += x.im * y.re - x.re * y.im;
    }
    Complex64::new(re, im)
}

/// Normalized off-diagonal kernel values over a range of degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub distance: f64,
    pub ks: Vec<u32>,
    /// `|Π_{1,k}(x, x')| / Π_{1,k}(x, x)`.
    pub normalized: Vec<f64>,
    /// `10 · gram_stderr` of each basis.
    pub noise_floor: Vec<f64>,
    pub below_floor: Vec<bool>,
    /// Each value above the floor is smaller than the one before it; checking
    /// stops at the first value below the floor.
    pub strictly_decreasing: bool,
    /// Negated least-squares slope of `ln normalized` against `k` over the
    /// values above the floor.
    pub decay_rate: Option<f64>,
}

/// Evaluates `|Π_{1,k}(x, x')| / Π_{1,k}(x, x)` for each evaluator (all at
/// radius 1). The fibers through `x` and `x'` must be at distance at least
/// `min_dist`, measured on `X_√2`.
pub fn offdiagonal_decay_probe(
    evaluators: &[SzegoEvaluator],
    x: &ComplexPoint,
    x_prime: &ComplexPoint,
    min_dist: f64,
) -> Result<DecayReport> {
    let distance = fubini_study_distance(&x.scale(SQRT_2), &x_prime.scale(SQRT_2))?;
    if distance < min_dist {
        return Err(Error::InvalidParameter(format!(
            "probe pair at distance {distance} < {min_dist}"
        )));
    }
    let mut ks = Vec::new();
    let mut normalized = Vec::new();
    let mut noise_floor = Vec::new();
    let mut below_floor = Vec::new();
    for ev in evaluators {
        if (ev.radius() - 1.0).abs() > 1e-15 {
            return Err(Error::InvalidParameter("decay probe evaluates Π_{1,k}".into()));
        }
        let diag = ev.eval(x, x)?.re;
        let off = ev.eval(x, x_prime)?.norm();
        let v = off / diag;
        let floor = 10.0 * ev.basis().gram_stderr();
        ks.push(ev.idx().k());
        normalized.push(v);
        noise_floor.push(floor);
        below_floor.push(v < floor);
    }
    let mut strictly_decreasing = true;
    for i in 1..normalized.len() {
        if below_floor[i] {
            break;
        }
        if normalized[i] >= normalized[i - 1] {
            strictly_decreasing = false;
            break;
        }
    }
    let pts: Vec<(f64, f64)> = ks
        .iter()
        .zip(&normalized)
        .zip(&below_floor)
        .filter(|(_, &b)| !b)
        .map(|((&k, &v), _)| (f64::from(k), v.ln()))
        .collect();
    let decay_rate = crate::harness::ols(&pts).map(|(slope, _, _)| -slope);
    Ok(DecayReport {
        distance,
        ks,
        normalized,
        noise_floor,
        below_floor,
        strictly_decreasing,
        decay_rate,
    })
}
