//! Closed-form leading asymptotics of zonal harmonics for `k → ∞`.
//!
//! Every approximant has the shape `amplitude · cos(α_{k,n}(θ))` with the
//! common phase `α_{k,n}(θ) = kθ + (θ/2 − π/4)(n − 1)`, valid on the window
//! `C k^{−δ} < θ < π − C k^{−δ}`, `0 ≤ δ < 1/6`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use crate::error::{Error, Result};
use crate::quadrature::composite_gauss_legendre;
use crate::special::{dim_eigenspace, vol_sphere, ZonalIndex};

/// Expanding angle window `(C k^{-δ}, π − C k^{-δ})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleWindow {
    c: f64,
    delta: f64,
}

impl AngleWindow {
    pub fn new(c: f64, delta: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter(format!("window C must be positive, got {c}")));
        }
        if !(0.0..1.0 / 6.0).contains(&delta) {
            return Err(Error::InvalidParameter(format!(
                "window delta must lie in [0, 1/6), got {delta}"
            )));
        }
        Ok(Self { c, delta })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Open interval `(lo, hi)` at degree `k`; may be empty.
    pub fn bounds(&self, k: u32) -> (f64, f64) {
        let edge = self.c * f64::from(k).powf(-self.delta);
        (edge, PI - edge)
    }

    /// Bounds, or an error when the window is empty at `k`.
    pub fn nonempty_bounds(&self, k: u32) -> Result<(f64, f64)> {
        let (lo, hi) = self.bounds(k);
        if lo < hi {
            Ok((lo, hi))
        } else {
            Err(Error::EmptyWindow { k, lo, hi })
        }
    }

    pub fn contains(&self, k: u32, theta: f64) -> bool {
        let (lo, hi) = self.bounds(k);
        lo < theta && theta < hi
    }
}

/// Strict membership test `C k^{-δ} < θ < π − C k^{-δ}`.
pub fn window_contains(w: &AngleWindow, k: u32, theta: f64) -> bool {
    w.contains(k, theta)
}

/// Leading-order approximant `amplitude · cos(phase)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticValue {
    pub amplitude: f64,
    pub phase: f64,
    pub value: f64,
}

impl AsymptoticValue {
    fn new(amplitude: f64, phase: f64) -> Self {
        Self {
            amplitude,
            phase,
            value: amplitude * phase.cos(),
        }
    }
}

fn check_open_angle(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < PI {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "theta",
            value: theta,
            domain: "(0, π)",
        })
    }
}

fn check_degree(idx: ZonalIndex) -> Result<f64> {
    if idx.k() == 0 {
        return Err(Error::InvalidParameter(
            "leading asymptotics need k >= 1".into(),
        ));
    }
    Ok(f64::from(idx.k()))
}

/// `α_{k,n}(θ) = kθ + (θ/2 − π/4)(n − 1)`.
pub fn phase_alpha(idx: ZonalIndex, theta: f64) -> Result<f64> {
    check_open_angle(theta)?;
    Ok(phase_unchecked(idx, theta))
}

#[inline]
fn phase_unchecked(idx: ZonalIndex, theta: f64) -> f64 {
    f64::from(idx.k()) * theta + (theta / 2.0 - FRAC_PI_4) * (f64::from(idx.n()) - 1.0)
}

/// Leading term of `P_{k,n+1}(cos θ)`:
/// `2^{(n+1)/2} / vol(S^{n-1}) · (π / (k sin θ))^{(n-1)/2} · cos α`.
pub fn legendre_leading(idx: ZonalIndex, theta: f64) -> Result<AsymptoticValue> {
    check_open_angle(theta)?;
    let k = check_degree(idx)?;
    let n = f64::from(idx.n());
    let half = (n - 1.0) / 2.0;
    let amp = 2f64.powf((n + 1.0) / 2.0) / vol_sphere(idx.n() - 1) * (PI / (k * theta.sin())).powf(half);
    Ok(AsymptoticValue::new(amp, phase_unchecked(idx, theta)))
}

/// Leading term of the projector kernel at angle `θ`:
/// `2^{(n+3)/2} / ((n-1)! vol(S^n) vol(S^{n-1})) · (πk / sin θ)^{(n-1)/2} · cos α`.
pub fn projector_leading(idx: ZonalIndex, theta: f64) -> Result<AsymptoticValue> {
    check_open_angle(theta)?;
    let k = check_degree(idx)?;
    let n = f64::from(idx.n());
    let fact: f64 = (1..idx.n()).map(f64::from).product();
    let amp = 2f64.powf((n + 3.0) / 2.0) / (fact * vol_sphere(idx.n()) * vol_sphere(idx.n() - 1))
        * (PI * k / theta.sin()).powf((n - 1.0) / 2.0);
    Ok(AsymptoticValue::new(amp, phase_unchecked(idx, theta)))
}

/// Leading term of the Jacobi polynomial `P_k^{(n/2-1, n/2-1)}(cos θ)`:
/// `(πk)^{-1/2} (cos(θ/2) sin(θ/2))^{-(n-1)/2} · cos α`.
pub fn gegenbauer_leading(idx: ZonalIndex, theta: f64) -> Result<AsymptoticValue> {
    check_open_angle(theta)?;
    let k = check_degree(idx)?;
    let n = f64::from(idx.n());
    let cs = (theta / 2.0).cos() * (theta / 2.0).sin();
    let amp = (PI * k).powf(-0.5) * cs.powf(-(n - 1.0) / 2.0);
    Ok(AsymptoticValue::new(amp, phase_unchecked(idx, theta)))
}

/// Leading term of the conformal factor `C_{k,n}`:
/// `[(n-1)!/(2√2) · vol(S^n) vol(S^{n-1})]^{1/2} (πk)^{-(n-1)/4}`.
pub fn c_constant_leading(idx: ZonalIndex) -> Result<f64> {
    let k = check_degree(idx)?;
    let n = f64::from(idx.n());
    let fact: f64 = (1..idx.n()).map(f64::from).product();
    let base = fact / (2.0 * SQRT_2) * vol_sphere(idx.n()) * vol_sphere(idx.n() - 1);
    Ok(base.sqrt() * (PI * k).powf(-(n - 1.0) / 4.0))
}

/// Ratio `N_{k,n} / vol(S^n)` times the Legendre leading term, i.e. the
/// projector approximant obtained through the exact eigenspace dimension.
pub fn projector_via_dimension(idx: ZonalIndex, theta: f64) -> Result<AsymptoticValue> {
    let lead = legendre_leading(idx, theta)?;
    let scale = dim_eigenspace(idx)? as f64 / vol_sphere(idx.n());
    Ok(AsymptoticValue::new(scale * lead.amplitude, lead.phase))
}

/// Standard symplectic form on `C^m`: `ω₀(v, w) = Im Σ conj(v_j) w_j`.
pub fn symplectic_form(v: &[Complex64], w: &[Complex64]) -> Result<f64> {
    if v.len() != w.len() {
        return Err(Error::Dimension(format!("{} vs {}", v.len(), w.len())));
    }
    Ok(v.iter().zip(w).map(|(a, b)| (a.conj() * b).im).sum())
}

/// `ψ₂(v, w) = −i ω₀(v, w) − ½‖v − w‖²`.
pub fn psi2(v: &[Complex64], w: &[Complex64]) -> Result<Complex64> {
    let omega = symplectic_form(v, w)?;
    let dist2: f64 = v.iter().zip(w).map(|(a, b)| (a - b).norm_sqr()).sum();
    Ok(Complex64::new(-0.5 * dist2, -omega))
}

/// [`psi2`] on real vectors of even length read as `(re, im)` pairs.
pub fn psi2_real(v: &[f64], w: &[f64]) -> Result<Complex64> {
    if v.len() != w.len() || v.len() % 2 != 0 {
        return Err(Error::Dimension(format!(
            "need equal even lengths, got {} and {}",
            v.len(),
            w.len()
        )));
    }
    let pack = |x: &[f64]| -> Vec<Complex64> {
        x.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect()
    };
    psi2(&pack(v), &pack(w))
}

/// Closed form of the Gaussian leading coefficient
/// `(√2 π)^{n-1} sin(θ)^{(n-1)/2} e^{i(θ/2 − π/4)(n-1)}`.
pub fn gaussian_leading_coefficient(n: u32, theta: f64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::InvalidIndex { n: 0, k: 0 });
    }
    check_open_angle(theta)?;
    let m = f64::from(n - 1);
    let modulus = (SQRT_2 * PI).powf(m) * theta.sin().powf(m / 2.0);
    Ok(Complex64::from_polar(modulus, (theta / 2.0 - FRAC_PI_4) * m))
}

/// Half-width of the truncated integration box.
const GAUSSIAN_BOX: f64 = 8.0;
const GAUSSIAN_PANELS: usize = 32;
const GAUSSIAN_NODES: usize = 16;

/// The same coefficient by quadrature of
/// `∫∫ exp(−½‖b₀‖² − i b₀ᵗb₁ − ½(1 + 2i cot θ)‖b₁‖²) db₀ db₁` over
/// `R^{n-1} × R^{n-1}`. The integrand factorizes by coordinate, so one
/// two-dimensional integral is computed and raised to the power `n − 1`.
pub fn gaussian_coefficient_numeric(n: u32, theta: f64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::InvalidIndex { n: 0, k: 0 });
    }
    if n > 4 {
        return Err(Error::Unsupported(format!(
            "gaussian quadrature oracle supports n <= 4, got {n}"
        )));
    }
    check_open_angle(theta)?;
    if n == 1 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let cot = theta.cos() / theta.sin();
    let (x, w) = composite_gauss_legendre(-GAUSSIAN_BOX, GAUSSIAN_BOX, GAUSSIAN_PANELS, GAUSSIAN_NODES);
    let b1_coef = Complex64::new(-0.5, -cot);
    let mut total = Complex64::new(0.0, 0.0);
    for (b1, w1) in x.iter().zip(&w) {
        let outer = (b1_coef * b1 * b1).exp();
        let mut inner = Complex64::new(0.0, 0.0);
        for (b0, w0) in x.iter().zip(&w) {
            inner += w0 * Complex64::new(-0.5 * b0 * b0, -b0 * b1).exp();
        }
        total += w1 * outer * inner;
    }
    Ok(total.powi(n as i32 - 1))
}
