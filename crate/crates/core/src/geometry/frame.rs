//! Points of the cone `zᵗz = 0`, orthonormal frames, and the local
//! constructions around a geodesic lift.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::{dot, norm};

/// Tolerance on frame orthonormality.
pub const FRAME_TOL: f64 = 1e-12;

/// Tolerance on membership of `X_r` for kernel inputs.
pub const MANIFOLD_TOL: f64 = 1e-9;

/// A point of `C^{n+1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub z: Vec<Complex64>,
}

impl ComplexPoint {
    pub fn new(z: Vec<Complex64>) -> Self {
        Self { z }
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.z.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Bilinear square `zᵗz`.
    pub fn bilinear_square(&self) -> Complex64 {
        self.z.iter().map(|c| c * c).sum()
    }

    /// `|zᵗz| <= tol ‖z‖²`.
    pub fn on_cone(&self, tol: f64) -> bool {
        self.bilinear_square().norm() <= tol * self.norm_sqr()
    }

    /// On the cone and `|‖z‖ − r| <= tol`.
    pub fn on_xr(&self, r: f64, tol: f64) -> bool {
        self.on_cone(tol) && (self.norm() - r).abs() <= tol
    }

    /// Hermitian product `Σ z_j conj(w_j)`.
    pub fn hermitian(&self, other: &Self) -> Complex64 {
        self.z.iter().zip(&other.z).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.z.iter().map(|c| c.conj()).collect())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.z.iter().map(|c| c * s).collect())
    }

    /// `e^{iφ} z`.
    pub fn rotate(&self, phi: f64) -> Self {
        let u = Complex64::from_polar(1.0, phi);
        Self::new(self.z.iter().map(|c| c * u).collect())
    }

    pub fn re(&self) -> Vec<f64> {
        self.z.iter().map(|c| c.re).collect()
    }

    pub fn im(&self) -> Vec<f64> {
        self.z.iter().map(|c| c.im).collect()
    }
}

/// An orthonormal pair `(q, p)` in `R^{n+1}`, i.e. the point `q + ip` of `X_√2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FramePoint {
    q: Vec<f64>,
    p: Vec<f64>,
}

impl FramePoint {
    pub fn new(q: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        if q.len() != p.len() || q.len() < 2 {
            return Err(Error::Dimension(format!("frame of lengths {} and {}", q.len(), p.len())));
        }
        let (nq, np, qp) = (norm(&q), norm(&p), dot(&q, &p));
        if (nq - 1.0).abs() > FRAME_TOL || (np - 1.0).abs() > FRAME_TOL || qp.abs() > FRAME_TOL {
            return Err(Error::OffManifold(format!(
                "frame with |q| = {nq}, |p| = {np}, q·p = {qp}"
            )));
        }
        Ok(Self { q, p })
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    /// Sphere dimension `n`.
    pub fn n(&self) -> usize {
        self.q.len() - 1
    }

    /// `q + ip ∈ X_√2`.
    pub fn embed(&self) -> ComplexPoint {
        ComplexPoint::new(self.q.iter().zip(&self.p).map(|(&a, &b)| Complex64::new(a, b)).collect())
    }

    /// `(q + ip)/√2 ∈ X_1`.
    pub fn to_x1(&self) -> ComplexPoint {
        self.embed().scale(1.0 / SQRT_2)
    }

    /// The frame `(q, −p)`, whose embedding is the complex conjugate.
    pub fn reflect(&self) -> Self {
        Self {
            q: self.q.clone(),
            p: self.p.iter().map(|x| -x).collect(),
        }
    }
}

fn gaussian_vector<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<f64> {
    (0..d).map(|_| rng.sample(StandardNormal)).collect()
}

/// Haar-uniform orthonormal 2-frame in `R^{n+1}` by Gram-Schmidt on two
/// Gaussian vectors.
pub fn sample_frame<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<FramePoint> {
    if n == 0 {
        return Err(Error::InvalidParameter("frames need n >= 1".into()));
    }
    let (q, p) = sample_frame_raw(n + 1, rng);
    Ok(FramePoint { q, p })
}

pub(crate) fn sample_frame_raw<R: Rng + ?Sized>(d: usize, rng: &mut R) -> (Vec<f64>, Vec<f64>) {
    loop {
        let g1 = gaussian_vector(d, rng);
        let g2 = gaussian_vector(d, rng);
        let n1 = norm(&g1);
        if n1 < 1e-150 {
            continue;
        }
        let q: Vec<f64> = g1.iter().map(|x| x / n1).collect();
        let c = dot(&q, &g2);
        let mut p: Vec<f64> = g2.iter().zip(&q).map(|(x, y)| x - c * y).collect();
        let np = norm(&p);
        if np <= 1e-8 * norm(&g2) || np < 1e-150 {
            continue;
        }
        p.iter_mut().for_each(|x| *x /= np);
        // one reorthogonalization pass
        let c = dot(&q, &p);
        p.iter_mut().zip(&q).for_each(|(x, y)| *x -= c * y);
        let np = norm(&p);
        p.iter_mut().for_each(|x| *x /= np);
        return (q, p);
    }
}

/// Haar-uniform unit vector in `R^d`.
pub fn sample_unit_vector<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let g = gaussian_vector(d, rng);
        let n = norm(&g);
        if n > 1e-150 {
            return g.iter().map(|x| x / n).collect();
        }
    }
}

/// `e^{−iθ}(q₀ + ip₀)`; real and imaginary parts are the position and
/// velocity of the great circle through `q₀` in direction `p₀` at time `θ`.
pub fn geodesic_lift(frame: &FramePoint, theta: f64) -> ComplexPoint {
    frame.embed().rotate(-theta)
}

/// `S_±(v) = −1 ± sqrt(1 − ‖v‖²)`.
pub fn s_plus_minus(v: &[f64]) -> Result<(f64, f64)> {
    let nv2 = dot(v, v);
    if nv2 > 1.0 + 1e-12 {
        return Err(Error::Domain {
            what: "|v|",
            value: nv2.sqrt(),
            domain: "[0, 1]",
        });
    }
    let r = (1.0 - nv2).max(0.0).sqrt();
    Ok((-1.0 + r, -1.0 - r))
}

fn check_xr(z: &ComplexPoint, r: f64, name: &str) -> Result<()> {
    if z.on_xr(r, MANIFOLD_TOL) {
        Ok(())
    } else {
        Err(Error::OffManifold(format!(
            "{name}: |z| = {}, |zᵗz| = {} (expected X_r with r = {r})",
            z.norm(),
            z.bilinear_square().norm()
        )))
    }
}

/// Distance between the circle-bundle fibers through `z0, z1 ∈ X_√2`:
/// `(1/√2) min_γ ‖e^{−iγ} z0 − z1‖ = sqrt(2 − |⟨z0, z1⟩|)`.
pub fn fubini_study_distance(z0: &ComplexPoint, z1: &ComplexPoint) -> Result<f64> {
    check_xr(z0, SQRT_2, "z0")?;
    check_xr(z1, SQRT_2, "z1")?;
    if z0.dim() != z1.dim() {
        return Err(Error::Dimension(format!("{} vs {}", z0.dim(), z1.dim())));
    }
    Ok((2.0 - z0.hermitian(z1).norm()).max(0.0).sqrt())
}

/// Heisenberg offset of `w = z + i e^{iθ} δp`: returns `(β, h)` with
/// `β = 1 − ½‖δp‖²` and `w = β (z + h)`.
pub fn hlc_offset(z: &ComplexPoint, theta: f64, dp: &[f64]) -> Result<(f64, Vec<Complex64>)> {
    if dp.len() != z.dim() {
        return Err(Error::Dimension(format!("{} vs {}", dp.len(), z.dim())));
    }
    if (z.norm() - 1.0).abs() > MANIFOLD_TOL {
        return Err(Error::OffManifold(format!("|z| = {} is not 1", z.norm())));
    }
    let beta = 1.0 - 0.5 * dot(dp, dp);
    if beta <= 0.0 {
        return Err(Error::Domain {
            what: "|δp|",
            value: norm(dp),
            domain: "[0, √2)",
        });
    }
    let shift = Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, theta);
    let w = ComplexPoint::new(z.z.iter().zip(dp).map(|(a, &d)| a + shift * d).collect());
    if !w.on_cone(MANIFOLD_TOL) {
        return Err(Error::OffManifold(format!(
            "z + i e^(iθ) δp is off the cone: |wᵗw| = {}",
            w.bilinear_square().norm()
        )));
    }
    let h = w.z.iter().zip(&z.z).map(|(a, b)| a / beta - b).collect();
    Ok((beta, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeedStream;

    fn frame(seed: u64, n: usize) -> FramePoint {
        sample_frame(n, &mut SeedStream::new(seed).rng()).unwrap()
    }

    #[test]
    fn sampled_frames_embed_on_x_sqrt2() {
        let mut rng = SeedStream::new(1).rng();
        for n in 1..6 {
            for _ in 0..200 {
                let f = sample_frame(n, &mut rng).unwrap();
                let z = f.embed();
                assert!(z.bilinear_square().norm() < 1e-12);
                assert!((z.norm() - SQRT_2).abs() < 1e-12);
                assert!(FramePoint::new(f.q().to_vec(), f.p().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn haar_mean_of_q_vanishes() {
        let mut rng = SeedStream::new(2).rng();
        let m = 100_000;
        let d = 3;
        let mut mean = vec![0.0; d];
        for _ in 0..m {
            let f = sample_frame(d - 1, &mut rng).unwrap();
            mean.iter_mut().zip(f.q()).for_each(|(a, b)| *a += b);
        }
        // each coordinate has variance 1/d
        let se = (1.0 / d as f64 / m as f64).sqrt();
        for v in mean {
            assert!((v / m as f64).abs() < 4.0 * se);
        }
    }

    #[test]
    fn frame_validation() {
        assert!(FramePoint::new(vec![1.0, 0.0], vec![0.0, 1.0]).is_ok());
        assert!(FramePoint::new(vec![1.0, 0.0], vec![0.6, 0.8]).is_err());
        assert!(FramePoint::new(vec![1.0, 0.0], vec![0.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn geodesic_lift_examples() {
        let f = frame(3, 3);
        assert_eq!(geodesic_lift(&f, 0.0), f.embed());
        for &th in &[0.1, 1.0, 2.5, 5.0] {
            let z = geodesic_lift(&f, th);
            let re = z.re();
            for (i, x) in re.iter().enumerate() {
                let g = th.cos() * f.q()[i] + th.sin() * f.p()[i];
                assert!((x - g).abs() < 1e-15);
            }
            assert!((norm(&re) - 1.0).abs() < 1e-14);
            assert!(FramePoint::new(re, z.im()).is_ok());
        }
    }

    #[test]
    fn s_plus_minus_examples() {
        assert_eq!(s_plus_minus(&[0.0, 0.0]).unwrap(), (0.0, -2.0));
        assert_eq!(s_plus_minus(&[0.6, 0.8]).unwrap(), (-1.0, -1.0));
        assert!(s_plus_minus(&[1.0, 0.1]).is_err());
        // p = (1 + S₊) p₀ + v is a unit vector orthogonal to q₀
        let (q0, p0) = (vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0]);
        let v = vec![0.0, 0.0, 0.3, -0.5];
        let (sp, _) = s_plus_minus(&v).unwrap();
        let p: Vec<f64> = p0.iter().zip(&v).map(|(a, b)| (1.0 + sp) * a + b).collect();
        assert!((norm(&p) - 1.0).abs() < 1e-15);
        assert_eq!(dot(&p, &q0), 0.0);
    }

    #[test]
    fn distance_examples() {
        let f = frame(4, 2);
        let z = f.embed();
        assert!(fubini_study_distance(&z, &z).unwrap() < 1e-7);
        for &phi in &[0.3, 2.0, -1.0] {
            assert!(fubini_study_distance(&z, &z.rotate(phi)).unwrap() < 1e-7);
        }
        let d = fubini_study_distance(&z, &f.reflect().embed()).unwrap();
        assert!((d - SQRT_2).abs() < 1e-12);
        assert!(fubini_study_distance(&z, &z.scale(2.0)).is_err());
    }

    #[test]
    fn distance_matches_brute_force_minimum() {
        let (a, b) = (frame(5, 3).embed(), frame(6, 3).embed());
        let mut best = f64::INFINITY;
        for j in 0..20000 {
            let g = 2.0 * std::f64::consts::PI * j as f64 / 20000.0;
            let r = a.rotate(-g);
            let d: f64 = r.z.iter().zip(&b.z).map(|(x, y)| (x - y).norm_sqr()).sum();
            best = best.min(d.sqrt() / SQRT_2);
        }
        let d = fubini_study_distance(&a, &b).unwrap();
        assert!((d - best).abs() < 1e-6, "{d} vs {best}");
    }

    /// `δp = S₊ p₀ + v` with `v ⊥ q₀, p₀`, scaled to `X_1`.
    fn offset_data(theta: f64, v: &[f64]) -> (ComplexPoint, Vec<f64>) {
        let f = FramePoint::new(vec![0.0, 1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 0.0]).unwrap();
        let z = f.to_x1().rotate(theta);
        let (sp, _) = s_plus_minus(v).unwrap();
        let dp = f
            .p()
            .iter()
            .zip(v)
            .map(|(a, b)| (sp * a + b) / SQRT_2)
            .collect();
        (z, dp)
    }

    #[test]
    fn hlc_offset_properties() {
        let (z, _) = offset_data(0.7, &[0.0; 4]);
        let (beta, h) = hlc_offset(&z, 0.7, &[0.0; 4]).unwrap();
        assert_eq!(beta, 1.0);
        assert!(h.iter().all(|c| c.norm() == 0.0));

        let theta = 0.7;
        let mut prev = None;
        for step in 0..5 {
            let eps = 0.2 / 2f64.powi(step);
            let v = [0.6 * eps, 0.0, 0.0, -0.8 * eps];
            let (z, dp) = offset_data(theta, &v);
            let (beta, h) = hlc_offset(&z, theta, &dp).unwrap();
            let hz: Complex64 = h.iter().zip(&z.z).map(|(a, b)| a * b.conj()).sum();
            assert!(hz.norm() < 1e-10);
            let w: Vec<Complex64> = z
                .z
                .iter()
                .zip(&dp)
                .map(|(a, d)| a + Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, theta) * d)
                .collect();
            for ((wi, zi), hi) in w.iter().zip(&z.z).zip(&h) {
                assert!((wi - beta * (zi + hi)).norm() < 1e-14);
            }
            let lead: f64 = h
                .iter()
                .zip(&dp)
                .map(|(hi, d)| (hi - Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, theta) * d).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if let Some(p) = prev {
                let ratio: f64 = p / lead;
                assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
            }
            prev = Some(lead);
        }
    }

    #[test]
    fn hlc_offset_rejections() {
        let (z, _) = offset_data(0.0, &[0.0; 4]);
        assert!(hlc_offset(&z, 0.0, &[0.0, 0.0, 2.0, 0.0]).is_err());
        assert!(hlc_offset(&z, 0.0, &[0.0, 0.0, 0.0, 0.3]).is_err());
        assert!(hlc_offset(&z.scale(2.0), 0.0, &[0.0; 4]).is_err());
    }
}
