//! Gauss-Legendre rules and product rules on low-dimensional spheres.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Nodes and weights of the `m`-point Gauss-Legendre rule on `[-1, 1]`,
/// nodes in increasing order.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        // Tricomi initial guess, then Newton.
        let mut z = (PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(m, z);
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(m, z);
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[m - 1 - i] = z;
        w[i] = wi;
        w[m - 1 - i] = wi;
    }
    if m % 2 == 1 {
        x[m / 2] = 0.0;
    }
    (x, w)
}

fn legendre_and_derivative(m: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if m == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=m {
        let j = j as f64;
        let p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Composite Gauss-Legendre rule on `[a, b]`: `panels` equal panels of
/// `nodes` points each.
pub fn composite_gauss_legendre(a: f64, b: f64, panels: usize, nodes: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(nodes);
    let h = (b - a) / panels as f64;
    let mut xs = Vec::with_capacity(panels * nodes);
    let mut ws = Vec::with_capacity(panels * nodes);
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + h / 2.0;
        for (xi, wi) in x.iter().zip(&w) {
            xs.push(mid + h / 2.0 * xi);
            ws.push(h / 2.0 * wi);
        }
    }
    (xs, ws)
}

/// A cubature rule on a unit sphere `S^d ⊂ R^{d+1}`.
#[derive(Debug, Clone)]
pub struct SphereRule {
    dim: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl SphereRule {
    /// `m` equispaced nodes on the circle; exact for trigonometric degree `< m`.
    pub fn circle(m: usize) -> Self {
        let w = 2.0 * PI / m as f64;
        let mut points = Vec::with_capacity(2 * m);
        for j in 0..m {
            let t = 2.0 * PI * j as f64 / m as f64;
            points.push(t.cos());
            points.push(t.sin());
        }
        Self {
            dim: 1,
            points,
            weights: vec![w; m],
        }
    }

    /// Gauss-Legendre in `cos θ` times `order` equispaced azimuths; exact for
    /// polynomials of total degree `< order`.
    pub fn s2(order: usize) -> Self {
        let (z, wz) = gauss_legendre(order);
        let dphi = 2.0 * PI / order as f64;
        let mut points = Vec::with_capacity(3 * order * order);
        let mut weights = Vec::with_capacity(order * order);
        for (zi, wi) in z.iter().zip(&wz) {
            let s = (1.0 - zi * zi).max(0.0).sqrt();
            for j in 0..order {
                let phi = dphi * j as f64;
                points.extend_from_slice(&[s * phi.cos(), s * phi.sin(), *zi]);
                weights.push(wi * dphi);
            }
        }
        Self {
            dim: 2,
            points,
            weights,
        }
    }

    /// `S^3` as `(sqrt(1-t) e^{iφ1}, sqrt(t) e^{iφ2})` with `dV = dt dφ1 dφ2 / 2`;
    /// Gauss-Legendre in `t ∈ [0,1]` and equispaced azimuths.
    pub fn s3(order: usize) -> Self {
        let (x, wx) = gauss_legendre(order);
        let dphi = 2.0 * PI / order as f64;
        let mut points = Vec::with_capacity(4 * order * order * order);
        let mut weights = Vec::with_capacity(order * order * order);
        for (xi, wi) in x.iter().zip(&wx) {
            let t = 0.5 * (xi + 1.0);
            let wt = 0.5 * wi;
            let (a, b) = ((1.0 - t).sqrt(), t.sqrt());
            for j1 in 0..order {
                let p1 = dphi * j1 as f64;
                for j2 in 0..order {
                    let p2 = dphi * j2 as f64;
                    points.extend_from_slice(&[a * p1.cos(), a * p1.sin(), b * p2.cos(), b * p2.sin()]);
                    weights.push(0.5 * wt * dphi * dphi);
                }
            }
        }
        Self {
            dim: 3,
            points,
            weights,
        }
    }

    /// Product rule on `S^d` for `d ∈ {1, 2, 3}`, exact for polynomials of
    /// total degree up to `degree`.
    pub fn for_degree(d: usize, degree: usize) -> Result<Self> {
        match d {
            1 => Ok(Self::circle(degree + 1)),
            2 => Ok(Self::s2(degree + 1)),
            3 => Ok(Self::s3(degree + 1)),
            _ => Err(Error::Unsupported(format!("sphere quadrature on S^{d}"))),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn point(&self, i: usize) -> &[f64] {
        let d = self.dim + 1;
        &self.points[i * d..(i + 1) * d]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.points
            .chunks_exact(self.dim + 1)
            .zip(self.weights.iter().copied())
    }

    /// Maps the rule onto the unit sphere of `span(frame)` in the ambient space.
    /// `frame` holds `dim + 1` orthonormal vectors of equal length.
    pub fn embed(&self, frame: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let ambient = frame[0].len();
        self.iter()
            .map(|(c, _)| {
                let mut v = vec![0.0; ambient];
                for (ci, e) in c.iter().zip(frame) {
                    for (vj, ej) in v.iter_mut().zip(e) {
                        *vj += ci * ej;
                    }
                }
                v
            })
            .collect()
    }
}
