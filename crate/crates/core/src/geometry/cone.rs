//! Degree-`k` polynomials on the cone and their orthonormalization over `X_1`.
//!
//! Monomials whose first exponent is at most 1 represent the quotient by the
//! ideal `(zᵗz)`: the rewrite `z₀² → −(z₁² + … + z_n²)` terminates in them.
//! The Gram matrix is estimated by Monte Carlo over Haar frames, each frame
//! paired with its reflection `(q, −p)`. The pair average of
//! `s_j conj(s_l)` is `Re(s_j conj(s_l))` evaluated at one point, so the
//! estimated Gram matrix and its inverse Cholesky factor are real.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::SQRT_2;

use super::{frame, hardy_mass};
use crate::error::{Error, Result};
use crate::linalg::{cholesky, lower_triangular_inverse, symmetrize};
use crate::rng::{blocks, SeedStream};
use crate::special::{dim_eigenspace, ZonalIndex};

/// Smallest sample count accepted by [`build_cone_basis`].
pub const MIN_GRAM_SAMPLES: usize = 100_000;

/// Largest degree accepted by [`build_cone_basis`].
pub const MAX_ORACLE_DEGREE: u32 = 12;

/// Exponent tuples of degree `k` in `n + 1` variables with first entry `<= 1`,
/// in lexicographic order.
pub fn monomial_basis(idx: ZonalIndex) -> Vec<Vec<u32>> {
    let vars = idx.n() as usize + 1;
    let k = idx.k();
    let mut out = Vec::new();
    let mut cur = vec![0u32; vars];
    for e0 in 0..=k.min(1) {
        cur[0] = e0;
        compositions(&mut cur, 1, k - e0, &mut out);
    }
    out
}

fn compositions(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Vec<u32>>) {
    if pos == cur.len() - 1 {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for e in 0..=left {
        cur[pos] = e;
        compositions(cur, pos + 1, left - e, out);
    }
}

/// Orthonormalized monomial basis of `H_k(X_1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeBasis {
    idx: ZonalIndex,
    exponents: Vec<Vec<u32>>,
    /// Row-major `N × N`; row `i` holds the monomial coefficients of `s_i`.
    coeff: Vec<Complex64>,
    samples: usize,
    seed: u64,
    gram_stderr: f64,
}

/// Result of re-estimating the Gram matrix of an orthonormalized family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramCheck {
    pub max_deviation: f64,
    pub gram_stderr: f64,
    pub samples: usize,
}

impl GramCheck {
    /// Every entry within `5 · gram_stderr` of the identity.
    pub fn passes(&self) -> bool {
        self.max_deviation <= 5.0 * self.gram_stderr
    }
}

impl ConeBasis {
    pub fn idx(&self) -> ZonalIndex {
        self.idx
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn coeff(&self) -> &[Complex64] {
        &self.coeff
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn gram_stderr(&self) -> f64 {
        self.gram_stderr
    }

    /// Raw monomials `z^e` at `z`.
    pub fn monomials(&self, z: &[Complex64]) -> Vec<Complex64> {
        eval_monomials(&self.exponents, self.idx.k(), z)
    }

    /// Orthonormal family `s_i(z)`.
    pub fn values(&self, z: &[Complex64]) -> Vec<Complex64> {
        let m = self.monomials(z);
        let n = m.len();
        (0..n)
            .map(|i| {
                let row = &self.coeff[i * n..(i + 1) * n];
                row.iter().zip(&m).map(|(c, v)| c * v).sum()
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let b: Self = serde_json::from_str(s)?;
        let expected = monomial_basis(b.idx);
        if b.exponents != expected {
            return Err(Error::Serde("exponent list does not match the index".into()));
        }
        if b.coeff.len() != b.exponents.len() * b.exponents.len() {
            return Err(Error::Serde(format!(
                "coefficient matrix has {} entries, expected {}",
                b.coeff.len(),
                b.exponents.len().pow(2)
            )));
        }
        Ok(b)
    }
}

pub(crate) fn eval_monomials(exponents: &[Vec<u32>], k: u32, z: &[Complex64]) -> Vec<Complex64> {
    let k = k as usize;
    let mut pw = vec![Complex64::new(1.0, 0.0); z.len() * (k + 1)];
    for (j, zj) in z.iter().enumerate() {
        for e in 1..=k {
            pw[j * (k + 1) + e] = pw[j * (k + 1) + e - 1] * zj;
        }
    }
    exponents
        .iter()
        .map(|ex| {
            ex.iter()
                .enumerate()
                .fold(Complex64::new(1.0, 0.0), |acc, (j, &e)| acc * pw[j * (k + 1) + e as usize])
        })
        .collect()
}

fn check_oracle_index(idx: ZonalIndex) -> Result<()> {
    if !(2..=3).contains(&idx.n()) || idx.k() > MAX_ORACLE_DEGREE {
        return Err(Error::Unsupported(format!(
            "cone basis oracle needs n in {{2, 3}} and k <= {MAX_ORACLE_DEGREE}, got n = {}, k = {}",
            idx.n(),
            idx.k()
        )));
    }
    Ok(())
}

/// Sum over Haar frames of `Re(g_i conj(g_j))` (lower triangle, row-major)
/// and, when `squares`, of its square, where `g = transform(monomials(x))`
/// at `x = (q + ip)/√2`.
fn accumulate_outer<T>(
    idx: ZonalIndex,
    exponents: &[Vec<u32>],
    samples: usize,
    stream: SeedStream,
    squares: bool,
    transform: T,
) -> (Vec<f64>, Vec<f64>)
where
    T: Fn(&[Complex64]) -> Vec<Complex64> + Sync,
{
    let d = idx.n() as usize + 1;
    let m = exponents.len();
    let parts: Vec<(Vec<f64>, Vec<f64>)> = blocks(samples)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(b, len)| {
            let mut rng = stream.block_rng(b);
            let mut s1 = vec![0.0; m * m];
            let mut s2 = vec![0.0; if squares { m * m } else { 0 }];
            let mut x = vec![Complex64::new(0.0, 0.0); d];
            for _ in 0..len {
                let (q, p) = frame::sample_frame_raw(d, &mut rng);
                for (xi, (a, b)) in x.iter_mut().zip(q.iter().zip(&p)) {
                    *xi = Complex64::new(*a, *b) / SQRT_2;
                }
                let g = transform(&eval_monomials(exponents, idx.k(), &x));
                for i in 0..m {
                    for j in 0..=i {
                        let v = g[i].re * g[j].re + g[i].im * g[j].im;
                        s1[i * m + j] += v;
                        if squares {
                            s2[i * m + j] += v * v;
                        }
                    }
                }
            }
            (s1, s2)
        })
        .collect();
    let mut s1 = vec![0.0; m * m];
    let mut s2 = vec![0.0; if squares { m * m } else { 0 }];
    for (a, b) in &parts {
        s1.iter_mut().zip(a).for_each(|(x, y)| *x += y);
        s2.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    }
    (s1, s2)
}

/// Mean Gram matrix and the largest entrywise standard error from the sums
/// produced by [`accumulate_outer`]; both in `dV` units.
fn gram_statistics(m: usize, samples: usize, weight: f64, s1: &[f64], s2: &[f64]) -> (Vec<f64>, f64) {
    let cnt = samples as f64;
    let mut g = vec![0.0; m * m];
    let mut worst: f64 = 0.0;
    for i in 0..m {
        for j in 0..=i {
            let mean = s1[i * m + j] / cnt;
            g[i * m + j] = weight * mean;
            g[j * m + i] = weight * mean;
            if !s2.is_empty() {
                let var = ((s2[i * m + j] / cnt - mean * mean) * cnt / (cnt - 1.0)).max(0.0);
                worst = worst.max(weight * (var / cnt).sqrt());
            }
        }
    }
    (g, worst)
}

/// Estimates the `dV`-Gram matrix of [`monomial_basis`] on `X_1` from
/// `samples` Haar frames and stores its inverse Cholesky factor.
pub fn build_cone_basis(idx: ZonalIndex, samples: usize, stream: SeedStream) -> Result<ConeBasis> {
    check_oracle_index(idx)?;
    if samples < MIN_GRAM_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "Gram estimation needs at least {MIN_GRAM_SAMPLES} samples, got {samples}"
        )));
    }
    let exponents = monomial_basis(idx);
    let m = exponents.len();
    debug_assert_eq!(m as u128, dim_eigenspace(idx)?);
    let weight = hardy_mass(idx.n(), 1.0);
    let gram_stream = stream.derive_index(u64::from(idx.k())).derive("gram");

    let (s1, _) = accumulate_outer(idx, &exponents, samples, gram_stream, false, |g| g.to_vec());
    let (mut g, _) = gram_statistics(m, samples, weight, &s1, &[]);
    symmetrize(&mut g, m);
    let l = cholesky(&g, m).map_err(|pivot| Error::SingularGram { pivot, samples })?;
    let inv = lower_triangular_inverse(&l, m);

    // Spread of the orthonormalized family on the same draws.
    let (s1, s2) = accumulate_outer(idx, &exponents, samples, gram_stream, true, |g| {
        apply_real_lower(&inv, g)
    });
    let (_, gram_stderr) = gram_statistics(m, samples, weight, &s1, &s2);

    Ok(ConeBasis {
        idx,
        exponents,
        coeff: inv.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        samples,
        seed: stream.master(),
        gram_stderr,
    })
}

fn apply_real_lower(l: &[f64], v: &[Complex64]) -> Vec<Complex64> {
    let m = v.len();
    (0..m)
        .map(|i| (0..=i).map(|j| l[i * m + j] * v[j]).sum())
        .collect()
}

/// Re-estimates the Gram matrix of `basis` on fresh draws.
pub fn validate_cone_basis(basis: &ConeBasis, samples: usize, stream: SeedStream) -> GramCheck {
    let idx = basis.idx;
    let m = basis.len();
    let weight = hardy_mass(idx.n(), 1.0);
    let fresh = stream.derive_index(u64::from(idx.k())).derive("fresh");
    let (s1, s2) = accumulate_outer(idx, &basis.exponents, samples, fresh, true, |g| {
        (0..m)
            .map(|i| {
                let row = &basis.coeff[i * m..(i + 1) * m];
                row.iter().zip(g).map(|(c, v)| c * v).sum()
            })
            .collect()
    });
    let (g, gram_stderr) = gram_statistics(m, samples, weight, &s1, &s2);
    let mut max_deviation: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let e = if i == j { 1.0 } else { 0.0 };
            max_deviation = max_deviation.max((g[i * m + j] - e).abs());
        }
    }
    GramCheck {
        max_deviation,
        gram_stderr: gram_stderr.max(basis.gram_stderr),
        samples,
    }
}
