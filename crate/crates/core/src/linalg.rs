//! Small dense linear algebra on row-major `Vec<f64>` matrices.

use crate::error::{Error, Result};

/// Relative pivot floor for [`cholesky`]: pivot `j` must exceed
/// `PIVOT_FLOOR * a[j][j]`.
pub const PIVOT_FLOOR: f64 = 1e-8;

/// Lower Cholesky factor `L` with `A = L Lᵗ` of a symmetric `m × m` matrix.
/// Returns the index of the first pivot that falls below the floor.
pub fn cholesky(a: &[f64], m: usize) -> std::result::Result<Vec<f64>, usize> {
    let mut l = vec![0.0; m * m];
    for j in 0..m {
        let mut d = a[j * m + j];
        for r in 0..j {
            d -= l[j * m + r] * l[j * m + r];
        }
        if !d.is_finite() || d <= PIVOT_FLOOR * a[j * m + j].abs() {
            return Err(j);
        }
        let d = d.sqrt();
        l[j * m + j] = d;
        for i in j + 1..m {
            let mut s = a[i * m + j];
            for r in 0..j {
                s -= l[i * m + r] * l[j * m + r];
            }
            l[i * m + j] = s / d;
        }
    }
    Ok(l)
}

/// Inverse of a nonsingular lower-triangular matrix (again lower-triangular).
pub fn lower_triangular_inverse(l: &[f64], m: usize) -> Vec<f64> {
    let mut inv = vec![0.0; m * m];
    for c in 0..m {
        inv[c * m + c] = 1.0 / l[c * m + c];
        for i in c + 1..m {
            let mut s = 0.0;
            for r in c..i {
                s += l[i * m + r] * inv[r * m + c];
            }
            inv[i * m + c] = -s / l[i * m + i];
        }
    }
    inv
}

/// `A ↦ (A + Aᵗ)/2`.
pub fn symmetrize(a: &mut [f64], m: usize) {
    for i in 0..m {
        for j in i + 1..m {
            let v = 0.5 * (a[i * m + j] + a[j * m + i]);
            a[i * m + j] = v;
            a[j * m + i] = v;
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `n` orthonormal vectors spanning `q^⊥` for a unit `q ∈ R^{n+1}`, taken
/// from the columns of a Householder reflection that maps `e_0` to `±q`.
pub fn orthonormal_complement(q: &[f64]) -> Result<Vec<Vec<f64>>> {
    let d = q.len();
    if d < 2 {
        return Err(Error::Dimension(format!("complement of a vector in R^{d}")));
    }
    if (norm(q) - 1.0).abs() > 1e-10 {
        return Err(Error::OffManifold(format!("|q| = {} is not 1", norm(q))));
    }
    let sign = if q[0] >= 0.0 { 1.0 } else { -1.0 };
    let mut v = q.to_vec();
    v[0] += sign;
    let vv = dot(&v, &v);
    Ok((1..d)
        .map(|c| {
            (0..d)
                .map(|r| {
                    let id = if r == c { 1.0 } else { 0.0 };
                    id - 2.0 * v[r] * v[c] / vv
                })
                .collect()
        })
        .collect())
}
