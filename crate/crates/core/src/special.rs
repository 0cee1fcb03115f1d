//! Zonal spherical harmonics on `S^n`.
//!
//! `P_{k,n+1}(t)` is the degree-`k` ultraspherical polynomial with parameter
//! `(n-1)/2`, normalized so that `P_{k,n+1}(1) = 1`. Evaluation runs the
//! three-term recurrence directly in that normalization,
//!
//! ```text
//! R_{j+1}(t) = t R_j(t) + j/(j+n-1) * (t R_j(t) - R_{j-1}(t)),   R_0 = 1, R_1 = t,
//! ```
//!
//! so every iterate stays in `[-1, 1]` and `R_k(1) = 1` holds without rounding.
//! At `n = 1` this is the Chebyshev recurrence.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Roundoff slack accepted on `|t| <= 1` before an argument is rejected.
pub const DOMAIN_SLACK: f64 = 1e-12;

/// Sphere dimension `n` and harmonic degree `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZonalIndex {
    n: u32,
    k: u32,
}

impl ZonalIndex {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidIndex {
                n: n.into(),
                k: k.into(),
            });
        }
        Ok(Self { n, k })
    }

    /// Accepts signed input (e.g. from a config file) and rejects negatives.
    pub fn from_signed(n: i64, k: i64) -> Result<Self> {
        match (u32::try_from(n), u32::try_from(k)) {
            (Ok(n32), Ok(k32)) if n32 >= 1 => Ok(Self { n: n32, k: k32 }),
            _ => Err(Error::InvalidIndex { n, k }),
        }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn with_degree(&self, k: u32) -> Self {
        Self { n: self.n, k }
    }

    /// Laplace-Beltrami eigenvalue `k(k+n-1)` carried by `V_{k,n}`.
    pub fn eigenvalue(&self) -> f64 {
        let k = f64::from(self.k);
        k * (k + f64::from(self.n) - 1.0)
    }
}

pub(crate) fn check_unit_interval(t: f64) -> Result<f64> {
    if !t.is_finite() || t.abs() > 1.0 + DOMAIN_SLACK {
        return Err(Error::Domain {
            what: "t",
            value: t,
            domain: "[-1, 1]",
        });
    }
    Ok(t.clamp(-1.0, 1.0))
}

/// `P_{k,n+1}(t)`, the zonal harmonic normalized to 1 at `t = 1`.
pub fn legendre_normalized(idx: ZonalIndex, t: f64) -> Result<f64> {
    let t = check_unit_interval(t)?;
    let v = legendre_recurrence(idx.n, idx.k, t);
    if !v.is_finite() {
        return Err(Error::Overflow("legendre_normalized"));
    }
    Ok(v)
}

#[inline]
pub(crate) fn legendre_recurrence(n: u32, k: u32, t: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let shift = f64::from(n) - 1.0;
    let mut prev = 1.0;
    let mut cur = t;
    for j in 1..k {
        let j = f64::from(j);
        let tc = t * cur;
        let next = tc + j / (j + shift) * (tc - prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `r_{k,n} = binom(k + n/2 - 1, k) = Γ(k + n/2) / (k! Γ(n/2))`.
pub fn gegenbauer_norm_constant(idx: ZonalIndex) -> f64 {
    let half_n = f64::from(idx.n) / 2.0;
    let k = f64::from(idx.k);
    if idx.k == 0 {
        return 1.0;
    }
    (ln_gamma(k + half_n) - ln_gamma(k + 1.0) - ln_gamma(half_n)).exp()
}

/// Jacobi polynomial `P_k^{(n/2-1, n/2-1)}(t) = r_{k,n} P_{k,n+1}(t)`.
pub fn gegenbauer_jacobi(idx: ZonalIndex, t: f64) -> Result<f64> {
    Ok(gegenbauer_norm_constant(idx) * legendre_normalized(idx, t)?)
}

fn binomial(top: u64, bottom: u64) -> Option<u128> {
    if bottom > top {
        return Some(0);
    }
    let bottom = bottom.min(top - bottom);
    let mut acc: u128 = 1;
    for i in 0..bottom {
        // acc * (top - i) is divisible by (i + 1) at every step.
        acc = acc.checked_mul(u128::from(top - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// `N_{k,n} = dim V_{k,n}`, exact.
pub fn dim_eigenspace(idx: ZonalIndex) -> Result<u128> {
    let (n, k) = (u64::from(idx.n), u64::from(idx.k));
    match k {
        0 => Ok(1),
        1 => Ok(u128::from(n) + 1),
        _ => {
            let hi = binomial(k + n, n).ok_or(Error::Overflow("dim_eigenspace"))?;
            let lo = binomial(k + n - 2, n).ok_or(Error::Overflow("dim_eigenspace"))?;
            Ok(hi - lo)
        }
    }
}

/// Surface measure of the unit sphere `S^m ⊂ R^{m+1}`.
/// Small `m` use `vol(S^m) = 2π/(m-1) vol(S^{m-2})`, which keeps
/// `vol(S^0) = 2` and `vol(S^1) = 2π` exact; large `m` go through `ln Γ`.
pub fn vol_sphere(m: u32) -> f64 {
    if m < 64 {
        let mut v = if m % 2 == 0 { 2.0 } else { 2.0 * PI };
        let mut j = 2 + m % 2;
        while j <= m {
            v *= 2.0 * PI / f64::from(j - 1);
            j += 2;
        }
        return v;
    }
    let a = (f64::from(m) + 1.0) / 2.0;
    2.0 * (a * PI.ln() - ln_gamma(a)).exp()
}

/// Kernel of the orthogonal projector onto `V_{k,n}` at `q·q' = t`.
pub fn projector_kernel(idx: ZonalIndex, t: f64) -> Result<f64> {
    let dim = dim_eigenspace(idx)? as f64;
    Ok(dim / vol_sphere(idx.n) * legendre_normalized(idx, t)?)
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn bounded_and_normalized(n in 1u32..9, k in 0u32..400, t in -1.0f64..=1.0) {
            let idx = ZonalIndex::new(n, k).unwrap();
            prop_assert!(legendre_normalized(idx, t).unwrap().abs() <= 1.0 + 1e-10);
            prop_assert_eq!(legendre_normalized(idx, 1.0).unwrap(), 1.0);
        }

        #[test]
        fn parity(n in 1u32..9, k in 0u32..300, t in -1.0f64..=1.0) {
            let idx = ZonalIndex::new(n, k).unwrap();
            let a = legendre_normalized(idx, t).unwrap();
            let b = legendre_normalized(idx, -t).unwrap();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((b - sign * a).abs() <= 1e-10 * a.abs().max(1e-300) + 1e-15);
        }
    }
}
