//! Fiber integration `ν_*` from `X_√2` to `S^n` and the conformal factor
//! `C_{k,n}` with `‖ν_* s‖ = C_{k,n} ‖s‖`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::SQRT_2;

use super::szego::{pair_sum, SzegoEvaluator};
use super::{frame_average, hardy_mass};
use crate::error::{Error, Result};
use crate::linalg::{norm, orthonormal_complement};
use crate::quadrature::SphereRule;
use crate::rng::SeedStream;
use crate::special::ZonalIndex;

/// Real and imaginary parts of a push-forward value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PushForward {
    pub re: f64,
    pub im: f64,
}

fn check_n(n: u32) -> Result<()> {
    if (2..=3).contains(&n) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("push-forward quadrature supports n in {{2, 3}}, got {n}")))
    }
}

/// Quadrature rule on the fiber sphere `S^{n-1}`: `4k + 8` circle nodes for
/// `n = 2`, a product rule of order `2k + 6` on `S^2` for `n = 3`. A larger
/// `nodes` may be requested; a smaller one is rejected.
pub fn fiber_rule(idx: ZonalIndex, nodes: Option<usize>) -> Result<SphereRule> {
    check_n(idx.n())?;
    let k = idx.k() as usize;
    let need = if idx.n() == 2 { 4 * k + 8 } else { 2 * k + 6 };
    let got = nodes.unwrap_or(need);
    if got < need {
        return Err(Error::QuadratureOrder { got, need, k: idx.k() });
    }
    Ok(if idx.n() == 2 {
        SphereRule::circle(got)
    } else {
        SphereRule::s2(got)
    })
}

fn unit(q: &[f64], name: &str) -> Result<()> {
    if (norm(q) - 1.0).abs() > 1e-10 {
        return Err(Error::OffManifold(format!("{name} is not a unit vector (|{name}| = {})", norm(q))));
    }
    Ok(())
}

/// `∫_{S(q^⊥)} f(q + ip) dp` for a vector-valued `f`.
fn fiber_integral<F>(q: &[f64], rule: &SphereRule, len: usize, f: F) -> Result<Vec<Complex64>>
where
    F: Fn(&[Complex64]) -> Vec<Complex64>,
{
    let frame = orthonormal_complement(q)?;
    let mut acc = vec![Complex64::new(0.0, 0.0); len];
    let mut z = vec![Complex64::new(0.0, 0.0); q.len()];
    for (p, (_, w)) in rule.embed(&frame).iter().zip(rule.iter()) {
        for ((zi, a), b) in z.iter_mut().zip(q).zip(p) {
            *zi = Complex64::new(*a, *b);
        }
        for (ai, v) in acc.iter_mut().zip(f(&z)) {
            *ai += w * v;
        }
    }
    Ok(acc)
}

/// `A_j(q) = ∫_{S(q^⊥)} s_j(q + ip) dp` for the orthonormal family of `ev`.
pub fn fiber_integrals(ev: &SzegoEvaluator, q: &[f64], rule: &SphereRule) -> Result<Vec<Complex64>> {
    if q.len() != ev.idx().n() as usize + 1 {
        return Err(Error::Dimension(format!("q has {} coordinates", q.len())));
    }
    unit(q, "q")?;
    fiber_integral(q, rule, ev.basis().len(), |z| ev.basis().values(z))
}

/// `∫∫ Π_{√2,k}(q0 + ip, q1 + ip') dp dp'` over `S(q0^⊥) × S(q1^⊥)` with the
/// default fiber rule.
pub fn pushforward_kernel(ev: &SzegoEvaluator, q0: &[f64], q1: &[f64]) -> Result<PushForward> {
    pushforward_kernel_with(ev, q0, q1, None)
}

/// [`pushforward_kernel`] with an explicit fiber node count.
pub fn pushforward_kernel_with(
    ev: &SzegoEvaluator,
    q0: &[f64],
    q1: &[f64],
    nodes: Option<usize>,
) -> Result<PushForward> {
    if (ev.radius() - SQRT_2).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "push-forward needs the kernel on X_√2, got radius {}",
            ev.radius()
        )));
    }
    let rule = fiber_rule(ev.idx(), nodes)?;
    let a0 = fiber_integrals(ev, q0, &rule)?;
    let a1 = fiber_integrals(ev, q1, &rule)?;
    let v = ev.prefactor() * pair_sum(&a0, &a1);
    Ok(PushForward { re: v.re, im: v.im })
}

/// Settings for [`c_constant_numeric`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CConstantConfig {
    /// Monte Carlo frame draws for `‖s_a‖²`.
    pub samples: usize,
    /// Null vector `a` (`aᵗa = 0`); defaults to `e₁ + i e₂`.
    pub null_vector: Option<Vec<Complex64>>,
}

impl CConstantConfig {
    pub fn new(samples: usize) -> Self {
        Self {
            samples,
            null_vector: None,
        }
    }
}

/// Estimate of `C_{k,n}` from the section `s_a(z) = (aᵗz)^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CConstantEstimate {
    pub value: f64,
    pub stderr: f64,
    /// `‖ν_* s_a‖²_{L²(S^n)}` by quadrature.
    pub pushforward_norm_sqr: f64,
    /// `‖s_a‖²` on `X_√2` by Monte Carlo, with its standard error.
    pub section_norm_sqr: f64,
    pub section_norm_sqr_stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

fn default_null_vector(n: u32) -> Vec<Complex64> {
    let mut a = vec![Complex64::new(0.0, 0.0); n as usize + 1];
    a[0] = Complex64::new(1.0, 0.0);
    a[1] = Complex64::new(0.0, 1.0);
    a
}

#[inline]
fn section(a: &[Complex64], z: &[Complex64], k: u32) -> Complex64 {
    a.iter().zip(z).map(|(x, y)| x * y).sum::<Complex64>().powu(k)
}

/// `C_{k,n} = ‖ν_* s_a‖ / ‖s_a‖` for a null vector `a`.
pub fn c_constant_numeric(idx: ZonalIndex, cfg: &CConstantConfig, stream: SeedStream) -> Result<CConstantEstimate> {
    check_n(idx.n())?;
    if idx.k() > super::cone::MAX_ORACLE_DEGREE {
        return Err(Error::Unsupported(format!("C oracle supports k <= 12, got {}", idx.k())));
    }
    if cfg.samples < 2 {
        return Err(Error::InvalidParameter("C oracle needs at least 2 samples".into()));
    }
    let a = cfg.null_vector.clone().unwrap_or_else(|| default_null_vector(idx.n()));
    if a.len() != idx.n() as usize + 1 {
        return Err(Error::Dimension(format!("null vector has {} coordinates", a.len())));
    }
    let asq: Complex64 = a.iter().map(|c| c * c).sum();
    let anorm: f64 = a.iter().map(|c| c.norm_sqr()).sum();
    if asq.norm() > 1e-12 * anorm || anorm == 0.0 {
        return Err(Error::InvalidParameter(format!("a is not a null vector: aᵗa = {asq}")));
    }
    let k = idx.k();

    // ‖ν_* s_a‖² by an outer rule on S^n exact in degree 2k.
    let outer = SphereRule::for_degree(idx.n() as usize, 2 * k as usize + 5)?;
    let inner = fiber_rule(idx, None)?;
    let cells: Vec<(Vec<f64>, f64)> = outer.iter().map(|(q, w)| (q.to_vec(), w)).collect();
    let terms: Vec<Result<f64>> = cells
        .par_iter()
        .map(|(q, w)| {
            let v = fiber_integral(q, &inner, 1, |z| vec![section(&a, z, k)])?;
            Ok(w * v[0].norm_sqr())
        })
        .collect();
    let mut push = 0.0;
    for t in terms {
        push += t?;
    }

    // ‖s_a‖² on X_√2 with dV = d'V/2π.
    let m = frame_average(idx.n(), cfg.samples, stream.derive_index(u64::from(k)).derive("section"), |z| {
        section(&a, z, k).norm_sqr()
    });
    let mass = hardy_mass(idx.n(), SQRT_2);
    let sec = mass * m.mean();
    let sec_err = mass * m.stderr();
    let value = (push / sec).sqrt();
    Ok(CConstantEstimate {
        value,
        stderr: 0.5 * value * sec_err / sec,
        pushforward_norm_sqr: push,
        section_norm_sqr: sec,
        section_norm_sqr_stderr: sec_err,
        samples: cfg.samples,
        seed: stream.master(),
    })
}
