//! Monte Carlo oracle runs: push-forward of the Szegő kernel against the
//! projector, the conformal factor `C_{k,n}`, and the off-diagonal decay probe.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;

use super::SCHEMA_VERSION;
use crate::asymptotics::c_constant_leading;
use crate::error::{Error, Result};
use crate::geometry::{
    build_cone_basis, c_constant_numeric, fiber_integrals, fiber_rule, offdiagonal_decay_probe, sample_unit_vector,
    CConstantConfig, ComplexPoint, ConeBasis, DecayReport, SzegoEvaluator,
};
use crate::rng::SeedStream;
use crate::special::{dim_eigenspace, projector_kernel, vol_sphere, ZonalIndex};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub n: u32,
    pub ks: Vec<u32>,
    pub samples: usize,
    pub pairs: usize,
    pub seed: u64,
    /// Degrees for the decay probe; empty skips it.
    pub decay_ks: Vec<u32>,
}

impl OracleConfig {
    pub fn new(n: u32, ks: Vec<u32>, samples: usize, seed: u64) -> Self {
        Self {
            n,
            ks,
            samples,
            pairs: 20,
            seed,
            decay_ks: (2..=12).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleEntry {
    pub k: u32,
    pub gram_stderr: f64,
    /// `max |pushforward − C² projector| / max |pushforward|` over the pairs.
    pub residual: f64,
    /// `max |Im pushforward| / max |Re pushforward|`.
    pub imag_ratio: f64,
    /// `pushforward(q, q) / C²` divided by `N_{k,n} / vol(S^n)`, averaged over the pairs.
    pub diagonal_ratio: f64,
    pub c_numeric: f64,
    pub c_stderr: f64,
    pub c_leading: f64,
    pub c_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub schema_version: u32,
    pub seed: u64,
    pub samples: usize,
    pub n: u32,
    pub pairs: usize,
    pub entries: Vec<OracleEntry>,
    pub decay: Option<DecayReport>,
}

/// Point pair on `X_1` with `|⟨x, x'⟩| = 0.8`, i.e. fiber distance `sqrt(0.4)`.
pub fn decay_probe_pair(n: u32) -> (ComplexPoint, ComplexPoint) {
    let d = n as usize + 1;
    let mut x = vec![Complex64::new(0.0, 0.0); d];
    x[0] = Complex64::new(1.0, 0.0);
    x[1] = Complex64::new(0.0, 1.0);
    let (c, s) = (0.6, 0.8);
    let mut y = vec![Complex64::new(0.0, 0.0); d];
    y[0] = Complex64::new(c, 0.0);
    y[1] = Complex64::new(0.0, 1.0);
    y[2] = Complex64::new(s, 0.0);
    (
        ComplexPoint::new(x).scale(1.0 / SQRT_2),
        ComplexPoint::new(y).scale(1.0 / SQRT_2),
    )
}

fn check_config(cfg: &OracleConfig) -> Result<()> {
    if !(2..=3).contains(&cfg.n) {
        return Err(Error::Unsupported(format!("oracle supports n in {{2, 3}}, got {}", cfg.n)));
    }
    if let Some(k) = cfg.ks.iter().chain(&cfg.decay_ks).find(|&&k| k > 12) {
        return Err(Error::Unsupported(format!("oracle supports k <= 12, got {k}")));
    }
    if cfg.pairs == 0 {
        return Err(Error::InvalidParameter("pairs must be positive".into()));
    }
    Ok(())
}

/// Runs every oracle check for `cfg`. Output depends only on `cfg`.
pub fn run_oracle(cfg: &OracleConfig) -> Result<OracleReport> {
    check_config(cfg)?;
    let stream = SeedStream::new(cfg.seed);
    let mut bases: BTreeMap<u32, ConeBasis> = BTreeMap::new();
    for &k in cfg.ks.iter().chain(&cfg.decay_ks) {
        if let std::collections::btree_map::Entry::Vacant(e) = bases.entry(k) {
            e.insert(build_cone_basis(ZonalIndex::new(cfg.n, k)?, cfg.samples, stream)?);
        }
    }

    let mut rng = stream.derive("pairs").rng();
    let d = cfg.n as usize + 1;
    let pairs: Vec<(Vec<f64>, Vec<f64>)> = (0..cfg.pairs)
        .map(|_| (sample_unit_vector(d, &mut rng), sample_unit_vector(d, &mut rng)))
        .collect();

    let mut entries = Vec::new();
    for &k in &cfg.ks {
        let idx = ZonalIndex::new(cfg.n, k)?;
        let ev = SzegoEvaluator::new(bases[&k].clone(), SQRT_2)?;
        let c = c_constant_numeric(idx, &CConstantConfig::new(cfg.samples), stream)?;
        let c2 = c.value * c.value;
        let rule = fiber_rule(idx, None)?;
        let pref = ev.prefactor();
        let (mut max_pf, mut max_res, mut max_im) = (0.0f64, 0.0f64, 0.0f64);
        let mut diag = 0.0;
        for (q0, q1) in &pairs {
            let a0 = fiber_integrals(&ev, q0, &rule)?;
            let a1 = fiber_integrals(&ev, q1, &rule)?;
            let pf = pref * crate::geometry::szego::pair_sum(&a0, &a1);
            let t: f64 = q0.iter().zip(q1).map(|(a, b)| a * b).sum();
            let proj = c2 * projector_kernel(idx, t.clamp(-1.0, 1.0))?;
            max_pf = max_pf.max(pf.re.abs());
            max_res = max_res.max((pf.re - proj).abs());
            max_im = max_im.max(pf.im.abs());
            diag += pref * crate::geometry::szego::pair_sum(&a0, &a0).re / c2;
        }
        let density = dim_eigenspace(idx)? as f64 / vol_sphere(cfg.n);
        let lead = c_constant_leading(idx).ok();
        entries.push(OracleEntry {
            k,
            gram_stderr: ev.basis().gram_stderr(),
            residual: max_res / max_pf,
            imag_ratio: max_im / max_pf,
            diagonal_ratio: diag / cfg.pairs as f64 / density,
            c_numeric: c.value,
            c_stderr: c.stderr,
            c_leading: lead.unwrap_or(f64::NAN),
            c_ratio: lead.map_or(f64::NAN, |l| c.value / l),
        });
    }

    let decay = if cfg.decay_ks.is_empty() {
        None
    } else {
        let evs = cfg
            .decay_ks
            .iter()
            .map(|k| SzegoEvaluator::new(bases[k].clone(), 1.0))
            .collect::<Result<Vec<_>>>()?;
        let (x, y) = decay_probe_pair(cfg.n);
        Some(offdiagonal_decay_probe(&evs, &x, &y, 0.5)?)
    };

    Ok(OracleReport {
        schema_version: SCHEMA_VERSION,
        seed: cfg.seed,
        samples: cfg.samples,
        n: cfg.n,
        pairs: cfg.pairs,
        entries,
        decay,
    })
}

/// One row of the `C_{k,n}` convergence table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CRatioRow {
    pub k: u32,
    pub numeric: f64,
    pub stderr: f64,
    pub leading: f64,
    pub ratio: f64,
    pub ratio_stderr: f64,
}

/// `c_constant_numeric / c_constant_leading` for each `k`.
pub fn c_constant_convergence(n: u32, ks: &[u32], samples: usize, seed: u64) -> Result<Vec<CRatioRow>> {
    let stream = SeedStream::new(seed);
    ks.iter()
        .map(|&k| {
            let idx = ZonalIndex::new(n, k)?;
            let c = c_constant_numeric(idx, &CConstantConfig::new(samples), stream)?;
            let leading = c_constant_leading(idx)?;
            Ok(CRatioRow {
                k,
                numeric: c.value,
                stderr: c.stderr,
                leading,
                ratio: c.value / leading,
                ratio_stderr: c.stderr / leading,
            })
        })
        .collect()
}
