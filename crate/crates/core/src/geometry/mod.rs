//! The Fermat cone `zᵗz = 0`, its circle bundles `X_r`, and Szegő kernels.
//!
//! `X_√2` is identified with the frames `(q, p)` through `q + ip`. Its
//! `O(n+1)`-invariant volume form `d'V` has total mass
//! `√2 · vol(S^n) · vol(S^{n-1})`: the frame manifold fibers over `S^n` with
//! fiber `S^{n-1}`, and the embedding stretches the horizontal directions by
//! `√2`. Hardy-space inner products use `dV = d'V / 2π`.

pub mod cone;
pub mod frame;
pub mod pushforward;
pub mod szego;

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::rng::{blocks, SeedStream};
use crate::special::vol_sphere;

pub use cone::{build_cone_basis, monomial_basis, validate_cone_basis, ConeBasis, GramCheck};
pub use frame::{
    fubini_study_distance, geodesic_lift, hlc_offset, s_plus_minus, sample_frame, sample_unit_vector, ComplexPoint,
    FramePoint,
};
pub use pushforward::{
    c_constant_numeric, fiber_integrals, fiber_rule, pushforward_kernel, pushforward_kernel_with, CConstantConfig,
    CConstantEstimate, PushForward,
};
pub use szego::{offdiagonal_decay_probe, DecayReport, SzegoEvaluator};

/// Total `d'V` mass of `X_r ⊂ C^{n+1}`: `r^{2n-1} 2^{1-n} vol(S^n) vol(S^{n-1})`.
pub fn x_mass(n: u32, r: f64) -> f64 {
    r.powi(2 * n as i32 - 1) * 2f64.powi(1 - n as i32) * vol_sphere(n) * vol_sphere(n - 1)
}

/// Total `dV = d'V/2π` mass of `X_r`.
pub fn hardy_mass(n: u32, r: f64) -> f64 {
    x_mass(n, r) / (2.0 * PI)
}

/// Running sums of `f` and `f²` over a Monte Carlo block.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Moments {
    pub sum: f64,
    pub sum_sq: f64,
    pub count: usize,
}

impl Moments {
    pub fn push(&mut self, v: f64) {
        self.sum += v;
        self.sum_sq += v * v;
        self.count += 1;
    }

    pub fn merge(&mut self, o: &Self) {
        self.sum += o.sum;
        self.sum_sq += o.sum_sq;
        self.count += o.count;
    }

    pub fn mean(&self) -> f64 {
        self.sum / self.count as f64
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        let m = self.count as f64;
        let var = ((self.sum_sq - self.sum * self.sum / m) / (m - 1.0)).max(0.0);
        (var / m).sqrt()
    }
}

/// Haar average over frames of `½ (f(q + ip) + f(q − ip))`, reproducible for a
/// given stream and sample count at any thread count.
pub(crate) fn frame_average<F>(n: u32, samples: usize, stream: SeedStream, f: F) -> Moments
where
    F: Fn(&[Complex64]) -> f64 + Sync,
{
    let d = n as usize + 1;
    let parts: Vec<Moments> = blocks(samples)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(b, len)| {
            let mut rng = stream.block_rng(b);
            let mut acc = Moments::default();
            let mut z = vec![Complex64::new(0.0, 0.0); d];
            for _ in 0..len {
                let (q, p) = frame::sample_frame_raw(d, &mut rng);
                for (zi, (a, b)) in z.iter_mut().zip(q.iter().zip(&p)) {
                    *zi = Complex64::new(*a, *b);
                }
                let v1 = f(&z);
                z.iter_mut().for_each(|c| *c = c.conj());
                acc.push(0.5 * (v1 + f(&z)));
            }
            acc
        })
        .collect();
    let mut total = Moments::default();
    for p in &parts {
        total.merge(p);
    }
    total
}
