use std::f64::consts::PI;

use proptest::prelude::*;
use zonal_core::geometry::{fubini_study_distance, FramePoint};
use zonal_core::linalg::{dot, orthonormal_complement};
use zonal_core::quadrature::SphereRule;
use zonal_core::{
    dim_eigenspace, legendre_leading, legendre_normalized, monomial_basis, projector_kernel, projector_leading,
    ZonalIndex,
};

fn idx(n: u32, k: u32) -> ZonalIndex {
    ZonalIndex::new(n, k).unwrap()
}

/// Applies the projector kernel as an integral operator by quadrature.
fn apply_projector(id: ZonalIndex, rule: &SphereRule, f: &[f64], at: &[f64]) -> f64 {
    rule.iter()
        .zip(f)
        .map(|((y, w), fy)| w * projector_kernel(id, dot(at, y).clamp(-1.0, 1.0)).unwrap() * fy)
        .sum()
}

#[test]
fn projector_is_idempotent_on_s2_and_s3() {
    for (n, k) in [(2u32, 3u32), (2, 6), (3, 4)] {
        let id = idx(n, k);
        let rule = SphereRule::for_degree(n as usize, 2 * k as usize + 8).unwrap();
        let pts: Vec<Vec<f64>> = rule.iter().map(|(p, _)| p.to_vec()).collect();
        // smooth polynomial test function of degree 8
        let g: Vec<f64> = pts
            .iter()
            .map(|p| (0.3 + p[0] - 0.7 * p[1] * p[n as usize]).powi(4) + p[1].powi(3))
            .collect();
        let pg: Vec<f64> = pts.iter().map(|q| apply_projector(id, &rule, &g, q)).collect();
        let scale = pg.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(scale > 1e-6, "test function has no degree-{k} part");
        for (q, v) in pts.iter().zip(&pg).step_by(37) {
            let ppg = apply_projector(id, &rule, &pg, q);
            assert!((ppg - v).abs() < 1e-10 * scale, "n={n} k={k}: {ppg} vs {v}");
        }
    }
}

#[test]
fn only_the_two_geodesic_lifts_meet_both_fibers() {
    let q0 = [1.0, 0.0, 0.0];
    let p0 = [0.0, 1.0, 0.0];
    let e = [0.0, 0.0, 1.0];
    let th1 = 1.1f64;
    let q1 = [th1.cos(), th1.sin(), 0.0];
    let p1 = [-th1.sin(), th1.cos(), 0.0];
    let grid = 360;
    let step = 2.0 * PI / grid as f64;
    let mut hits = Vec::new();
    for i in 0..grid {
        let a = step * i as f64;
        let p: Vec<f64> = (0..3).map(|j| a.cos() * p0[j] + a.sin() * e[j]).collect();
        let z0 = FramePoint::new(q0.to_vec(), p).unwrap().embed();
        for j in 0..grid {
            let b = step * j as f64;
            let pp: Vec<f64> = (0..3).map(|c| b.cos() * p1[c] + b.sin() * e[c]).collect();
            let z1 = FramePoint::new(q1.to_vec(), pp).unwrap().embed();
            let d = fubini_study_distance(&z0, &z1).unwrap();
            if d < 0.02 {
                hits.push((i, j, d));
            }
        }
    }
    assert!(!hits.is_empty());
    for &(i, j, d) in &hits {
        let near = |x: usize, c: usize| (x as i64 - c as i64).abs() <= 3;
        assert!(
            (near(i, 0) || near(i, grid)) && (near(j, 0) || near(j, grid)) || near(i, grid / 2) && near(j, grid / 2),
            "unexpected near-coincidence at ({i}, {j}), distance {d}"
        );
    }
    for (i, j) in [(0, 0), (grid / 2, grid / 2)] {
        assert!(hits.iter().any(|&(a, b, d)| a == i && b == j && d < 1e-7));
    }
}

#[test]
fn complement_frames_from_random_directions() {
    let q = [0.2, -0.4, 0.4, 0.8];
    let c = orthonormal_complement(&q).unwrap();
    for u in &c {
        assert!(dot(u, &q).abs() < 1e-15);
    }
}

#[test]
fn monomial_counts_match_dimension_formula() {
    for n in 1..=5 {
        for k in 0..=20 {
            assert_eq!(monomial_basis(idx(n, k)).len() as u128, dim_eigenspace(idx(n, k)).unwrap());
        }
    }
}

proptest! {
    #[test]
    fn normalization_and_boundedness(n in 1u32..12, k in 0u32..3000, t in -1.0f64..=1.0) {
        prop_assert_eq!(legendre_normalized(idx(n, k), 1.0).unwrap(), 1.0);
        prop_assert!(legendre_normalized(idx(n, k), t).unwrap().abs() <= 1.0 + 1e-10);
    }

    #[test]
    fn leading_terms_agree_in_sign(n in 1u32..6, k in 64u32..5000, th in 0.02f64..3.12) {
        let a = projector_leading(idx(n, k), th).unwrap();
        let scale = dim_eigenspace(idx(n, k)).unwrap() as f64 / zonal_core::vol_sphere(n);
        let b = scale * legendre_leading(idx(n, k), th).unwrap().value;
        prop_assert!(a.value * b >= 0.0);
    }
}
