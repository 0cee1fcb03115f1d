//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use rand::Rng;
use std::f64::consts::{PI, SQRT_2};
use std::time::{Duration, Instant};

use zonal_core::asymptotics::{gaussian_coefficient_numeric, gaussian_leading_coefficient, AngleWindow};
use zonal_core::geometry::{
    build_cone_basis, fiber_integrals, fiber_rule, offdiagonal_decay_probe, sample_frame, sample_unit_vector,
    SzegoEvaluator,
};
use zonal_core::harness::oracle::decay_probe_pair;
use zonal_core::harness::{
    bracket_rows, c_constant_convergence, fit_error_scaling, geometric_degrees, relative_bracket_error, run_oracle,
    OracleConfig, ScalingOutcome, DEFAULT_THETA_GRID,
};
use zonal_core::{
    c_constant_numeric, dim_eigenspace, legendre_normalized, projector_kernel, vol_sphere, CConstantConfig, Complex64,
    SeedStream, ZonalIndex,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn idx(n: u32, k: u32) -> ZonalIndex {
    ZonalIndex::new(n, k).unwrap()
}

fn c1_chebyshev() -> Outcome {
    let mut rng = SeedStream::new(101).rng();
    let thetas: Vec<f64> = (0..100).map(|_| rng.random_range(0.01..PI - 0.01)).collect();
    let mut worst = 0.0f64;
    for k in 1..=1000 {
        for &th in &thetas {
            let v = legendre_normalized(idx(1, k), th.cos()).unwrap();
            worst = worst.max((v - (k as f64 * th).cos()).abs());
        }
    }
    Outcome {
        pass: worst < 1e-10,
        detail: format!("max |P_k,2(cos θ) − cos kθ| = {worst:.3e} (< 1e-10)"),
    }
}

fn c2_laplace() -> Outcome {
    let w = AngleWindow::new(1.0, 0.0).unwrap();
    let e1 = relative_bracket_error(idx(2, 1024), &w, DEFAULT_THETA_GRID).unwrap();
    let e4 = relative_bracket_error(idx(2, 4096), &w, DEFAULT_THETA_GRID).unwrap();
    Outcome {
        pass: e1 < 0.01 && e4 < e1,
        detail: format!("error(k=1024) = {e1:.3e} (< 0.01), error(k=4096) = {e4:.3e} (smaller)"),
    }
}

fn c3_scaling() -> Outcome {
    let w = AngleWindow::new(1.0, 0.0).unwrap();
    let ks = geometric_degrees(64, 4096);
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [2u32, 3] {
        match fit_error_scaling(n, &ks, &w, DEFAULT_THETA_GRID) {
            Ok(ScalingOutcome::Fit(f)) => {
                pass &= (-1.25..=-0.75).contains(&f.slope) && f.r_squared > 0.95;
                parts.push(format!("n={n}: slope {:.4}, r² {:.5}", f.slope, f.r_squared));
            }
            other => {
                pass = false;
                parts.push(format!("n={n}: {other:?}"));
            }
        }
    }
    Outcome {
        pass,
        detail: parts.join("; "),
    }
}

fn c4_gaussian() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=4 {
        for th in [0.3, 1.0, PI / 2.0, 2.5] {
            let a = gaussian_coefficient_numeric(n, th).unwrap();
            let b = gaussian_leading_coefficient(n, th).unwrap();
            worst = worst.max((a - b).norm());
        }
    }
    Outcome {
        pass: worst < 1e-6,
        detail: format!("max |numeric − closed form| = {worst:.3e} (< 1e-6)"),
    }
}

fn c5_pushforward() -> Outcome {
    let run = |samples| {
        let mut cfg = OracleConfig::new(2, vec![2, 4, 6, 8], samples, 2024);
        cfg.decay_ks.clear();
        run_oracle(&cfg).unwrap()
    };
    let base = run(1_000_000);
    let quad = run(4_000_000);
    let mut pass = true;
    let mut parts = Vec::new();
    for (a, b) in base.entries.iter().zip(&quad.entries) {
        pass &= a.residual < 0.05 && b.residual < a.residual;
        parts.push(format!("k={}: {:.4} -> {:.4}", a.k, a.residual, b.residual));
    }
    Outcome {
        pass,
        detail: format!("residual 1e6 -> 4e6 samples: {}", parts.join(", ")),
    }
}

fn c6_c_constant() -> Outcome {
    let rows = c_constant_convergence(2, &[4, 8, 12], 1_000_000, 2024).unwrap();
    let last = rows.last().unwrap();
    let scaled: Vec<f64> = rows.iter().map(|r| (r.ratio - 1.0).abs() * r.k as f64).collect();
    let bounded = scaled.iter().all(|&s| s < 1.0);
    let pass = (last.ratio - 1.0).abs() < 0.05 && bounded;
    let table: Vec<String> = rows
        .iter()
        .zip(&scaled)
        .map(|(r, s)| format!("k={}: ratio {:.4} ± {:.4}, |r−1|k = {:.3}", r.k, r.ratio, r.ratio_stderr, s))
        .collect();
    Outcome {
        pass,
        detail: table.join("; "),
    }
}

fn c7_structure() -> Outcome {
    let mut failures = Vec::new();
    let stream = SeedStream::new(77);
    let mut rng = SeedStream::new(78).rng();

    for (n, k) in [(2u32, 5u32), (3, 3)] {
        let basis = build_cone_basis(idx(n, k), 200_000, stream).unwrap();
        let ev = SzegoEvaluator::new(basis, 1.0).unwrap();
        let ev_big = ev.at_radius(SQRT_2).unwrap();
        let ev_small = ev.at_radius(0.7).unwrap();
        let (mut herm, mut conj, mut equi, mut homog) = (true, true, 0.0f64, 0.0f64);
        for _ in 0..100 {
            let x = sample_frame(n as usize, &mut rng).unwrap().to_x1();
            let y = sample_frame(n as usize, &mut rng).unwrap().to_x1();
            let v = ev.eval(&x, &y).unwrap();
            herm &= v == ev.eval(&y, &x).unwrap().conj();
            conj &= ev.eval(&x.conj(), &y.conj()).unwrap() == v.conj();
            let phi: f64 = rng.random_range(0.0..2.0 * PI);
            let r = ev.eval(&x.rotate(phi), &y).unwrap();
            equi = equi.max((r - v * Complex64::from_polar(1.0, k as f64 * phi)).norm() / (1.0 + v.norm()));
            for (e, r) in [(&ev_big, SQRT_2), (&ev_small, 0.7)] {
                let h = e.eval(&x.scale(r), &y.scale(r)).unwrap();
                let want = v * r.powi(1 - 2 * n as i32);
                homog = homog.max((h - want).norm() / (1.0 + want.norm()));
            }
        }
        if !herm {
            failures.push(format!("Hermitian symmetry n={n}"));
        }
        if !conj {
            failures.push(format!("conjugation n={n}"));
        }
        if equi > 1e-12 {
            failures.push(format!("S¹ equivariance n={n}: {equi:e}"));
        }
        if homog > 1e-12 {
            failures.push(format!("homogeneity n={n}: {homog:e}"));
        }
    }

    let mut parity = 0.0f64;
    for _ in 0..100 {
        let n = rng.random_range(1..8u32);
        let k = rng.random_range(0..500u32);
        let t: f64 = rng.random_range(-1.0..1.0);
        let a = legendre_normalized(idx(n, k), -t).unwrap();
        let b = legendre_normalized(idx(n, k), t).unwrap();
        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
        parity = parity.max((a - s * b).abs() / b.abs().max(1e-300).max(1e-10));
    }
    if parity > 1e-10 {
        failures.push(format!("parity: {parity:e}"));
    }

    // P_{k,n}(q, q) = N_{k,n}/vol(S^n), directly and through the push-forward.
    let k = 4;
    let basis = build_cone_basis(idx(2, k), 1_000_000, stream).unwrap();
    let ev = SzegoEvaluator::new(basis, SQRT_2).unwrap();
    let c = c_constant_numeric(idx(2, k), &CConstantConfig::new(1_000_000), stream).unwrap().value;
    let rule = fiber_rule(idx(2, k), None).unwrap();
    let density = dim_eigenspace(idx(2, k)).unwrap() as f64 / vol_sphere(2);
    let mut diag_err = 0.0f64;
    let mut direct_err = 0.0f64;
    for _ in 0..100 {
        let q = sample_unit_vector(3, &mut rng);
        let a = fiber_integrals(&ev, &q, &rule).unwrap();
        let pf: f64 = ev.prefactor() * a.iter().map(|z| z.norm_sqr()).sum::<f64>();
        diag_err = diag_err.max((pf / (c * c) / density - 1.0).abs());
        let n = rng.random_range(1..7u32);
        let kk = rng.random_range(0..200u32);
        let direct = projector_kernel(idx(n, kk), 1.0).unwrap();
        let want = dim_eigenspace(idx(n, kk)).unwrap() as f64 / vol_sphere(n);
        direct_err = direct_err.max((direct / want - 1.0).abs());
    }
    if diag_err > 0.05 {
        failures.push(format!("diagonal via push-forward: {diag_err:e}"));
    }
    if direct_err > 1e-15 {
        failures.push(format!("diagonal direct: {direct_err:e}"));
    }

    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("100 instances each; push-forward diagonal max rel dev {diag_err:.4}")
        } else {
            failures.join("; ")
        },
    }
}

fn c8_decay() -> Outcome {
    let stream = SeedStream::new(2024);
    let evs: Vec<SzegoEvaluator> = (2..=12)
        .map(|k| SzegoEvaluator::new(build_cone_basis(idx(2, k), 1_000_000, stream).unwrap(), 1.0).unwrap())
        .collect();
    let (x, y) = decay_probe_pair(2);
    let r = offdiagonal_decay_probe(&evs, &x, &y, 0.5).unwrap();
    let vals: Vec<String> = r
        .normalized
        .iter()
        .zip(&r.below_floor)
        .map(|(v, b)| if *b { format!("{v:.4}*") } else { format!("{v:.4}") })
        .collect();
    Outcome {
        pass: r.strictly_decreasing && r.distance >= 0.5,
        detail: format!(
            "distance {:.3}, normalized |Π| k=2..12: [{}] (* below floor), rate {:.3}",
            r.distance,
            vals.join(", "),
            r.decay_rate.unwrap_or(f64::NAN)
        ),
    }
}

fn c9_determinism() -> Outcome {
    let produce = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                let mut cfg = OracleConfig::new(2, vec![2, 5], 150_000, 99);
                cfg.decay_ks = vec![2, 3, 4];
                cfg.pairs = 4;
                let oracle = serde_json::to_string(&run_oracle(&cfg).unwrap()).unwrap();
                let w = AngleWindow::new(1.0, 0.05).unwrap();
                let rows: String = bracket_rows(idx(3, 200), &w, 64)
                    .unwrap()
                    .iter()
                    .map(|r| r.csv_line() + "\n")
                    .collect();
                let fit = serde_json::to_string(&fit_error_scaling(2, &geometric_degrees(64, 1024), &w, 128).unwrap())
                    .unwrap();
                let basis = build_cone_basis(idx(3, 4), 120_000, SeedStream::new(5)).unwrap().to_json().unwrap();
                format!("{oracle}\n{rows}\n{fit}\n{basis}")
            })
    };
    let a = produce(1);
    let b = produce(4);
    let c = produce(3);
    Outcome {
        pass: a == b && b == c,
        detail: format!("{} bytes compared across 1, 3 and 4 threads", a.len()),
    }
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 Chebyshev exactness", c1_chebyshev, Duration::from_secs(1)),
        ("2 Laplace accuracy", c2_laplace, Duration::from_secs(5)),
        ("3 error-scaling slope", c3_scaling, Duration::from_secs(30)),
        ("4 Gaussian coefficient", c4_gaussian, Duration::from_secs(1)),
        ("5 push-forward oracle", c5_pushforward, Duration::from_secs(300)),
        ("6 C-constant convergence", c6_c_constant, Duration::from_secs(180)),
        ("7 structural identities", c7_structure, Duration::from_secs(60)),
        ("8 off-diagonal decay", c8_decay, Duration::from_secs(120)),
        ("9 determinism", c9_determinism, Duration::from_secs(600)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, f, budget) in criteria {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let on_time = took <= budget;
        let pass = out.pass && on_time;
        if !pass {
            failed += 1;
        }
        println!(
            "[{}] criterion {name}: {} ({:.2}s, budget {}s)",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
