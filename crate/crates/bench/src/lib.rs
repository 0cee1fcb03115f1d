//! Shared inputs for the benchmarks.

use zonal_core::AngleWindow;

/// Degrees swept by the benchmarks.
pub const DEGREES: [u32; 4] = [64, 256, 1024, 4096];

/// Angles spread over the `C = 1, δ = 0` window at degree `k`.
pub fn window_angles(k: u32, count: usize) -> Vec<f64> {
    let w = AngleWindow::new(1.0, 0.0).expect("valid window");
    let (lo, hi) = w.bounds(k);
    zonal_core::harness::theta_grid(lo, hi, count)
}
