//! Zonal spherical harmonics on `S^n`, their leading asymptotics, and
//! Monte Carlo Szegő-kernel oracles on the Fermat quadric cone.
//!
//! Shared types are re-exported at the crate root.

pub mod asymptotics;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod linalg;
pub mod quadrature;
pub mod rng;
pub mod special;

pub use asymptotics::{
    c_constant_leading, gaussian_coefficient_numeric, gaussian_leading_coefficient, gegenbauer_leading,
    legendre_leading, phase_alpha, projector_leading, psi2, psi2_real, window_contains, AngleWindow, AsymptoticValue,
};
pub use error::{Error, Result};
pub use geometry::{
    build_cone_basis, c_constant_numeric, fubini_study_distance, geodesic_lift, hlc_offset, monomial_basis,
    offdiagonal_decay_probe, pushforward_kernel, s_plus_minus, sample_frame, CConstantConfig, CConstantEstimate,
    ComplexPoint, ConeBasis, DecayReport, FramePoint, PushForward, SzegoEvaluator,
};
pub use harness::{
    crossover_benchmark, fit_error_scaling, relative_bracket_error, CompareRow, CrossoverReport, OracleConfig,
    OracleReport, ScalingFit, ScalingOutcome,
};
pub use num_complex::Complex64;
pub use rng::{SeedStream, DEFAULT_SEED};
pub use special::{
    dim_eigenspace, gegenbauer_jacobi, gegenbauer_norm_constant, legendre_normalized, projector_kernel, vol_sphere,
    ZonalIndex,
};
