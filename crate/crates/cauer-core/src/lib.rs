//! Cauer-type RC ladder networks and their diffusion-equation twins.
//!
//! The crate synthesizes truncated (including fractal/geometric) RC
//! ladders, evaluates their driving-point transfer functions through
//! complex continued fractions, maps ladders bidirectionally onto
//! space-discretized diffusion equations with exponential coefficients,
//! and quantifies power-law frequency behavior against the closed-form
//! exponent `n(sigma, rho) = ln(sigma)/ln(sigma rho)`.
//!
//! Everything here is pure computation over immutable inputs: values are
//! safe to share across threads and the crate builds without `std`
//! (`alloc` is required).
//!
//! ```
//! use cauer_core::{generate_fractal, transfer_cf, FractalParams};
//! use num_complex::Complex64;
//!
//! let params = FractalParams::new(1.0, 1.0, 2.0, 2.0, 3).unwrap();
//! let ladder = generate_fractal(&params).unwrap();
//! let h = transfer_cf(&ladder, Complex64::new(0.0, 1.0)).unwrap();
//! assert!(h.re > 0.0);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod confrac;
pub mod error;
pub mod fracfit;
pub mod ladder;
pub mod pde;
pub mod transfer;

pub use confrac::{eval_cf, nest_cf, scale_cf_head, CfTerms, DENOMINATOR_FLOOR};
pub use error::{Error, Result};
pub use fracfit::{
    auto_band, check_identification_system, exponent_report, fit_power_law, predict_exponent,
    FitReport, DEFAULT_MIN_G,
};
pub use ladder::{
    generate_fractal, ladder_from_profile, profile_from_ladder, scaling_lambda, DiffusionProfile,
    FractalParams, LadderSpec, ScalingFunction, GEOMETRIC_RATIO_TOL,
};
pub use pde::{assemble, input_admittance, solve, DiscreteDiffusionSystem};
pub use transfer::{
    base_impedance, bode_sweep, functional_residual, g_eval, g_eval_converged,
    simplified_residual, transfer_cf, transfer_fractal, transfer_recursive, transfer_via_g,
    BodeTable, Convergence, FrequencyPoint, SimplifiedRelation, SweepDiagnostic, SweepGrid,
};
