//! Domain types for truncated Cauer RC ladders and the exponential
//! diffusion-coefficient profiles they correspond to, together with the
//! maps between the two pictures.
//!
//! Conventions used throughout the crate:
//!
//! * element values are stored positive (ohms, farads); the coefficient
//!   signs live only inside the maps, where `beta(z) = -beta0 e^{-lambda_r z}`
//!   and `gamma(z) = -gamma0 e^{-lambda_c z}` are strictly negative;
//! * the flux coefficient at grid index `k` belongs to resistor `R(k+1)`,
//!   so `R(1)` covers the boundary flux at `k = 0`;
//! * one factor of the grid step `h` is absorbed into each element value
//!   (`C(k) = -h/gamma(kh)`, `R(k+1) = -h/beta(kh)`), which lets the
//!   circuit use unit-step Kirchhoff relations.

use alloc::vec::Vec;

#[allow(unused_imports)] // float math via the trait when built without std
use num_traits::Float;

use crate::error::{Error, Result};

/// Default relative tolerance for deciding that element sequences are
/// geometric in [`profile_from_ladder`].
pub const GEOMETRIC_RATIO_TOL: f64 = 1e-9;

fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::InvalidParameter { name, value });
    }
    Ok(())
}

fn require_finite(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::InvalidParameter { name, value });
    }
    Ok(())
}

/// A truncated Cauer ladder: series resistances `R(1..=N)` and shunt
/// capacitances `C(1..=N)`, all strictly positive and finite.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderSpec {
    resistances: Vec<f64>,
    capacitances: Vec<f64>,
}

impl LadderSpec {
    pub fn new(resistances: Vec<f64>, capacitances: Vec<f64>) -> Result<Self> {
        if resistances.len() != capacitances.len() {
            return Err(Error::LengthMismatch {
                left: resistances.len(),
                right: capacitances.len(),
            });
        }
        if resistances.is_empty() {
            return Err(Error::DepthTooSmall { depth: 0, min: 1 });
        }
        for &r in &resistances {
            require_positive("resistance", r)?;
        }
        for &c in &capacitances {
            require_positive("capacitance", c)?;
        }
        Ok(Self {
            resistances,
            capacitances,
        })
    }

    /// Number of ladder cells N.
    pub fn depth(&self) -> usize {
        self.resistances.len()
    }

    /// Series resistances, index 0 holding R(1).
    pub fn resistances(&self) -> &[f64] {
        &self.resistances
    }

    /// Shunt capacitances, index 0 holding C(1).
    pub fn capacitances(&self) -> &[f64] {
        &self.capacitances
    }
}

/// Parameters of a geometric (fractal) ladder: `R(k+1) = sigma R(k)`,
/// `C(k+1) = rho C(k)` seeded by `r1`, `c1`.
///
/// `sigma * rho = 1` is accepted here (the network exists and can be
/// evaluated); only the fractional-exponent prediction degenerates, and
/// that path reports [`Error::DegenerateScaling`] instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractalParams {
    pub r1: f64,
    pub c1: f64,
    pub sigma: f64,
    pub rho: f64,
    pub depth: usize,
}

impl FractalParams {
    pub fn new(r1: f64, c1: f64, sigma: f64, rho: f64, depth: usize) -> Result<Self> {
        require_positive("r1", r1)?;
        require_positive("c1", c1)?;
        require_positive("sigma", sigma)?;
        require_positive("rho", rho)?;
        if depth < 1 {
            return Err(Error::DepthTooSmall { depth, min: 1 });
        }
        Ok(Self {
            r1,
            c1,
            sigma,
            rho,
            depth,
        })
    }
}

/// Exponential coefficient family for the diffusion side:
/// `beta(z) = -beta0 e^{-lambda_r z}`, `gamma(z) = -gamma0 e^{-lambda_c z}`
/// on the uniform grid `z_k = k h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionProfile {
    pub beta0: f64,
    pub gamma0: f64,
    pub lambda_r: f64,
    pub lambda_c: f64,
    pub h: f64,
}

impl DiffusionProfile {
    pub fn new(beta0: f64, gamma0: f64, lambda_r: f64, lambda_c: f64, h: f64) -> Result<Self> {
        require_positive("beta0", beta0)?;
        require_positive("gamma0", gamma0)?;
        require_finite("lambda_r", lambda_r)?;
        require_finite("lambda_c", lambda_c)?;
        require_positive("h", h)?;
        Ok(Self {
            beta0,
            gamma0,
            lambda_r,
            lambda_c,
            h,
        })
    }

    /// Flux coefficient `beta(z) = -beta0 e^{-lambda_r z}`, strictly negative.
    pub fn beta(&self, z: f64) -> f64 {
        -self.beta0 * (-self.lambda_r * z).exp()
    }

    /// Storage coefficient `gamma(z) = -gamma0 e^{-lambda_c z}`, strictly negative.
    pub fn gamma(&self, z: f64) -> f64 {
        -self.gamma0 * (-self.lambda_c * z).exp()
    }
}

/// The exponential scaling function `f(zeta) = value0 * e^{lambda zeta}`,
/// the unique continuous solution family of `g((k+1)h) = g(h) g(kh)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFunction {
    pub lambda: f64,
    pub value0: f64,
}

impl ScalingFunction {
    pub fn new(lambda: f64, value0: f64) -> Result<Self> {
        require_finite("lambda", lambda)?;
        require_positive("value0", value0)?;
        Ok(Self { lambda, value0 })
    }

    /// `f(zeta) = value0 * e^{lambda zeta}`; `f(0) = value0`.
    pub fn eval(&self, zeta: f64) -> f64 {
        self.value0 * (self.lambda * zeta).exp()
    }
}

/// The exponent `lambda = ln(sigma)/h`, the unique value for which
/// `g(zeta) = e^{lambda zeta}` satisfies `g(h) = sigma`.
pub fn scaling_lambda(sigma: f64, h: f64) -> Result<f64> {
    require_positive("sigma", sigma)?;
    require_positive("h", h)?;
    Ok(sigma.ln() / h)
}

/// Builds the geometric ladder `R(k) = r1 sigma^{k-1}`, `C(k) = c1 rho^{k-1}`
/// for `k = 1..=depth`.
///
/// Fails if the geometric growth overflows the representable range.
pub fn generate_fractal(params: &FractalParams) -> Result<LadderSpec> {
    let mut resistances = Vec::with_capacity(params.depth);
    let mut capacitances = Vec::with_capacity(params.depth);
    let mut r = params.r1;
    let mut c = params.c1;
    for _ in 0..params.depth {
        resistances.push(r);
        capacitances.push(c);
        r *= params.sigma;
        c *= params.rho;
    }
    LadderSpec::new(resistances, capacitances)
}

/// The ladder whose unit-step nodal equations coincide with the
/// discretized diffusion equation on the grid `z_k = k h`:
///
/// `C(k) = -h/gamma(kh)` for `k = 1..=depth` and `R(k+1) = -h/beta(kh)`
/// for `k >= 0`, so `R(1)` carries the `k = 0` boundary flux coefficient.
pub fn ladder_from_profile(profile: &DiffusionProfile, depth: usize) -> Result<LadderSpec> {
    if depth < 1 {
        return Err(Error::DepthTooSmall { depth, min: 1 });
    }
    let h = profile.h;
    let mut resistances = Vec::with_capacity(depth);
    let mut capacitances = Vec::with_capacity(depth);
    for k in 0..depth {
        // R(k+1) = -h / beta(kh) = (h/beta0) e^{lambda_r * kh}
        resistances.push((h / profile.beta0) * (profile.lambda_r * (k as f64 * h)).exp());
        // C(k+1) = -h / gamma((k+1)h) = (h/gamma0) e^{lambda_c * (k+1)h}
        let kc = (k + 1) as f64;
        capacitances.push((h / profile.gamma0) * (profile.lambda_c * (kc * h)).exp());
    }
    LadderSpec::new(resistances, capacitances)
}

/// Fits the common ratio of a positive sequence, rejecting sequences whose
/// consecutive ratios stray from the leading ratio by more than `rel_tol`.
/// A single-element sequence fits ratio 1 trivially.
fn common_ratio(values: &[f64], rel_tol: f64) -> Result<f64> {
    if values.len() < 2 {
        return Ok(1.0);
    }
    let first_ratio = values[1] / values[0];
    for (index, pair) in values.windows(2).enumerate().skip(1) {
        let ratio = pair[1] / pair[0];
        if (ratio - first_ratio).abs() > rel_tol * first_ratio.abs() {
            return Err(Error::NonGeometricLadder {
                index: index + 1,
                ratio,
                first_ratio,
            });
        }
    }
    Ok(first_ratio)
}

/// Inverse of [`ladder_from_profile`]: recovers the exponential profile
/// from a geometric ladder sampled with grid step `h`.
///
/// `lambda_r = ln(sigma)/h` and `lambda_c = ln(rho)/h` where `sigma`,
/// `rho` are the fitted common ratios; element sequences whose ratios
/// deviate by more than `rel_tol` (relative) are rejected as
/// [`Error::NonGeometricLadder`]. Pass [`GEOMETRIC_RATIO_TOL`] for the
/// default tolerance.
pub fn profile_from_ladder(ladder: &LadderSpec, h: f64, rel_tol: f64) -> Result<DiffusionProfile> {
    require_positive("h", h)?;
    require_positive("rel_tol", rel_tol)?;
    let sigma = common_ratio(ladder.resistances(), rel_tol)?;
    let rho = common_ratio(ladder.capacitances(), rel_tol)?;
    let lambda_r = sigma.ln() / h;
    let lambda_c = rho.ln() / h;
    // R(1) = h/beta0 and C(1) = (h/gamma0) e^{lambda_c h} = (h/gamma0) rho.
    let beta0 = h / ladder.resistances()[0];
    let gamma0 = h * rho / ladder.capacitances()[0];
    DiffusionProfile::new(beta0, gamma0, lambda_r, lambda_c, h)
}
