//! Fractional-behavior identification: the closed-form exponent predicted
//! from the geometric ratios, the identification-system residuals, and
//! least-squares recovery of `(c, nu)` from sampled `|H(j omega)|` data.
//!
//! In the regime where the tail function dominates (`|g| >> 1`, quantified
//! by [`DEFAULT_MIN_G`]), `H ~ (1/r1)/g` and the slope of `log|H|` against
//! `log omega` approaches `+n(sigma,rho)`; the fit is performed on `H`
//! directly and compared to `+n`.

use alloc::vec::Vec;

#[allow(unused_imports)] // float math via the trait when built without std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::ladder::FractalParams;
use crate::transfer::{base_impedance, g_eval, BodeTable};
use num_complex::Complex64;

/// Default quantification of the regime condition `|g| >> 1`: the band
/// keeps only points with `|g| >= 10`, which bounds the error of the
/// `1/(1+g) ~ 1/g` approximation near 10%.
pub const DEFAULT_MIN_G: f64 = 10.0;

/// Minimum number of samples a fit band must contain.
pub const MIN_BAND_SAMPLES: usize = 8;

/// Relative agreement between the full- and half-depth tail truncations
/// required for a grid point to count as converged in [`auto_band`].
const BAND_CONVERGENCE_RTOL: f64 = 1e-6;

/// Outcome of a power-law fit over a frequency band.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    /// Fitted slope of `log|H|` against `log omega`.
    pub nu_fitted: f64,
    /// Fitted gain, `|H| ~ c_fitted * omega^nu_fitted` over the band.
    pub c_fitted: f64,
    /// `ln(sigma)/ln(sigma rho)` when fractal parameters were supplied and
    /// the scaling is not degenerate.
    pub nu_predicted: Option<f64>,
    /// Realized band endpoints (first and last omega used).
    pub band: (f64, f64),
    /// Root-mean-square residual of `log|H|` around the fitted line.
    pub rms_log_residual: f64,
    /// Smallest `|g|` seen over the band, when fractal parameters were
    /// supplied; diagnoses how strongly the regime condition held.
    pub regime_min_g: Option<f64>,
}

/// The predicted fractional exponent `n(sigma,rho) = ln(sigma)/ln(sigma rho)`.
///
/// Computed as `ln(sigma) / (ln(sigma) + ln(rho))`, which is identical in
/// exact arithmetic and keeps the complementarity identity
/// `n(sigma,rho) + n(rho,sigma) = 1` at roundoff level.
pub fn predict_exponent(sigma: f64, rho: f64) -> Result<f64> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidParameter {
            name: "sigma",
            value: sigma,
        });
    }
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::InvalidParameter {
            name: "rho",
            value: rho,
        });
    }
    let denom = sigma.ln() + rho.ln();
    if denom == 0.0 {
        return Err(Error::DegenerateScaling);
    }
    Ok(sigma.ln() / denom)
}

/// Residuals of the identification system: `r1` for
/// `K(sigma,rho) K(rho,sigma) (1+eps) = sigma^(1-n)` and `r2` for the
/// defining identity `sigma = (sigma rho)^n`. Both vanish when `n` is the
/// predicted exponent and the `K` pair satisfies the system.
pub fn check_identification_system(
    sigma: f64,
    rho: f64,
    n: f64,
    k_forward: f64,
    k_swapped: f64,
    epsilon: f64,
) -> Result<(f64, f64)> {
    for (name, value) in [
        ("sigma", sigma),
        ("rho", rho),
        ("n", n),
        ("k_forward", k_forward),
        ("k_swapped", k_swapped),
        ("epsilon", epsilon),
    ] {
        if !value.is_finite() {
            return Err(Error::InvalidParameter { name, value });
        }
    }
    if sigma * rho == 1.0 {
        return Err(Error::DegenerateScaling);
    }
    let r1 = (k_forward * k_swapped * (1.0 + epsilon) - sigma.powf(1.0 - n)).abs();
    let r2 = (sigma - (sigma * rho).powf(n)).abs();
    Ok((r1, r2))
}

/// Ordinary least squares of `log|H|` against `log omega` over the band
/// (inclusive endpoints). The band must hold at least
/// [`MIN_BAND_SAMPLES`] samples with strictly positive magnitudes.
pub fn fit_power_law(bode: &BodeTable, band: (f64, f64)) -> Result<FitReport> {
    let (omega_low, omega_high) = band;
    if !(omega_low.is_finite() && omega_high.is_finite() && omega_low < omega_high) {
        return Err(Error::InvalidParameter {
            name: "band",
            value: omega_high,
        });
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut realized = (f64::INFINITY, f64::NEG_INFINITY);
    for (omega, value) in bode.iter() {
        if omega < omega_low || omega > omega_high {
            continue;
        }
        let magnitude = value.norm();
        if !(magnitude.is_finite() && magnitude > 0.0) {
            return Err(Error::NonFiniteSamples);
        }
        realized.0 = realized.0.min(omega);
        realized.1 = realized.1.max(omega);
        xs.push(omega.ln());
        ys.push(magnitude.ln());
    }
    if xs.len() < MIN_BAND_SAMPLES {
        return Err(Error::BandTooNarrow {
            samples: xs.len(),
            required: MIN_BAND_SAMPLES,
        });
    }
    let count = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / count;
    let y_mean = ys.iter().sum::<f64>() / count;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        sxx += (x - x_mean) * (x - x_mean);
        sxy += (x - x_mean) * (y - y_mean);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let mut sq_sum = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        let r = y - (intercept + slope * x);
        sq_sum += r * r;
    }
    Ok(FitReport {
        nu_fitted: slope,
        c_fitted: intercept.exp(),
        nu_predicted: None,
        band: realized,
        rms_log_residual: (sq_sum / count).sqrt(),
        regime_min_g: None,
    })
}

/// Magnitude of the regime tail `g(Z(j omega), rho, sigma)` at the
/// ladder-consistent truncation, or `None` where the evaluation poles out.
fn regime_g_magnitude(params: &FractalParams, omega: f64, depth: usize) -> Option<f64> {
    let z = base_impedance(params, Complex64::new(0.0, omega));
    g_eval(z, params.rho, params.sigma, depth)
        .ok()
        .map(|g| g.norm())
        .filter(|m| m.is_finite())
}

/// Whether the truncated tail has converged at this point: the full- and
/// half-depth truncations must agree to [`BAND_CONVERGENCE_RTOL`].
fn regime_converged(params: &FractalParams, omega: f64, depth: usize) -> bool {
    let z = base_impedance(params, Complex64::new(0.0, omega));
    let full = match g_eval(z, params.rho, params.sigma, depth) {
        Ok(g) if g.is_finite() => g,
        _ => return false,
    };
    let half_depth = depth.div_ceil(2).max(1);
    let half = match g_eval(z, params.rho, params.sigma, half_depth) {
        Ok(g) if g.is_finite() => g,
        _ => return false,
    };
    (full - half).norm() <= BAND_CONVERGENCE_RTOL * full.norm()
}

/// The largest contiguous omega-interval of the table on which
/// `|g(Z(j omega), rho, sigma)| >= min_g_magnitude` and the truncation has
/// converged. This makes the unquantified regime condition operational.
pub fn auto_band(
    bode: &BodeTable,
    params: &FractalParams,
    min_g_magnitude: f64,
) -> Result<(f64, f64)> {
    if bode.is_empty() {
        return Err(Error::NoValidBand);
    }
    let depth = 2 * params.depth - 1;
    let omegas = bode.omegas();
    let mut best: Option<(usize, usize)> = None;
    let mut run_start: Option<usize> = None;
    for (i, &omega) in omegas.iter().enumerate() {
        let qualified = regime_g_magnitude(params, omega, depth)
            .map(|m| m >= min_g_magnitude)
            .unwrap_or(false)
            && regime_converged(params, omega, depth);
        if qualified {
            if run_start.is_none() {
                run_start = Some(i);
            }
            let start = run_start.unwrap();
            let better = match best {
                Some((bs, be)) => i - start > be - bs,
                None => true,
            };
            if better {
                best = Some((start, i));
            }
        } else {
            run_start = None;
        }
    }
    match best {
        Some((start, end)) if end > start => Ok((omegas[start], omegas[end])),
        _ => Err(Error::NoValidBand),
    }
}

/// Full identification pipeline for a fractal ladder: band selection
/// (auto unless an explicit band is supplied), power-law fit, predicted
/// exponent, and regime diagnostic.
pub fn exponent_report(
    params: &FractalParams,
    bode: &BodeTable,
    explicit_band: Option<(f64, f64)>,
    min_g_magnitude: f64,
) -> Result<FitReport> {
    let band = match explicit_band {
        Some(band) => band,
        None => auto_band(bode, params, min_g_magnitude)?,
    };
    let mut report = fit_power_law(bode, band)?;
    report.nu_predicted = predict_exponent(params.sigma, params.rho).ok();
    let depth = 2 * params.depth - 1;
    let min_g = bode
        .omegas()
        .iter()
        .filter(|&&w| w >= band.0 && w <= band.1)
        .filter_map(|&w| regime_g_magnitude(params, w, depth))
        .fold(f64::INFINITY, f64::min);
    report.regime_min_g = min_g.is_finite().then_some(min_g);
    Ok(report)
}
