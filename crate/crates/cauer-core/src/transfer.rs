//! Driving-point transfer functions `H(s,0) = I(s,0)/U(s,0)` of truncated
//! Cauer ladders, computed by three equivalent routes:
//!
//! 1. the backward nodal recursion with open-circuit tail `H(s,N) = 0`,
//! 2. the continued-fraction closed form over the ladder elements,
//! 3. the geometric term pattern of fractal ladders.
//!
//! The module also hosts the parameterized tail function `g(z,sigma,rho)`,
//! numerical certificates for its exact and simplified functional
//! relations, and log-spaced frequency sweeps.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float math via the trait when built without std
use num_traits::Float;

use crate::confrac::{self, CfTerms, DENOMINATOR_FLOOR};
use crate::error::{Error, Result};
use crate::ladder::{FractalParams, LadderSpec};

/// A validated Laplace-variable sample point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyPoint {
    s: Complex64,
}

impl FrequencyPoint {
    /// Any finite, nonzero Laplace point.
    pub fn new(s: Complex64) -> Result<Self> {
        if !s.is_finite() || s.norm() == 0.0 {
            return Err(Error::InvalidParameter {
                name: "s",
                value: s.norm(),
            });
        }
        Ok(Self { s })
    }

    /// The Bode-grid point `s = j omega` for `omega > 0`.
    pub fn from_omega(omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidParameter {
                name: "omega",
                value: omega,
            });
        }
        Ok(Self {
            s: Complex64::new(0.0, omega),
        })
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }
}

/// Sampled frequency response `H(j omega)` over an ascending grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BodeTable {
    omegas: Vec<f64>,
    values: Vec<Complex64>,
}

impl BodeTable {
    pub fn new(omegas: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if omegas.len() != values.len() {
            return Err(Error::LengthMismatch {
                left: omegas.len(),
                right: values.len(),
            });
        }
        for pair in omegas.windows(2) {
            if !(pair[0] < pair[1]) {
                return Err(Error::InvalidParameter {
                    name: "omegas",
                    value: pair[1],
                });
            }
        }
        if let Some(&bad) = omegas.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidParameter {
                name: "omega",
                value: bad,
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSamples);
        }
        Ok(Self { omegas, values })
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.omegas.iter().copied().zip(self.values.iter().copied())
    }
}

/// Log-spaced sweep grid description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub omega_min: f64,
    pub omega_max: f64,
    pub points_per_decade: u32,
}

impl SweepGrid {
    pub fn new(omega_min: f64, omega_max: f64, points_per_decade: u32) -> Result<Self> {
        if !(omega_min.is_finite() && omega_min > 0.0) {
            return Err(Error::InvalidParameter {
                name: "omega_min",
                value: omega_min,
            });
        }
        if !(omega_max.is_finite() && omega_max > omega_min) {
            return Err(Error::InvalidParameter {
                name: "omega_max",
                value: omega_max,
            });
        }
        if points_per_decade < 1 {
            return Err(Error::InvalidParameter {
                name: "points_per_decade",
                value: points_per_decade as f64,
            });
        }
        Ok(Self {
            omega_min,
            omega_max,
            points_per_decade,
        })
    }

    /// The grid `omega_i = omega_min * 10^(i/ppd)`, covering
    /// `log10(omega_max/omega_min)` decades inclusively; three decades at
    /// ten points per decade yield 31 samples.
    pub fn omegas(&self) -> Vec<f64> {
        let decades = (self.omega_max / self.omega_min).log10();
        let ppd = self.points_per_decade as f64;
        // The epsilon keeps an exact decade count from losing its endpoint.
        let steps = (decades * ppd + 1e-9).floor() as usize;
        (0..=steps)
            .map(|i| self.omega_min * 10.0_f64.powf(i as f64 / ppd))
            .collect()
    }
}

/// Per-point pole diagnostic emitted by [`bode_sweep`] without aborting
/// the rest of the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepDiagnostic {
    pub index: usize,
    pub omega: f64,
    pub error: Error,
}

/// `H(s,0)` by the backward recursion
/// `H(s,k) = 1/(R(k+1) + 1/(s C(k+1) + H(s,k+1)))` with `H(s,N) = 0`.
pub fn transfer_recursive(ladder: &LadderSpec, s: Complex64) -> Result<Complex64> {
    let r = ladder.resistances();
    let c = ladder.capacitances();
    let mut h = Complex64::new(0.0, 0.0);
    for k in (0..ladder.depth()).rev() {
        let inner = s * c[k] + h;
        if inner.norm() < DENOMINATOR_FLOOR {
            return Err(Error::PoleEncountered { stage: k + 1 });
        }
        let outer = r[k] + inner.inv();
        if outer.norm() < DENOMINATOR_FLOOR {
            return Err(Error::PoleEncountered { stage: k + 1 });
        }
        h = outer.inv();
    }
    Ok(h)
}

/// The bracket terms of the closed form
/// `H(s,0) = [1/R(1), Z_{C(1)}(R(1)s), Z_{C(1)}(R(2)s), Z_{C(2)}(R(2)s), ...]`
/// with `Z_C(s) = 1/(sC)`, truncated after the term in `C(N)`, `R(N)`.
fn ladder_cf_terms(ladder: &LadderSpec, s: Complex64) -> Vec<Complex64> {
    let r = ladder.resistances();
    let c = ladder.capacitances();
    let n = ladder.depth();
    let mut terms = Vec::with_capacity(2 * n);
    terms.push(Complex64::new(1.0 / r[0], 0.0));
    for k in 0..n {
        terms.push((s * r[k] * c[k]).inv());
        if k + 1 < n {
            terms.push((s * r[k + 1] * c[k]).inv());
        }
    }
    terms
}

/// `H(s,0)` through the continued-fraction closed form; agrees with
/// [`transfer_recursive`] to a relative error of about 1e-12.
pub fn transfer_cf(ladder: &LadderSpec, s: Complex64) -> Result<Complex64> {
    let terms = CfTerms::new(ladder_cf_terms(ladder, s))?;
    confrac::eval_cf(&terms)
}

/// The seed impedance `Z(s) = Z_{C(1)}(R(1) s) = 1/(s r1 c1)` of a
/// fractal ladder.
pub fn base_impedance(params: &FractalParams, s: Complex64) -> Complex64 {
    (s * params.r1 * params.c1).inv()
}

/// The bracket terms of `g(z,sigma,rho)`: term `m` (1-based) equals
/// `z * sigma^-ceil((m-1)/2) * rho^-floor((m-1)/2)`, built by
/// alternately dividing by `sigma` and `rho`.
fn g_terms(z: Complex64, sigma: f64, rho: f64, depth: usize) -> Vec<Complex64> {
    let mut terms = Vec::with_capacity(depth);
    let mut t = z;
    for m in 1..=depth {
        terms.push(t);
        t = if m % 2 == 1 { t / sigma } else { t / rho };
    }
    terms
}

/// Finite truncation of the tail function `g(z,sigma,rho)` to `depth`
/// bracket terms.
pub fn g_eval(z: Complex64, sigma: f64, rho: f64, depth: usize) -> Result<Complex64> {
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
    if depth < 1 {
        return Err(Error::DepthTooSmall { depth, min: 1 });
    }
    let terms = CfTerms::new(g_terms(z, sigma, rho, depth))?;
    confrac::eval_cf(&terms)
}

/// `H(s,0)` of a fractal ladder from the geometric term pattern
/// `[1/r1, Z(s), Z(s)/sigma, Z(s)/(sigma rho), ...]`, truncated
/// consistently with a `params.depth`-cell ladder (2 depth terms).
pub fn transfer_fractal(params: &FractalParams, s: Complex64) -> Result<Complex64> {
    let z = base_impedance(params, s);
    let mut terms = Vec::with_capacity(2 * params.depth);
    terms.push(Complex64::new(1.0 / params.r1, 0.0));
    terms.extend(g_terms(z, params.sigma, params.rho, 2 * params.depth - 1));
    confrac::eval_cf(&CfTerms::new(terms)?)
}

/// `H = [1/r1, g(Z(s),sigma,rho)]`, i.e. `(1/r1)/(1 + g)` with the tail
/// truncated to `g_depth` bracket terms.
///
/// `g_depth = 2N - 1` reproduces [`transfer_fractal`] on an `N`-cell
/// ladder exactly.
pub fn transfer_via_g(params: &FractalParams, s: Complex64, g_depth: usize) -> Result<Complex64> {
    let z = base_impedance(params, s);
    let g = g_eval(z, params.sigma, params.rho, g_depth)?;
    let head = CfTerms::new(vec![Complex64::new(1.0 / params.r1, 0.0)])?;
    confrac::nest_cf(&head, g)
}

/// Relative residual of the exact functional relation
/// `g(Z(s),sigma,rho) = Z(s)/(1 + g(Z(sigma s),rho,sigma))`, with the
/// right-hand truncation one term shorter so the identity is exact at
/// the truncation level.
pub fn functional_residual(s: Complex64, params: &FractalParams, depth: usize) -> Result<f64> {
    if depth < 2 {
        return Err(Error::DepthTooSmall { depth, min: 2 });
    }
    let z = base_impedance(params, s);
    let left = g_eval(z, params.sigma, params.rho, depth)?;
    let z_shift = base_impedance(params, s * params.sigma);
    let right_tail = g_eval(z_shift, params.rho, params.sigma, depth - 1)?;
    let denom = Complex64::new(1.0, 0.0) + right_tail;
    if denom.norm() < DENOMINATOR_FLOOR {
        return Err(Error::DivisionNearZero { level: 1 });
    }
    let right = z / denom;
    Ok((left - right).norm() / left.norm())
}

/// Residual of the simplified relation
/// `g(Z(s),sigma,rho) g(Z(sigma s),rho,sigma) = Z(s)/(1+epsilon)`
/// together with the regime diagnostic `|g(Z(s),rho,sigma)|^-1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplifiedRelation {
    /// `|g g' (1+eps) - Z(s)| / |Z(s)|`.
    pub residual: f64,
    /// `1/|g(Z(s),rho,sigma)|`; the approximation assumes this is << 1.
    pub inv_g_magnitude: f64,
}

/// Quantifies how well the simplified functional relation holds at `s`
/// for the supplied `epsilon >= 0`.
pub fn simplified_residual(
    s: Complex64,
    params: &FractalParams,
    depth: usize,
    epsilon: f64,
) -> Result<SimplifiedRelation> {
    if depth < 1 {
        return Err(Error::DepthTooSmall { depth, min: 1 });
    }
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            value: epsilon,
        });
    }
    let z = base_impedance(params, s);
    let g_forward = g_eval(z, params.sigma, params.rho, depth)?;
    let z_shift = base_impedance(params, s * params.sigma);
    let g_swapped = g_eval(z_shift, params.rho, params.sigma, depth)?;
    let residual = (g_forward * g_swapped * (1.0 + epsilon) - z).norm() / z.norm();
    let g_regime = g_eval(z, params.rho, params.sigma, depth)?;
    Ok(SimplifiedRelation {
        residual,
        inv_g_magnitude: g_regime.norm().recip(),
    })
}

/// Depth-doubling control for evaluating the "infinite" tail function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convergence {
    pub rtol: f64,
    pub max_depth: usize,
}

impl Default for Convergence {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            max_depth: 1 << 14,
        }
    }
}

/// Result of a depth-doubling evaluation of `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergedValue {
    pub value: Complex64,
    pub depth: usize,
    pub converged: bool,
}

/// Evaluates `g(z,sigma,rho)` by doubling the truncation depth until two
/// successive truncations agree to `conv.rtol` relative, reporting
/// non-convergence (rather than guessing) when the cap is reached.
pub fn g_eval_converged(
    z: Complex64,
    sigma: f64,
    rho: f64,
    conv: &Convergence,
) -> Result<ConvergedValue> {
    let mut depth = 16.min(conv.max_depth).max(1);
    let mut prev = g_eval(z, sigma, rho, depth)?;
    loop {
        let next_depth = (depth * 2).min(conv.max_depth);
        if next_depth == depth {
            return Ok(ConvergedValue {
                value: prev,
                depth,
                converged: false,
            });
        }
        let next = g_eval(z, sigma, rho, next_depth)?;
        if (next - prev).norm() <= conv.rtol * next.norm() {
            return Ok(ConvergedValue {
                value: next,
                depth: next_depth,
                converged: true,
            });
        }
        depth = next_depth;
        prev = next;
    }
}

/// Sweeps `H(j omega)` over the grid by [`transfer_cf`]. Pole diagnostics
/// are collected per point and the point dropped from the table; the rest
/// of the sweep proceeds. Output is deterministic for identical inputs.
pub fn bode_sweep(ladder: &LadderSpec, grid: &SweepGrid) -> (BodeTable, Vec<SweepDiagnostic>) {
    let omegas = grid.omegas();
    let mut kept_omegas = Vec::with_capacity(omegas.len());
    let mut values = Vec::with_capacity(omegas.len());
    let mut diagnostics = Vec::new();
    for (index, &omega) in omegas.iter().enumerate() {
        let s = Complex64::new(0.0, omega);
        match transfer_cf(ladder, s) {
            Ok(h) if h.is_finite() => {
                kept_omegas.push(omega);
                values.push(h);
            }
            Ok(_) => diagnostics.push(SweepDiagnostic {
                index,
                omega,
                error: Error::NonFiniteSamples,
            }),
            Err(error) => diagnostics.push(SweepDiagnostic {
                index,
                omega,
                error,
            }),
        }
    }
    let table = BodeTable::new(kept_omegas, values).expect("kept points are finite and ascending");
    (table, diagnostics)
}
