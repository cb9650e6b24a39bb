//! Independent oracle for the ladder transfer function: the Laplace-domain
//! diffusion equation, space-discretized on the uniform grid `z_k = kh`,
//! assembled as a complex tridiagonal system and solved by direct
//! elimination. Its driving-point admittance must coincide with the
//! ladder routes.
//!
//! Node 0 is driven with a fixed boundary voltage; the flux beyond the
//! last node is zero, mirroring the ladder's open-circuit tail. For
//! `1 <= k <= N-1` the rows encode
//!
//! `s U(k) = gamma(kh)/h * [beta(kh)/h * (U(k+1)-U(k)) - beta((k-1)h)/h * (U(k)-U(k-1))]`
//!
//! and the terminal row drops the forward flux. Note the backward term
//! evaluates `beta` at the flux index `(k-1)h`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ladder::DiffusionProfile;

/// Relative pivot threshold: elimination reports a singular frequency when
/// a pivot falls below this fraction of its row scale.
const PIVOT_REL_FLOOR: f64 = 1e-14;

/// The space-discretized Laplace-domain diffusion system.
///
/// `n_nodes` counts the unknown nodes `U(1..=N)`; the driven node `U(0)`
/// carries the boundary value. `beta_at[k]` holds `beta(kh)` for
/// `k = 0..N-1` (one per flux) and `gamma_at[k-1]` holds `gamma(kh)` for
/// `k = 1..N` (one per row).
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDiffusionSystem {
    n_nodes: usize,
    h: f64,
    beta_at: Vec<f64>,
    gamma_at: Vec<f64>,
    boundary: Complex64,
}

impl DiscreteDiffusionSystem {
    /// Builds a system from raw coefficient samples.
    pub fn from_samples(
        h: f64,
        beta_at: Vec<f64>,
        gamma_at: Vec<f64>,
        boundary: Complex64,
    ) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidParameter { name: "h", value: h });
        }
        if beta_at.len() != gamma_at.len() {
            return Err(Error::LengthMismatch {
                left: beta_at.len(),
                right: gamma_at.len(),
            });
        }
        let n_nodes = beta_at.len();
        if n_nodes < 1 {
            return Err(Error::DepthTooSmall {
                depth: n_nodes,
                min: 1,
            });
        }
        for &b in &beta_at {
            if !(b.is_finite() && b < 0.0) {
                return Err(Error::InvalidParameter {
                    name: "beta",
                    value: b,
                });
            }
        }
        for &g in &gamma_at {
            if !(g.is_finite() && g < 0.0) {
                return Err(Error::InvalidParameter {
                    name: "gamma",
                    value: g,
                });
            }
        }
        if !boundary.is_finite() {
            return Err(Error::InvalidParameter {
                name: "boundary",
                value: boundary.norm(),
            });
        }
        Ok(Self {
            n_nodes,
            h,
            beta_at,
            gamma_at,
            boundary,
        })
    }

    /// Number of unknown nodes N.
    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn boundary(&self) -> Complex64 {
        self.boundary
    }

    pub fn beta_at(&self) -> &[f64] {
        &self.beta_at
    }

    pub fn gamma_at(&self) -> &[f64] {
        &self.gamma_at
    }
}

/// Samples an exponential profile onto a grid of `n_nodes` unknown nodes
/// (grid nodes `0..=n_nodes`, node 0 driven with `u0_boundary`).
pub fn assemble(
    profile: &DiffusionProfile,
    n_nodes: usize,
    u0_boundary: Complex64,
) -> Result<DiscreteDiffusionSystem> {
    if n_nodes < 1 {
        return Err(Error::DepthTooSmall {
            depth: n_nodes,
            min: 1,
        });
    }
    let h = profile.h;
    let beta_at = (0..n_nodes).map(|k| profile.beta(k as f64 * h)).collect();
    let gamma_at = (1..=n_nodes).map(|k| profile.gamma(k as f64 * h)).collect();
    DiscreteDiffusionSystem::from_samples(h, beta_at, gamma_at, u0_boundary)
}

/// Tridiagonal rows of the system at Laplace point `s`.
///
/// Row `k` (1-based, `1 <= k <= N`):
///   sub[k]  * U(k-1) + diag[k] * U(k) + sup[k] * U(k+1) = rhs[k]
/// with `g_k = gamma(kh)/h^2`:
///   sub  = -g_k beta((k-1)h)
///   diag = s + g_k (beta(kh) + beta((k-1)h)),   terminal: s + g_N beta((N-1)h)
///   sup  = -g_k beta(kh)
/// and the boundary term moved to the right-hand side of row 1.
struct Rows {
    sub: Vec<f64>,
    diag: Vec<Complex64>,
    sup: Vec<f64>,
    rhs: Vec<Complex64>,
}

fn build_rows(system: &DiscreteDiffusionSystem, s: Complex64) -> Rows {
    let n = system.n_nodes;
    let h2 = system.h * system.h;
    let mut sub = vec![0.0; n];
    let mut diag = vec![Complex64::new(0.0, 0.0); n];
    let mut sup = vec![0.0; n];
    let mut rhs = vec![Complex64::new(0.0, 0.0); n];
    for k in 1..=n {
        let g = system.gamma_at[k - 1] / h2;
        // gamma and beta are both negative, so these products are positive.
        let cond_back = g * system.beta_at[k - 1];
        if k < n {
            let cond_fwd = g * system.beta_at[k];
            diag[k - 1] = s + Complex64::new(cond_fwd + cond_back, 0.0);
            sup[k - 1] = -cond_fwd;
        } else {
            // zero flux beyond the last node
            diag[k - 1] = s + Complex64::new(cond_back, 0.0);
        }
        if k > 1 {
            sub[k - 1] = -cond_back;
        } else {
            rhs[0] = system.boundary * cond_back;
        }
    }
    Rows {
        sub,
        diag,
        sup,
        rhs,
    }
}

/// Solves the system at `s` by a direct Thomas elimination sweep and
/// returns the voltages at all grid nodes, `[U(0), U(1), .., U(N)]`.
///
/// No pivoting is performed; a vanishing pivot (s on the spectrum of the
/// network) is reported as [`Error::SingularAtFrequency`].
pub fn solve(system: &DiscreteDiffusionSystem, s: Complex64) -> Result<Vec<Complex64>> {
    let n = system.n_nodes;
    let rows = build_rows(system, s);
    let mut sweep_sup = vec![Complex64::new(0.0, 0.0); n];
    let mut sweep_rhs = vec![Complex64::new(0.0, 0.0); n];
    let mut pivot = rows.diag[0];
    let row_scale =
        |k: usize| rows.sub[k].abs() + rows.diag[k].norm() + rows.sup[k].abs() + s.norm();
    if pivot.norm() < PIVOT_REL_FLOOR * row_scale(0) {
        return Err(Error::SingularAtFrequency { pivot_index: 1 });
    }
    sweep_sup[0] = rows.sup[0] / pivot;
    sweep_rhs[0] = rows.rhs[0] / pivot;
    for k in 1..n {
        pivot = rows.diag[k] - rows.sub[k] * sweep_sup[k - 1];
        if pivot.norm() < PIVOT_REL_FLOOR * row_scale(k) {
            return Err(Error::SingularAtFrequency { pivot_index: k + 1 });
        }
        sweep_sup[k] = rows.sup[k] / pivot;
        sweep_rhs[k] = (rows.rhs[k] - sweep_rhs[k - 1] * rows.sub[k]) / pivot;
    }
    let mut u = vec![Complex64::new(0.0, 0.0); n + 1];
    u[0] = system.boundary;
    u[n] = sweep_rhs[n - 1];
    for k in (1..n).rev() {
        u[k] = sweep_rhs[k - 1] - sweep_sup[k - 1] * u[k + 1];
    }
    Ok(u)
}

/// Driving-point admittance `I(s,0)/U(s,0)` with current into the network
/// positive; `I(s,0)` is the node-0 flux `beta(0) (U(1)-U(0))/h`.
///
/// The flux is evaluated through the telescoped row identity
/// `phi(0) = -s h sum_k U(k)/gamma(kh)` (exact for this system thanks to
/// the zero terminal flux), which avoids the `U(1) - U(0)` cancellation
/// that destroys low-frequency accuracy in the boundary-difference form.
pub fn input_admittance(system: &DiscreteDiffusionSystem, s: Complex64) -> Result<Complex64> {
    let u = solve(system, s)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, gamma) in system.gamma_at.iter().enumerate() {
        acc += u[k + 1] / *gamma;
    }
    let flux = -s * system.h * acc;
    Ok(flux / system.boundary)
}
