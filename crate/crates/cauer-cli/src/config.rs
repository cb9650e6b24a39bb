//! Job configuration: a single JSON document plus command-line overrides,
//! with flag > file > default precedence.

use std::fs;
use std::path::{Path, PathBuf};

use cauer_core::{DiffusionProfile, FractalParams, SweepGrid, DEFAULT_MIN_G, GEOMETRIC_RATIO_TOL};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct JobConfig {
    pub schema: Option<u32>,
    /// Advisory when running through the CLI: the subcommand decides.
    pub mode: Option<String>,
    pub fractal: Option<FractalConfig>,
    pub profile: Option<ProfileConfig>,
    pub sweep: Option<SweepConfig>,
    pub band: Option<BandConfig>,
    pub tolerances: Option<Tolerances>,
    /// Ladder depth for profile-based networks.
    pub depth: Option<usize>,
    /// Grid step used when mapping a generated ladder back to a profile.
    pub h: Option<f64>,
    pub output_path: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FractalConfig {
    pub r1: Option<f64>,
    pub c1: Option<f64>,
    pub sigma: Option<f64>,
    pub rho: Option<f64>,
    pub depth: Option<usize>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileConfig {
    /// Accepted so that an emitted profile document can be pasted back in.
    #[serde(default)]
    pub schema: Option<u32>,
    pub beta0: f64,
    pub gamma0: f64,
    pub lambda_r: f64,
    pub lambda_c: f64,
    pub h: f64,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
    pub points_per_decade: Option<u32>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandConfig {
    pub omega_low: f64,
    pub omega_high: f64,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Relative tolerance for the geometric-ratio test of ladder -> profile.
    pub geom_rel: Option<f64>,
    /// Regime threshold for automatic band selection.
    pub min_g: Option<f64>,
}

/// Command-line overrides shared by every mode.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct Overrides {
    /// JSON job configuration
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Resistance ratio R(k+1)/R(k)
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    /// Capacitance ratio C(k+1)/C(k)
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<f64>,
    /// Leading resistance (ohms)
    #[arg(long, allow_hyphen_values = true)]
    pub r1: Option<f64>,
    /// Leading capacitance (farads)
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<f64>,
    /// Ladder depth (number of RC cells)
    #[arg(long)]
    pub depth: Option<usize>,
    /// Sweep start (rad/s)
    #[arg(long, allow_hyphen_values = true)]
    pub omega_min: Option<f64>,
    /// Sweep end (rad/s)
    #[arg(long, allow_hyphen_values = true)]
    pub omega_max: Option<f64>,
    /// Log-spaced points per decade
    #[arg(long)]
    pub ppd: Option<u32>,
    /// Output path (overrides output_path from the config)
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Relative tolerance for geometric-ratio checks
    #[arg(long, allow_hyphen_values = true)]
    pub tol_rel: Option<f64>,
}

/// The fully merged and defaulted job description.
#[derive(Debug, Clone)]
pub struct Job {
    pub fractal: Option<FractalParams>,
    pub profile: Option<DiffusionProfile>,
    pub sweep: Option<SweepGrid>,
    pub band: Option<(f64, f64)>,
    pub depth: Option<usize>,
    pub h: f64,
    pub geom_rel: f64,
    pub min_g: f64,
    pub output_path: Option<PathBuf>,
}

fn read_config(path: &Path) -> Result<JobConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    let config: JobConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("invalid config {}: {e}", path.display())))?;
    if let Some(schema) = config.schema {
        if schema != 1 {
            return Err(CliError::Validation(format!(
                "unsupported config schema {schema}"
            )));
        }
    }
    Ok(config)
}

impl Job {
    /// Loads the config file (if any) and applies flag overrides.
    pub fn resolve(overrides: &Overrides) -> Result<Self, CliError> {
        let file = match &overrides.config {
            Some(path) => read_config(path)?,
            None => JobConfig::default(),
        };

        let mut fractal_cfg = file.fractal.unwrap_or_default();
        if let Some(v) = overrides.sigma {
            fractal_cfg.sigma = Some(v);
        }
        if let Some(v) = overrides.rho {
            fractal_cfg.rho = Some(v);
        }
        if let Some(v) = overrides.r1 {
            fractal_cfg.r1 = Some(v);
        }
        if let Some(v) = overrides.c1 {
            fractal_cfg.c1 = Some(v);
        }
        if let Some(v) = overrides.depth {
            fractal_cfg.depth = Some(v);
        }
        let fractal = match (fractal_cfg.sigma, fractal_cfg.rho) {
            (Some(sigma), Some(rho)) => {
                let depth = fractal_cfg
                    .depth
                    .ok_or_else(|| CliError::Validation("fractal.depth is required".into()))?;
                Some(
                    FractalParams::new(
                        fractal_cfg.r1.unwrap_or(1.0),
                        fractal_cfg.c1.unwrap_or(1.0),
                        sigma,
                        rho,
                        depth,
                    )
                    .map_err(CliError::validation_from_core)?,
                )
            }
            (None, None) => None,
            _ => {
                return Err(CliError::Validation(
                    "fractal parameters need both sigma and rho".into(),
                ))
            }
        };

        let profile = file
            .profile
            .map(|p| DiffusionProfile::new(p.beta0, p.gamma0, p.lambda_r, p.lambda_c, p.h))
            .transpose()
            .map_err(CliError::validation_from_core)?;

        let mut sweep_cfg = file.sweep.unwrap_or_default();
        if let Some(v) = overrides.omega_min {
            sweep_cfg.omega_min = Some(v);
        }
        if let Some(v) = overrides.omega_max {
            sweep_cfg.omega_max = Some(v);
        }
        if let Some(v) = overrides.ppd {
            sweep_cfg.points_per_decade = Some(v);
        }
        let sweep = match (sweep_cfg.omega_min, sweep_cfg.omega_max) {
            (Some(lo), Some(hi)) => Some(
                SweepGrid::new(lo, hi, sweep_cfg.points_per_decade.unwrap_or(16))
                    .map_err(CliError::validation_from_core)?,
            ),
            (None, None) => None,
            _ => {
                return Err(CliError::Validation(
                    "sweep needs both omega_min and omega_max".into(),
                ))
            }
        };

        let band = match file.band {
            Some(b) => {
                if !(b.omega_low.is_finite() && b.omega_high.is_finite() && b.omega_low < b.omega_high)
                {
                    return Err(CliError::Validation(
                        "band requires omega_low < omega_high".into(),
                    ));
                }
                Some((b.omega_low, b.omega_high))
            }
            None => None,
        };

        let tol = file.tolerances.unwrap_or_default();
        let geom_rel = overrides
            .tol_rel
            .or(tol.geom_rel)
            .unwrap_or(GEOMETRIC_RATIO_TOL);
        let min_g = tol.min_g.unwrap_or(DEFAULT_MIN_G);

        let depth = overrides.depth.or(file.depth).or(fractal_cfg.depth);
        let h = file.h.unwrap_or(1.0);
        let output_path = overrides
            .out
            .clone()
            .or_else(|| file.output_path.as_ref().map(PathBuf::from));

        Ok(Job {
            fractal,
            profile,
            sweep,
            band,
            depth,
            h,
            geom_rel,
            min_g,
            output_path,
        })
    }

    pub fn require_output(&self) -> Result<&Path, CliError> {
        self.output_path
            .as_deref()
            .ok_or_else(|| CliError::Validation("an output path is required (--out)".into()))
    }

    pub fn require_sweep(&self) -> Result<&SweepGrid, CliError> {
        self.sweep
            .as_ref()
            .ok_or_else(|| CliError::Validation("this mode requires a sweep".into()))
    }

    /// Modes acting on one network need exactly one of fractal/profile.
    pub fn require_one_network(&self) -> Result<(), CliError> {
        match (&self.fractal, &self.profile) {
            (Some(_), Some(_)) => Err(CliError::Validation(
                "supply exactly one of fractal or profile, not both".into(),
            )),
            (None, None) => Err(CliError::Validation(
                "supply fractal parameters or a diffusion profile".into(),
            )),
            _ => Ok(()),
        }
    }
}
