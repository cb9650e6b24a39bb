//! Deterministic file exports: Bode CSV, circuit netlists and JSON
//! reports. All numeric text round-trips back to the exact f64 value,
//! files end with a trailing newline and use LF endings, and writes go
//! through a temp-then-rename step.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use cauer_core::{BodeTable, FitReport, LadderSpec};
use serde::Serialize;

use crate::CliError;

/// 17 significant digits: enough to reconstruct any f64 exactly.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// Writes bytes atomically: temp file in the same directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp_path = Path::new(&tmp);
    fs::write(tmp_path, bytes)
        .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", tmp_path.display())))?;
    fs::rename(tmp_path, path)
        .map_err(|e| CliError::Validation(format!("cannot rename into {}: {e}", path.display())))?;
    Ok(())
}

/// CSV schema: `omega,re_h,im_h,mag_h,phase_rad`, one row per grid point.
pub fn bode_csv(table: &BodeTable) -> String {
    let mut out = String::with_capacity(64 * (table.len() + 1));
    out.push_str("omega,re_h,im_h,mag_h,phase_rad\n");
    for (omega, h) in table.iter() {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_f64(omega),
            fmt_f64(h.re),
            fmt_f64(h.im),
            fmt_f64(h.norm()),
            fmt_f64(h.arg()),
        );
    }
    out
}

/// Line-oriented netlist: `R<k> n<k-1> n<k> <ohms>` and `C<k> n<k> 0
/// <farads>`; `n0` is the driven port and `0` is ground. The header
/// comment records how the ladder was generated.
pub fn netlist(ladder: &LadderSpec, header: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "* {header}");
    for (k, (&r, &c)) in ladder
        .resistances()
        .iter()
        .zip(ladder.capacitances().iter())
        .enumerate()
    {
        let cell = k + 1;
        let _ = writeln!(out, "R{cell} n{k} n{cell} {}", fmt_f64(r));
        let _ = writeln!(out, "C{cell} n{cell} 0 {}", fmt_f64(c));
    }
    out
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialization");
    text.push('\n');
    text
}

#[derive(Serialize)]
pub struct LadderJson {
    pub schema: u32,
    pub depth: usize,
    pub resistances: Vec<f64>,
    pub capacitances: Vec<f64>,
}

impl LadderJson {
    pub fn new(ladder: &LadderSpec) -> Self {
        Self {
            schema: 1,
            depth: ladder.depth(),
            resistances: ladder.resistances().to_vec(),
            capacitances: ladder.capacitances().to_vec(),
        }
    }
}

#[derive(Serialize)]
pub struct ProfileJson {
    pub schema: u32,
    pub beta0: f64,
    pub gamma0: f64,
    pub lambda_r: f64,
    pub lambda_c: f64,
    pub h: f64,
}

#[derive(Serialize)]
pub struct BandJson {
    pub omega_low: f64,
    pub omega_high: f64,
}

#[derive(Serialize)]
pub struct FitReportJson {
    pub schema: u32,
    pub nu_fitted: f64,
    pub c_fitted: f64,
    pub nu_predicted: Option<f64>,
    pub band: BandJson,
    pub rms_log_residual: f64,
    pub regime_min_g: Option<f64>,
}

impl FitReportJson {
    pub fn new(report: &FitReport) -> Self {
        Self {
            schema: 1,
            nu_fitted: report.nu_fitted,
            c_fitted: report.c_fitted,
            nu_predicted: report.nu_predicted,
            band: BandJson {
                omega_low: report.band.0,
                omega_high: report.band.1,
            },
            rms_log_residual: report.rms_log_residual,
            regime_min_g: report.regime_min_g,
        }
    }
}

#[derive(Serialize)]
pub struct ErrorJson {
    pub schema: u32,
    pub error: ErrorBody,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}
