//! `cauer` — synthesize Cauer RC ladders, export their frequency
//! response, identify fractional exponents, convert between ladders and
//! diffusion profiles, and run the numerical verification suite.

mod config;
mod export;
mod verify;

use std::process::ExitCode;

use cauer_core::{
    bode_sweep, exponent_report, generate_fractal, ladder_from_profile, profile_from_ladder,
    Error as CoreError, LadderSpec,
};
use clap::{Parser, Subcommand};

use config::{Job, Overrides};
use export::{
    bode_csv, netlist, to_json_string, write_atomic, ErrorBody, ErrorJson, FitReportJson,
    LadderJson, ProfileJson,
};

#[derive(Debug)]
pub enum CliError {
    /// Bad configuration, unusable arguments or filesystem trouble.
    Validation(String),
    /// The computation itself reported a diagnostic (pole, singular
    /// frequency, empty band, ...).
    Numerical(CoreError),
    /// One or more verification checks failed.
    ChecksFailed { failed: usize },
}

impl CliError {
    pub(crate) fn validation_from_core(err: CoreError) -> Self {
        CliError::Validation(err.to_string())
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "Validation",
            CliError::Numerical(err) => err.kind(),
            CliError::ChecksFailed { .. } => "VerificationFailed",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Validation(msg) => msg.clone(),
            CliError::Numerical(err) => err.to_string(),
            CliError::ChecksFailed { failed } => {
                format!("{failed} verification check(s) failed")
            }
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Numerical(_) | CliError::ChecksFailed { .. } => 2,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::InvalidParameter { .. }
            | CoreError::DepthTooSmall { .. }
            | CoreError::LengthMismatch { .. }
            | CoreError::EmptyTerms => CliError::Validation(err.to_string()),
            other => CliError::Numerical(other),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "cauer",
    version,
    about = "Cauer RC ladder synthesis, transfer functions and fractional-exponent identification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a ladder netlist plus a JSON echo of the element values
    Synthesize(Overrides),
    /// Sweep H(j omega) and write the response as CSV
    Bode(Overrides),
    /// Fit the power-law exponent over a band and compare the prediction
    Exponent(Overrides),
    /// Convert a diffusion profile to a ladder, or a fractal ladder to
    /// its profile, and write the counterpart as JSON
    Map(Overrides),
    /// Run the numerical invariant suite and write a pass/fail report
    Verify(Overrides),
}

/// Builds the network a job describes, along with a netlist header line
/// recording the generator parameters.
fn resolve_ladder(job: &Job) -> Result<(LadderSpec, String), CliError> {
    job.require_one_network()?;
    if let Some(params) = &job.fractal {
        let ladder = generate_fractal(params)?;
        let header = format!(
            "fractal cauer ladder: r1={} c1={} sigma={} rho={} depth={}",
            params.r1, params.c1, params.sigma, params.rho, params.depth
        );
        return Ok((ladder, header));
    }
    let profile = job.profile.as_ref().expect("one network is present");
    let depth = job
        .depth
        .ok_or_else(|| CliError::Validation("profile synthesis requires depth".into()))?;
    let ladder = ladder_from_profile(profile, depth)?;
    let header = format!(
        "cauer ladder from diffusion profile: beta0={} gamma0={} lambda_r={} lambda_c={} h={} depth={}",
        profile.beta0, profile.gamma0, profile.lambda_r, profile.lambda_c, profile.h, depth
    );
    Ok((ladder, header))
}

fn run_synthesize(job: &Job) -> Result<(), CliError> {
    let out = job.require_output()?.to_path_buf();
    let (ladder, header) = resolve_ladder(job)?;
    write_atomic(&out, netlist(&ladder, &header).as_bytes())?;
    let echo_path = {
        let mut os = out.into_os_string();
        os.push(".json");
        std::path::PathBuf::from(os)
    };
    write_atomic(
        &echo_path,
        to_json_string(&LadderJson::new(&ladder)).as_bytes(),
    )?;
    Ok(())
}

fn run_bode(job: &Job) -> Result<(), CliError> {
    let out = job.require_output()?.to_path_buf();
    let grid = job.require_sweep()?;
    let (ladder, _) = resolve_ladder(job)?;
    let (table, diagnostics) = bode_sweep(&ladder, grid);
    write_atomic(&out, bode_csv(&table).as_bytes())?;
    if let Some(diag) = diagnostics.into_iter().next() {
        // the valid points are already on disk; surface the first pole
        return Err(CliError::Numerical(diag.error));
    }
    Ok(())
}

fn run_exponent(job: &Job) -> Result<(), CliError> {
    let out = job.require_output()?.to_path_buf();
    let grid = job.require_sweep()?;
    let params = job
        .fractal
        .as_ref()
        .ok_or_else(|| CliError::Validation("exponent mode requires fractal parameters".into()))?;
    let ladder = generate_fractal(params)?;
    let (table, _) = bode_sweep(&ladder, grid);
    let report = exponent_report(params, &table, job.band, job.min_g)?;
    write_atomic(&out, to_json_string(&FitReportJson::new(&report)).as_bytes())?;
    Ok(())
}

fn run_map(job: &Job) -> Result<(), CliError> {
    let out = job.require_output()?.to_path_buf();
    job.require_one_network()?;
    if let Some(profile) = &job.profile {
        let depth = job
            .depth
            .ok_or_else(|| CliError::Validation("profile -> ladder requires depth".into()))?;
        let ladder = ladder_from_profile(profile, depth)?;
        write_atomic(&out, to_json_string(&LadderJson::new(&ladder)).as_bytes())?;
        return Ok(());
    }
    let params = job.fractal.as_ref().expect("one network is present");
    let ladder = generate_fractal(params)?;
    let profile = profile_from_ladder(&ladder, job.h, job.geom_rel)?;
    let json = ProfileJson {
        schema: 1,
        beta0: profile.beta0,
        gamma0: profile.gamma0,
        lambda_r: profile.lambda_r,
        lambda_c: profile.lambda_c,
        h: profile.h,
    };
    write_atomic(&out, to_json_string(&json).as_bytes())?;
    Ok(())
}

fn run_verify(job: &Job) -> Result<(), CliError> {
    let report = verify::run_suite();
    for chk in &report.checks {
        println!(
            "{}: {} (max_error {:.3e}, tolerance {:.3e}, {} cases)",
            if chk.pass { "PASS" } else { "FAIL" },
            chk.name,
            chk.max_error,
            chk.tolerance,
            chk.cases
        );
    }
    if let Some(out) = &job.output_path {
        write_atomic(out, to_json_string(&report).as_bytes())?;
    }
    if report.all_pass {
        Ok(())
    } else {
        let failed = report.checks.iter().filter(|c| !c.pass).count();
        Err(CliError::ChecksFailed { failed })
    }
}

fn dispatch(command: &Command) -> Result<(), CliError> {
    let overrides = match command {
        Command::Synthesize(o)
        | Command::Bode(o)
        | Command::Exponent(o)
        | Command::Map(o)
        | Command::Verify(o) => o,
    };
    let job = Job::resolve(overrides)?;
    match command {
        Command::Synthesize(_) => run_synthesize(&job),
        Command::Bode(_) => run_bode(&job),
        Command::Exponent(_) => run_exponent(&job),
        Command::Map(_) => run_map(&job),
        Command::Verify(_) => run_verify(&job),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        // usage problems are validation failures, not numerical ones
        Err(e) => {
            let doc = ErrorJson {
                schema: 1,
                error: ErrorBody {
                    kind: "Validation".to_string(),
                    message: e.to_string(),
                },
            };
            eprintln!("{}", serde_json::to_string(&doc).expect("error serialization"));
            return ExitCode::from(1);
        }
    };
    match dispatch(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let doc = ErrorJson {
                schema: 1,
                error: ErrorBody {
                    kind: err.kind().to_string(),
                    message: err.message(),
                },
            };
            eprintln!("{}", serde_json::to_string(&doc).expect("error serialization"));
            ExitCode::from(err.exit_code())
        }
    }
}
