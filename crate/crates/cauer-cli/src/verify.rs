//! The `verify` mode: a deterministic, seeded run of the crate's
//! numerical invariants, reported check by check.

use cauer_core::{
    assemble, check_identification_system, eval_cf, functional_residual, generate_fractal,
    input_admittance, ladder_from_profile, nest_cf, predict_exponent, profile_from_ladder,
    scale_cf_head, scaling_lambda, transfer_cf, transfer_fractal, transfer_recursive, CfTerms,
    DiffusionProfile, FractalParams, LadderSpec, ScalingFunction, GEOMETRIC_RATIO_TOL,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub max_error: f64,
    pub tolerance: f64,
    pub cases: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub all_pass: bool,
    pub checks: Vec<Check>,
}

fn check(name: &str, tolerance: f64, max_error: f64, cases: usize) -> Check {
    Check {
        name: name.to_string(),
        pass: max_error <= tolerance,
        max_error,
        tolerance,
        cases,
    }
}

fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let mag = 10.0f64.powf(rng.gen_range(-3.0..3.0));
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(mag, phase)
}

fn confrac_identities(rng: &mut ChaCha8Rng) -> Check {
    let mut max_error = 0.0f64;
    let cases = 2000;
    for _ in 0..cases {
        let len = rng.gen_range(1..=50);
        let terms: Vec<Complex64> = (0..len).map(|_| random_complex(rng)).collect();
        let bracket = CfTerms::new(terms.clone()).unwrap();
        let whole = eval_cf(&bracket).unwrap();
        if len > 1 {
            let j = rng.gen_range(1..len);
            let head = CfTerms::new(terms[..j].to_vec()).unwrap();
            let tail = eval_cf(&CfTerms::new(terms[j..].to_vec()).unwrap()).unwrap();
            let nested = nest_cf(&head, tail).unwrap();
            max_error = max_error.max(rel_err(whole, nested));
        }
        let alpha = random_complex(rng);
        let scaled = scale_cf_head(alpha, &bracket).unwrap();
        max_error = max_error.max(rel_err(alpha * whole, scaled));
    }
    check("confrac_identities", 1e-12, max_error, cases)
}

fn random_ladder(rng: &mut ChaCha8Rng, max_depth: usize) -> LadderSpec {
    let n = rng.gen_range(1..=max_depth);
    let value = |rng: &mut ChaCha8Rng| 10.0f64.powf(rng.gen_range(-2.0..2.0));
    let r: Vec<f64> = (0..n).map(|_| value(rng)).collect();
    let c: Vec<f64> = (0..n).map(|_| value(rng)).collect();
    LadderSpec::new(r, c).unwrap()
}

fn three_route_agreement(rng: &mut ChaCha8Rng) -> Check {
    let mut max_error = 0.0f64;
    let cases = 150;
    for _ in 0..cases {
        let ladder = random_ladder(rng, 64);
        for _ in 0..5 {
            let s = Complex64::new(0.0, 10.0f64.powf(rng.gen_range(-3.0..2.0)));
            let a = transfer_recursive(&ladder, s).unwrap();
            let b = transfer_cf(&ladder, s).unwrap();
            max_error = max_error.max(rel_err(a, b));
        }
        let params = FractalParams::new(
            10.0f64.powf(rng.gen_range(-1.0..1.0)),
            10.0f64.powf(rng.gen_range(-1.0..1.0)),
            rng.gen_range(0.5..2.0),
            rng.gen_range(0.5..2.0),
            rng.gen_range(1..=64),
        )
        .unwrap();
        let fractal_ladder = generate_fractal(&params).unwrap();
        for _ in 0..5 {
            let s = Complex64::new(0.0, 10.0f64.powf(rng.gen_range(-3.0..2.0)));
            let a = transfer_fractal(&params, s).unwrap();
            let b = transfer_cf(&fractal_ladder, s).unwrap();
            let c = transfer_recursive(&fractal_ladder, s).unwrap();
            max_error = max_error.max(rel_err(a, b)).max(rel_err(a, c));
        }
    }
    check("three_route_agreement", 1e-12, max_error, cases)
}

fn random_profile(rng: &mut ChaCha8Rng, depth: usize) -> DiffusionProfile {
    let h = rng.gen_range(0.05..2.0);
    let span_r = rng.gen_range(-8.0..8.0);
    let span_c = rng.gen_range(-8.0..8.0);
    DiffusionProfile::new(
        10.0f64.powf(rng.gen_range(-1.0..1.0)),
        10.0f64.powf(rng.gen_range(-1.0..1.0)),
        span_r / (depth as f64 * h),
        span_c / (depth as f64 * h),
        h,
    )
    .unwrap()
}

fn oracle_equivalence(rng: &mut ChaCha8Rng) -> Check {
    let mut max_error = 0.0f64;
    let cases = 60;
    for _ in 0..cases {
        let depth = rng.gen_range(1..=64);
        let profile = random_profile(rng, depth);
        let ladder = ladder_from_profile(&profile, depth).unwrap();
        let system = assemble(&profile, depth, Complex64::new(1.0, 0.0)).unwrap();
        for _ in 0..11 {
            let s = Complex64::new(0.0, 10.0f64.powf(rng.gen_range(-3.0..2.0)));
            let direct = transfer_cf(&ladder, s).unwrap();
            let oracle = input_admittance(&system, s).unwrap();
            max_error = max_error.max(rel_err(direct, oracle));
        }
    }
    check("oracle_equivalence", 1e-10, max_error, cases)
}

fn functional_residuals() -> Check {
    let mut max_error = 0.0f64;
    let mut cases = 0;
    for sigma in [0.5, 0.8, 1.25, 2.0] {
        for rho in [0.5, 0.8, 1.25, 2.0] {
            let params = FractalParams::new(1.0, 1.0, sigma, rho, 1).unwrap();
            for depth in [2, 5, 20, 80] {
                for exp in -2..=2 {
                    let s = Complex64::new(0.0, 10.0f64.powi(exp));
                    max_error = max_error.max(functional_residual(s, &params, depth).unwrap());
                    cases += 1;
                }
            }
        }
    }
    check("functional_residuals", 1e-12, max_error, cases)
}

fn exponent_identities(rng: &mut ChaCha8Rng) -> Check {
    let mut max_units = 0.0f64;
    let cases = 2000;
    let mut done = 0;
    while done < cases {
        let sigma = 10.0f64.powf(rng.gen_range(-1.0..1.0));
        let rho = 10.0f64.powf(rng.gen_range(-1.0..1.0));
        if (sigma * rho - 1.0).abs() < 1e-6 {
            continue;
        }
        done += 1;
        let n1 = predict_exponent(sigma, rho).unwrap();
        let n2 = predict_exponent(rho, sigma).unwrap();
        let comp_cond = n1.abs().max(n2.abs()).max(1.0);
        let comp_units = (n1 + n2 - 1.0).abs() / (f64::EPSILON * comp_cond);
        let (_, r2) = check_identification_system(sigma, rho, n1, 1.0, 1.0, 0.0).unwrap();
        let def_cond = n1.abs().max(sigma.ln().abs()).max(1.0);
        let def_units = r2 / (f64::EPSILON * sigma * def_cond);
        max_units = max_units.max(comp_units).max(def_units);
    }
    // errors in units of EPSILON * conditioning; 4 ulp allowed
    check("exponent_identities", 4.0, max_units, cases)
}

fn scaling_law() -> Check {
    let mut max_units = 0.0f64;
    let mut cases = 0;
    for sigma in [0.95, 0.99, 1.0, 1.02, 1.05] {
        for h in [1e-3, 1.0, 1e3] {
            let lambda = scaling_lambda(sigma, h).unwrap();
            let g = ScalingFunction::new(lambda, 1.0).unwrap();
            for k in [0usize, 1, 2, 3, 7, 10, 100, 999, 5000, 10_000] {
                let lhs = g.eval((k + 1) as f64 * h);
                let rhs = g.eval(h) * g.eval(k as f64 * h);
                let cond = (lambda * (k + 1) as f64 * h).abs().max(1.0);
                max_units = max_units.max((lhs - rhs).abs() / (f64::EPSILON * cond * lhs.abs()));
                cases += 1;
            }
        }
    }
    check("scaling_law", 4.0, max_units, cases)
}

fn profile_round_trip(rng: &mut ChaCha8Rng) -> Check {
    let mut max_error = 0.0f64;
    let cases = 100;
    for _ in 0..cases {
        let depth = rng.gen_range(2..=48);
        let profile = random_profile(rng, depth);
        let ladder = ladder_from_profile(&profile, depth).unwrap();
        let back = profile_from_ladder(&ladder, profile.h, GEOMETRIC_RATIO_TOL).unwrap();
        let errs = [
            (back.beta0 - profile.beta0).abs() / profile.beta0,
            (back.gamma0 - profile.gamma0).abs() / profile.gamma0,
            (back.lambda_r - profile.lambda_r).abs() / profile.lambda_r.abs().max(1.0),
            (back.lambda_c - profile.lambda_c).abs() / profile.lambda_c.abs().max(1.0),
        ];
        for e in errs {
            max_error = max_error.max(e);
        }
    }
    check("profile_round_trip", 1e-12, max_error, cases)
}

/// Runs every check with a fixed seed; the report is byte-deterministic.
pub fn run_suite() -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0cau64 << 8 | 0xe5);
    let checks = vec![
        confrac_identities(&mut rng),
        three_route_agreement(&mut rng),
        oracle_equivalence(&mut rng),
        functional_residuals(),
        exponent_identities(&mut rng),
        scaling_law(),
        profile_round_trip(&mut rng),
    ];
    let all_pass = checks.iter().all(|c| c.pass);
    VerifyReport {
        schema: 1,
        all_pass,
        checks,
    }
}
