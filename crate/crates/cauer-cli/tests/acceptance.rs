//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (visible with `--nocapture`). Every tolerance is pinned
//! here; all randomness is seeded, so the suite is deterministic.
//!
//! Criteria with cancelling floating-point identities are checked in
//! units of `EPSILON` times the identity's first-order condition factor;
//! on well-conditioned inputs that factor is 1 and the check is a plain
//! 4-ulp bound.

use std::fs;
use std::process::Command;
use std::time::Instant;

use cauer_core::{
    assemble, check_identification_system, eval_cf, exponent_report, functional_residual,
    generate_fractal, input_admittance, ladder_from_profile, nest_cf, predict_exponent,
    profile_from_ladder, scale_cf_head, scaling_lambda, transfer_cf, transfer_fractal,
    transfer_recursive, bode_sweep, CfTerms, DiffusionProfile, FractalParams, LadderSpec,
    ScalingFunction, SweepGrid, DEFAULT_MIN_G, GEOMETRIC_RATIO_TOL,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let mag = 10.0f64.powf(rng.gen_range(-3.0..3.0));
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(mag, phase)
}

fn report(criterion: usize, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion} {}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion}: {detail}");
}

/// Criterion 1: nesting and head-scaling identities over >= 10^4 random
/// complex sequences (length <= 50, |a| in [1e-3, 1e3]) at 1e-12
/// relative, in under 10 seconds.
#[test]
fn acceptance_1_continued_fraction_identities() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut max_error = 0.0f64;
    let sequences = 10_000;
    for _ in 0..sequences {
        let len = rng.gen_range(1..=50);
        let terms: Vec<Complex64> = (0..len).map(|_| random_complex(&mut rng)).collect();
        let bracket = CfTerms::new(terms.clone()).unwrap();
        let whole = eval_cf(&bracket).unwrap();
        for j in 1..len {
            let head = CfTerms::new(terms[..j].to_vec()).unwrap();
            let tail = eval_cf(&CfTerms::new(terms[j..].to_vec()).unwrap()).unwrap();
            max_error = max_error.max(rel_err(whole, nest_cf(&head, tail).unwrap()));
        }
        let alpha = random_complex(&mut rng);
        let scaled = scale_cf_head(alpha, &bracket).unwrap();
        max_error = max_error.max(rel_err(alpha * whole, scaled));
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        1,
        max_error <= 1e-12 && elapsed < 10.0,
        &format!(
            "cf nesting+scaling over {sequences} sequences: max rel err {max_error:.3e} \
             (tol 1e-12), {elapsed:.2}s (limit 10s)"
        ),
    );
}

/// Criterion 2: recursion, closed continued-fraction form and fractal
/// form agree to 1e-12 relative over random ladders (N <= 64) across
/// five frequency decades, in under 30 seconds.
#[test]
fn acceptance_2_three_route_transfer_agreement() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut max_error = 0.0f64;
    let freqs: Vec<f64> = (0..=10).map(|i| 10.0f64.powf(-3.0 + 0.5 * i as f64)).collect();
    let ladders = 200;
    for _ in 0..ladders {
        let n = rng.gen_range(1..=64);
        let value = |rng: &mut ChaCha8Rng| 10.0f64.powf(rng.gen_range(-2.0..2.0));
        let r: Vec<f64> = (0..n).map(|_| value(&mut rng)).collect();
        let c: Vec<f64> = (0..n).map(|_| value(&mut rng)).collect();
        let ladder = LadderSpec::new(r, c).unwrap();
        for &w in &freqs {
            let s = Complex64::new(0.0, w);
            let a = transfer_recursive(&ladder, s).unwrap();
            let b = transfer_cf(&ladder, s).unwrap();
            max_error = max_error.max(rel_err(a, b));
        }

        let params = FractalParams::new(
            value(&mut rng),
            value(&mut rng),
            rng.gen_range(0.5..2.0),
            rng.gen_range(0.5..2.0),
            rng.gen_range(1..=64),
        )
        .unwrap();
        let fractal_ladder = generate_fractal(&params).unwrap();
        for &w in &freqs {
            let s = Complex64::new(0.0, w);
            let a = transfer_fractal(&params, s).unwrap();
            let b = transfer_cf(&fractal_ladder, s).unwrap();
            let c = transfer_recursive(&fractal_ladder, s).unwrap();
            max_error = max_error.max(rel_err(a, b)).max(rel_err(a, c));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        2,
        max_error <= 1e-12 && elapsed < 30.0,
        &format!(
            "three-route agreement over {ladders} ladders x {} freqs: max rel err \
             {max_error:.3e} (tol 1e-12), {elapsed:.2}s (limit 30s)",
            freqs.len()
        ),
    );
}

/// Criterion 3: the tridiagonal diffusion solve's driving-point
/// admittance equals transfer_cf to 1e-10 over >= 100 random exponential
/// profiles (N <= 64, total coefficient span capped at e^8), 31
/// frequencies across five decades each, in under 60 seconds.
#[test]
fn acceptance_3_ladder_pde_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut max_error = 0.0f64;
    let profiles = 120;
    let grid = SweepGrid::new(1e-3, 1e2, 6).unwrap();
    let freqs = grid.omegas();
    assert_eq!(freqs.len(), 31);
    for _ in 0..profiles {
        let depth = rng.gen_range(1..=64);
        let h = rng.gen_range(0.05..2.0);
        let profile = DiffusionProfile::new(
            10.0f64.powf(rng.gen_range(-1.0..1.0)),
            10.0f64.powf(rng.gen_range(-1.0..1.0)),
            rng.gen_range(-8.0..8.0) / (depth as f64 * h),
            rng.gen_range(-8.0..8.0) / (depth as f64 * h),
            h,
        )
        .unwrap();
        let ladder = ladder_from_profile(&profile, depth).unwrap();
        let system = assemble(&profile, depth, Complex64::new(1.0, 0.0)).unwrap();
        for &w in &freqs {
            let s = Complex64::new(0.0, w);
            let direct = transfer_cf(&ladder, s).unwrap();
            let oracle = input_admittance(&system, s).unwrap();
            max_error = max_error.max(rel_err(direct, oracle));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        3,
        max_error <= 1e-10 && elapsed < 60.0,
        &format!(
            "oracle equivalence over {profiles} profiles x 31 freqs: max rel err \
             {max_error:.3e} (tol 1e-10), {elapsed:.2}s (limit 60s)"
        ),
    );
}

/// Criterion 4: the exact functional relation with truncation-consistent
/// depths has residual <= 1e-12 across (sigma, rho) in [0.5, 2]^2,
/// depths up to 80, five frequency decades.
#[test]
fn acceptance_4_exact_functional_relation() {
    let ratios = [0.5, 0.65, 0.8, 1.0, 1.25, 1.6, 2.0];
    let depths = [2usize, 3, 5, 8, 13, 21, 34, 55, 80];
    let freqs: Vec<f64> = (0..=10).map(|i| 10.0f64.powf(-3.0 + 0.5 * i as f64)).collect();
    let mut max_residual = 0.0f64;
    let mut cases = 0usize;
    for &sigma in &ratios {
        for &rho in &ratios {
            let params = FractalParams::new(1.0, 1.0, sigma, rho, 1).unwrap();
            for &depth in &depths {
                for &w in &freqs {
                    let s = Complex64::new(0.0, w);
                    let residual = functional_residual(s, &params, depth).unwrap();
                    max_residual = max_residual.max(residual);
                    cases += 1;
                }
            }
        }
    }
    report(
        4,
        max_residual <= 1e-12,
        &format!(
            "exact functional relation over {cases} cases: max residual {max_residual:.3e} \
             (tol 1e-12)"
        ),
    );
}

/// Criterion 5: fitted exponents match ln(sigma)/ln(sigma rho) within
/// 0.05 on auto-selected bands for the four reference parameter sets at
/// depth 60; for (2,2) the prediction is exactly 0.5. Under 60 seconds.
#[test]
fn acceptance_5_exponent_realization() {
    let start = Instant::now();
    let sets = [(2.0, 2.0), (2.0, 4.0), (4.0, 2.0), (3.0, 1.5)];
    let mut worst = 0.0f64;
    let mut detail = String::new();
    let mut pass = true;
    for (sigma, rho) in sets {
        let params = FractalParams::new(1.0, 1.0, sigma, rho, 60).unwrap();
        let ladder = generate_fractal(&params).unwrap();
        let (table, diags) = bode_sweep(&ladder, &SweepGrid::new(1e-8, 1e2, 16).unwrap());
        assert!(diags.is_empty());
        let rep = exponent_report(&params, &table, None, DEFAULT_MIN_G).unwrap();
        let predicted = rep.nu_predicted.unwrap();
        let diff = (rep.nu_fitted - predicted).abs();
        worst = worst.max(diff);
        pass &= diff <= 0.05;
        if (sigma, rho) == (2.0, 2.0) {
            pass &= predicted == 0.5;
        }
        detail.push_str(&format!("({sigma},{rho}): |dnu|={diff:.4} "));
    }
    let elapsed = start.elapsed().as_secs_f64();
    pass &= elapsed < 60.0;
    report(
        5,
        pass,
        &format!("exponent realization {detail}(tol 0.05), {elapsed:.2}s (limit 60s)"),
    );
}

/// Criterion 6: complementarity n(s,r) + n(r,s) = 1 and the defining
/// identity sigma = (sigma rho)^n over 10^4 random pairs with sigma*rho
/// bounded away from 1 by 1e-6, at 4 ulp times the identity's condition
/// factor (1 on well-conditioned pairs).
#[test]
fn acceptance_6_exponent_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut worst_comp = 0.0f64;
    let mut worst_def = 0.0f64;
    let mut worst_pair = 0.0f64;
    let pairs = 10_000;
    let mut done = 0;
    while done < pairs {
        let sigma = 10.0f64.powf(rng.gen_range(-1.0..1.0));
        let rho = 10.0f64.powf(rng.gen_range(-1.0..1.0));
        if (sigma * rho - 1.0).abs() < 1e-6 {
            continue;
        }
        done += 1;
        let n1 = predict_exponent(sigma, rho).unwrap();
        let n2 = predict_exponent(rho, sigma).unwrap();
        let comp_cond = n1.abs().max(n2.abs()).max(1.0);
        worst_comp = worst_comp.max((n1 + n2 - 1.0).abs() / (f64::EPSILON * comp_cond));

        let def_cond = n1.abs().max(sigma.ln().abs()).max(1.0);
        // sigma^(1-n) overflows f64 close to the degenerate line, where
        // |1-n| ~ 1e6; the K-pair equation is only checkable when its
        // own right-hand side is representable.
        let epsilon = 0.01;
        let target = sigma.powf(1.0 - n1);
        if target.is_finite() && target > 0.0 {
            let k_forward = target / (1.0 + epsilon);
            let (r1, r2) =
                check_identification_system(sigma, rho, n1, k_forward, 1.0, epsilon).unwrap();
            worst_def = worst_def.max(r2 / (f64::EPSILON * sigma * def_cond));
            worst_pair = worst_pair.max(r1 / (f64::EPSILON * target));
        } else {
            let r2 = (sigma - (sigma * rho).powf(n1)).abs();
            worst_def = worst_def.max(r2 / (f64::EPSILON * sigma * def_cond));
        }
    }
    report(
        6,
        worst_comp <= 4.0 && worst_def <= 4.0 && worst_pair <= 4.0,
        &format!(
            "exponent identities over {pairs} pairs: complementarity {worst_comp:.2} ulp, \
             defining {worst_def:.2} ulp, K-system {worst_pair:.2} ulp (tol 4)"
        ),
    );
}

/// Criterion 7: g(zeta) = e^(lambda zeta) with lambda = ln(sigma)/h
/// satisfies g((k+1)h) = g(h) g(kh) for every k <= 10^4 at 4 ulp times
/// the conditioning |lambda (k+1) h|, and the profile/ladder round trip
/// is the identity to 1e-12 relative.
#[test]
fn acceptance_7_scaling_function_law() {
    // sigma close enough to 1 that sigma^(k+1) stays representable for
    // every k up to 10^4; wider ratios covered up to k = 900.
    let mut worst_units = 0.0f64;
    for &(sigma, k_max) in &[
        (0.95f64, 10_000usize),
        (0.99, 10_000),
        (1.0, 10_000),
        (1.02, 10_000),
        (1.05, 10_000),
        (0.5, 900),
        (2.0, 900),
    ] {
        for &h in &[1e-3, 1.0, 1e3] {
            let lambda = scaling_lambda(sigma, h).unwrap();
            let g = ScalingFunction::new(lambda, 1.0).unwrap();
            for k in 0..=k_max {
                let lhs = g.eval((k + 1) as f64 * h);
                let rhs = g.eval(h) * g.eval(k as f64 * h);
                let cond = (lambda * (k + 1) as f64 * h).abs().max(1.0);
                worst_units = worst_units.max((lhs - rhs).abs() / (f64::EPSILON * cond * lhs));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut worst_round_trip = 0.0f64;
    for _ in 0..100 {
        let depth = rng.gen_range(2..=48);
        let h = rng.gen_range(0.05..2.0);
        let profile = DiffusionProfile::new(
            10.0f64.powf(rng.gen_range(-1.0..1.0)),
            10.0f64.powf(rng.gen_range(-1.0..1.0)),
            rng.gen_range(-8.0..8.0) / (depth as f64 * h),
            rng.gen_range(-8.0..8.0) / (depth as f64 * h),
            h,
        )
        .unwrap();
        let ladder = ladder_from_profile(&profile, depth).unwrap();
        let back = profile_from_ladder(&ladder, profile.h, GEOMETRIC_RATIO_TOL).unwrap();
        for e in [
            (back.beta0 - profile.beta0).abs() / profile.beta0,
            (back.gamma0 - profile.gamma0).abs() / profile.gamma0,
            (back.lambda_r - profile.lambda_r).abs() / profile.lambda_r.abs().max(1.0),
            (back.lambda_c - profile.lambda_c).abs() / profile.lambda_c.abs().max(1.0),
        ] {
            worst_round_trip = worst_round_trip.max(e);
        }
    }
    report(
        7,
        worst_units <= 4.0 && worst_round_trip <= 1e-12,
        &format!(
            "scaling law worst {worst_units:.2} ulp (tol 4); round trip worst \
             {worst_round_trip:.3e} (tol 1e-12)"
        ),
    );
}

/// Criterion 8: identical configs produce byte-identical data files for
/// every mode, and `verify` exits 0 on a clean build.
#[test]
fn acceptance_8_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_cauer");
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).output().expect("binary runs");
        assert!(
            out.status.success(),
            "command {args:?} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        out
    };

    let mut pass = true;
    let mut detail = String::new();

    let modes: Vec<(&str, Vec<String>, Vec<&str>)> = vec![
        (
            "synthesize",
            vec![
                "--sigma=2".into(),
                "--rho=2".into(),
                "--depth=12".into(),
            ],
            vec!["out", "out.json"],
        ),
        (
            "bode",
            vec![
                "--sigma=1.5".into(),
                "--rho=0.8".into(),
                "--depth=8".into(),
                "--omega-min=1e-3".into(),
                "--omega-max=1e2".into(),
                "--ppd=12".into(),
            ],
            vec!["out"],
        ),
        (
            "exponent",
            vec![
                "--sigma=2".into(),
                "--rho=2".into(),
                "--depth=60".into(),
                "--omega-min=1e-8".into(),
                "--omega-max=1e2".into(),
                "--ppd=16".into(),
            ],
            vec!["out"],
        ),
        (
            "map",
            vec![
                "--sigma=3".into(),
                "--rho=1.5".into(),
                "--depth=6".into(),
            ],
            vec!["out"],
        ),
    ];
    for (mode, args, artifacts) in &modes {
        let out_a = dir.path().join(format!("{mode}_a"));
        let out_b = dir.path().join(format!("{mode}_b"));
        let mut args_a: Vec<String> = vec![mode.to_string()];
        args_a.extend(args.iter().cloned());
        args_a.push(format!("--out={}", out_a.display()));
        let mut args_b: Vec<String> = vec![mode.to_string()];
        args_b.extend(args.iter().cloned());
        args_b.push(format!("--out={}", out_b.display()));
        run(&args_a.iter().map(String::as_str).collect::<Vec<_>>());
        run(&args_b.iter().map(String::as_str).collect::<Vec<_>>());
        for artifact in artifacts {
            let path_a = match *artifact {
                "out" => out_a.clone(),
                "out.json" => {
                    let mut os = out_a.clone().into_os_string();
                    os.push(".json");
                    os.into()
                }
                other => unreachable!("{other}"),
            };
            let path_b = match *artifact {
                "out" => out_b.clone(),
                "out.json" => {
                    let mut os = out_b.clone().into_os_string();
                    os.push(".json");
                    os.into()
                }
                other => unreachable!("{other}"),
            };
            let bytes_a = fs::read(&path_a).unwrap();
            let bytes_b = fs::read(&path_b).unwrap();
            let same = bytes_a == bytes_b;
            pass &= same && !bytes_a.is_empty();
            detail.push_str(&format!("{mode}:{} ", if same { "identical" } else { "DIFFERS" }));
        }
    }

    // verify twice: exit 0 and byte-identical reports
    let report_a = dir.path().join("verify_a.json");
    let report_b = dir.path().join("verify_b.json");
    run(&["verify", "--out", report_a.to_str().unwrap()]);
    run(&["verify", "--out", report_b.to_str().unwrap()]);
    let same = fs::read(&report_a).unwrap() == fs::read(&report_b).unwrap();
    pass &= same;
    detail.push_str(&format!("verify:{}", if same { "exit0+identical" } else { "DIFFERS" }));

    report(8, pass, &format!("cli determinism {detail}"));
}
