//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report is always printed; the
//! process exits non-zero if any criterion fails.

use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, LN_2, PI, TAU};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spirallike::analysis::{
    beta_trace, decade_schedule, default_gap_threshold, detect_maximal_sector, estimate_max_jump,
    goodman_check, growth_exponent, hansen_ratio, spirallikeness_margin, PolarGrid,
};
use spirallike::cli::{run, Cli};
use spirallike::correspondence::{spirallike_of, starlike_of};
use spirallike::gallery::{
    c0_constant, counterexample_for, hansen_build, lemma_c_margins, q_function, wilken_feng_bound,
    wilken_feng_g, ClosedFormFunction, HansenParams,
};
use spirallike::geometry::continuous_arg_lambda;
use spirallike::{Atom, BoundaryMeasure, DensityKnot, SpiralAngle, SpiralFunction};

type Check = Result<(bool, String), Box<dyn std::error::Error>>;
type Criterion = (&'static str, fn() -> Check);

fn angle(lambda: f64) -> SpiralAngle {
    SpiralAngle::new(lambda).expect("valid angle")
}

fn random_disk_point(rng: &mut ChaCha8Rng, r_max: f64) -> Complex64 {
    let r = r_max * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(0.0..TAU))
}

/// Atomic probability-like measure with `n` atoms of total mass 2π.
fn random_atomic_measure(rng: &mut ChaCha8Rng, n: usize) -> BoundaryMeasure {
    let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut atoms: Vec<(f64, f64)> = weights
        .iter()
        .map(|w| (rng.gen_range(0.0..TAU), TAU * w / total))
        .collect();
    atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
    BoundaryMeasure::from_atoms(&atoms).expect("valid random measure")
}

fn within_budget(elapsed: Duration, budget: f64) -> bool {
    elapsed.as_secs_f64() < budget
}

/// 1. The uniform measure reproduces the identity for every λ.
fn identity_law() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for lambda in [0.0, 0.5, -0.5, 1.2, -1.2] {
        let f = SpiralFunction::from_measure(BoundaryMeasure::uniform(), angle(lambda));
        for _ in 0..200 {
            let z = random_disk_point(&mut rng, 0.999);
            worst = worst.max((f.evaluate(z)? - z).norm());
        }
    }
    let elapsed = start.elapsed();
    Ok((
        worst <= 1e-10 && within_budget(elapsed, 1.0),
        format!("max |f(z) - z| = {worst:.2e}, {:.3} s", elapsed.as_secs_f64()),
    ))
}

/// 2. A single atom of mass 2π at λ = 0 is the Koebe function.
fn koebe_exactness() -> Check {
    let f = SpiralFunction::from_measure(BoundaryMeasure::from_atoms(&[(0.0, TAU)])?, angle(0.0));
    let half = Complex64::new(0.5, 0.0);
    let value_err = (f.evaluate(half)? - 2.0).norm();
    let deriv_err = (f.log_derivative(half)? - 3.0).norm();
    let coeffs = f.taylor_coefficients(20, 0.5)?;
    let coeff_err = coeffs
        .iter()
        .enumerate()
        .map(|(k, a)| (a - (k + 1) as f64).norm())
        .fold(0.0, f64::max);
    Ok((
        value_err <= 1e-12 && deriv_err <= 1e-12 && coeff_err <= 1e-8,
        format!("|f(1/2)-2| = {value_err:.1e}, |zf'/f-3| = {deriv_err:.1e}, max |a_n-n| = {coeff_err:.1e}"),
    ))
}

/// 3. Growth exponent of single-atom measures approaches 2cos²λ.
fn growth_law() -> Check {
    let mut pass = true;
    let mut parts = Vec::new();
    for lambda in [0.0, FRAC_PI_4, -FRAC_PI_6] {
        let start = Instant::now();
        let a = angle(lambda);
        let f = SpiralFunction::from_measure(BoundaryMeasure::from_atoms(&[(0.0, TAU)])?, a);
        let report = growth_exponent(&f, a, &decade_schedule(6, 8)?)?;
        let e = report.last_exponent();
        let target = 2.0 * lambda.cos().powi(2);
        let elapsed = start.elapsed();
        pass &= (e - target).abs() <= 0.05 && within_budget(elapsed, 5.0);
        parts.push(format!("λ={lambda:.3}: E={e:.4} vs {target:.4} ({:.2} s)", elapsed.as_secs_f64()));
    }
    Ok((pass, parts.join("; ")))
}

/// 4. The boundary trace recovers the measure and its largest jump.
fn beta_recovery() -> Check {
    let measure = BoundaryMeasure::new(
        vec![Atom { t: 0.0, jump: PI }, Atom { t: FRAC_PI_2, jump: FRAC_PI_2 }],
        vec![DensityKnot { t: 0.0, value: 0.25 }],
    )?;
    let atoms: Vec<f64> = measure.atoms().iter().map(|a| a.t).collect();
    let mut pass = true;
    let mut parts = Vec::new();
    for lambda in [0.0, 0.7] {
        let a = angle(lambda);
        let f = SpiralFunction::from_measure(measure.clone(), a);
        let trace = beta_trace(&f, a, 1024, &[1.0 - 1e-6])?;
        let h = trace.spacing();
        let mut worst = 0.0f64;
        for (&t, &b) in trace.t_samples.iter().zip(&trace.beta_values) {
            let near_atom = atoms.iter().any(|&s| {
                let d = (t - s).rem_euclid(TAU);
                d.min(TAU - d) < 1.5 * h
            });
            if !near_atom {
                worst = worst.max((b + measure.mean_offset() - measure.beta_at(t)).abs());
            }
        }
        let jump = estimate_max_jump(&trace, default_gap_threshold(&trace))?.jump;
        pass &= worst <= 0.02 && (jump - PI).abs() <= 0.02;
        parts.push(format!("λ={lambda}: max trace error {worst:.1e}, jump {jump:.5}"));
    }
    Ok((pass, parts.join("; ")))
}

/// 5. The starlike/spirallike correspondence and its consequences.
fn correspondence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = angle(0.9);
    let g = SpiralFunction::from_measure(random_atomic_measure(&mut rng, 4), SpiralAngle::STARLIKE);
    let f = spirallike_of(&g, a)?;
    let back = starlike_of(&f, a)?;

    let mut roundtrip = 0.0f64;
    for _ in 0..100 {
        let z = random_disk_point(&mut rng, 0.999);
        roundtrip = roundtrip.max((back.log_f_over_z(z)? - g.log_f_over_z(z)?).norm());
    }

    let mut arg_gap = 0.0f64;
    let n = 4000;
    for k in 0..8 {
        let theta = TAU * k as f64 / 8.0 + 0.1;
        let radius: Vec<Complex64> =
            (0..=n).map(|j| Complex64::from_polar(0.999 * j as f64 / n as f64, theta)).collect();
        let g_path = radius.iter().map(|&z| g.log_f_over_z(z).map(|l| l.exp())).collect::<Result<Vec<_>, _>>()?;
        let f_path = radius.iter().map(|&z| f.log_f_over_z(z).map(|l| l.exp())).collect::<Result<Vec<_>, _>>()?;
        let arg_g = continuous_arg_lambda(&g_path, &SpiralAngle::STARLIKE)?;
        let arg_f = continuous_arg_lambda(&f_path, &a)?;
        for (x, y) in arg_g.iter().zip(&arg_f) {
            arg_gap = arg_gap.max((x - y).abs());
        }
    }

    let cos2 = a.cos().powi(2);
    let bound = PI * (a.lambda().sin() * a.cos()).abs();
    let mut modulus_excess = f64::NEG_INFINITY;
    for _ in 0..2000 {
        let z = random_disk_point(&mut rng, 0.999);
        let gap = (f.log_f_over_z(z)?.re - cos2 * g.log_f_over_z(z)?.re).abs();
        modulus_excess = modulus_excess.max(gap - bound);
    }
    Ok((
        roundtrip <= 1e-12 && arg_gap <= 1e-10 && modulus_excess <= 0.0,
        format!(
            "roundtrip {roundtrip:.1e}, argument gap {arg_gap:.1e}, modulus bound slack {:.3}",
            -modulus_excess
        ),
    ))
}

/// 6. The function g₀ = log(1/(1-z))/(1-z).
fn g0_certification() -> Check {
    let g = SpiralFunction::from_closed_form(ClosedFormFunction::G0);
    let grid = PolarGrid::new(256, 4096, 0.999)?;
    let margin = spirallikeness_margin(&g, SpiralAngle::STARLIKE, &grid)?;
    let bound = 0.5 / LN_2 - 0.5;

    let trace = beta_trace(&g, SpiralAngle::STARLIKE, 1024, &[1.0 - 1e-6])?;
    let jump = estimate_max_jump(&trace, default_gap_threshold(&trace))?.jump;

    let coeffs = g.taylor_coefficients(50, spirallike::representation::default_coefficient_radius(50))?;
    let mut harmonic = 0.0;
    let mut coeff_err = 0.0f64;
    for (k, a) in coeffs.iter().enumerate() {
        harmonic += 1.0 / (k + 1) as f64;
        coeff_err = coeff_err.max((a - harmonic).norm());
    }
    Ok((
        margin >= bound && (jump - PI).abs() <= 0.03 && coeff_err <= 1e-8,
        format!("margin {margin:.6} ≥ {bound:.6}, jump {jump:.4}, max |a_n - H_n| = {coeff_err:.1e}"),
    ))
}

/// 7. The auxiliary function Q and the threshold constant C₀.
fn q_and_c0() -> Check {
    let q_small = q_function(1e-6)?;
    let q_right = q_function(FRAC_PI_2 - 1e-6)?;
    let report = c0_constant(100_000)?;
    let big_c = 2.0 * E * E;
    let (p_margin, q_margin) = lemma_c_margins(big_c, 256, 256)?;
    Ok((
        (2.0 - 1e-3..=2.0).contains(&q_small)
            && q_right <= 1e-2
            && report.sup_q <= 2.0 + 1e-9
            && (report.c0 - 14.778).abs() <= 1e-3
            && p_margin > 0.0
            && q_margin > 0.0,
        format!(
            "Q(1e-6) = {q_small:.6}, Q(π/2-1e-6) = {q_right:.1e}, sup Q = {:.10}, C₀ = {:.6}, margins ({p_margin:.3e}, {q_margin:.3e})",
            report.sup_q, report.c0
        ),
    ))
}

/// 8. Re G ≥ 1/(2 log 2) for G(z) = -z/((1-z) log(1-z)).
fn wilken_feng() -> Check {
    let radial = 512;
    let angular = 2048;
    let mut min = f64::INFINITY;
    for i in 0..=radial {
        let r = 0.9999 * i as f64 / radial as f64;
        for j in 0..angular {
            let z = Complex64::from_polar(r, TAU * j as f64 / angular as f64);
            min = min.min(wilken_feng_g(z)?.re);
        }
    }
    let bound = wilken_feng_bound();
    Ok((min >= bound - 1e-9, format!("min Re G = {min:.9}, bound {bound:.9}")))
}

/// 9. The spirallike Hansen partner outgrows (1-r)^{-A cos²λ/π}.
fn hansen_counterexample() -> Check {
    let start = Instant::now();
    let lambda = FRAC_PI_4;
    let a = angle(lambda);
    let f = counterexample_for(a, PI, 1.0, 0.3)?;

    let config = Cli::try_parse_from([
        "spirallike".to_string(),
        "verify".into(),
        "--gallery".into(),
        "hansen".into(),
        format!("--lambda={lambda}"),
        format!("--A={PI}"),
        "--beta-exp=1".into(),
        "--c=0.3".into(),
    ])?
    .into_config()?;
    let (mut out, mut log) = (Vec::new(), Vec::new());
    let code = run(&config, &mut out, &mut log)?;

    let q0 = PI * a.cos().powi(2) / PI;
    let ratios = hansen_ratio(&f, q0, &decade_schedule(2, 8)?)?;
    let values: Vec<f64> = ratios.iter().map(|&(_, v)| v).collect();
    let increasing = values.windows(2).all(|w| w[1] > w[0]);
    let growth = values[values.len() - 1] / values[0];

    let xs: Vec<f64> = ratios.iter().map(|&(r, _)| (-(1.0 - r).ln()).ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let slope = least_squares_slope(&xs, &ys);
    let target = a.cos().powi(2);
    let elapsed = start.elapsed();
    Ok((
        code == 0 && increasing && growth > 1.5 && (slope - target).abs() <= 0.15 && within_budget(elapsed, 10.0),
        format!(
            "verify exit {code}, ratio increasing {increasing}, last/first {growth:.3}, slope {slope:.4} vs {target:.2}, {:.2} s",
            elapsed.as_secs_f64()
        ),
    ))
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// 10. Grid margins of accepted Hansen functions respect the proven bound.
fn hansen_margin() -> Check {
    let grid = PolarGrid::new(64, 512, 0.9999)?;
    let mut pass = true;
    let mut worst = f64::INFINITY;
    for (alpha, beta_exp, c) in [(1.0, 1.0, 0.3), (1.5, 1.0, 0.2), (0.5, 2.0, 0.25), (1.9, 0.1, 0.1)] {
        let params = HansenParams::new(alpha, beta_exp, c)?;
        let g = SpiralFunction::from_closed_form(hansen_build(params));
        let margin = spirallikeness_margin(&g, SpiralAngle::STARLIKE, &grid)?;
        let slack = margin - params.margin_bound();
        pass &= slack >= -1e-6;
        worst = worst.min(slack);
    }
    Ok((pass, format!("smallest margin - bound = {worst:.3e} over 4 parameter sets")))
}

/// 11. |arg(g/z)| ≤ 2 arcsin|z| for starlike g.
fn goodman_bound() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let grid = PolarGrid::new(128, 512, 0.999)?;
    let functions = [
        ("identity", SpiralFunction::identity()),
        ("koebe", SpiralFunction::koebe()),
        ("g0", SpiralFunction::from_closed_form(ClosedFormFunction::G0)),
        ("atomic-3", SpiralFunction::from_measure(random_atomic_measure(&mut rng, 3), SpiralAngle::STARLIKE)),
        ("atomic-6", SpiralFunction::from_measure(random_atomic_measure(&mut rng, 6), SpiralAngle::STARLIKE)),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, g) in &functions {
        let excess = goodman_check(g, &grid)?;
        pass &= excess <= 1e-9;
        parts.push(format!("{name} {excess:.2e}"));
    }
    Ok((pass, format!("max excess: {}", parts.join(", "))))
}

/// 12. Maximal sectors attached to the largest jump.
fn sector_detection() -> Check {
    let koebe = detect_maximal_sector(&SpiralFunction::koebe(), SpiralAngle::STARLIKE)?.ok_or("no sector for Koebe")?;
    let two_atoms = BoundaryMeasure::from_atoms(&[(0.0, PI), (PI, PI)])?;
    let slit = detect_maximal_sector(
        &SpiralFunction::from_measure(two_atoms, SpiralAngle::STARLIKE),
        SpiralAngle::STARLIKE,
    )?
    .ok_or("no sector for the two-atom measure")?;
    let a = angle(FRAC_PI_4);
    let spiral = detect_maximal_sector(&spirallike_of(&SpiralFunction::koebe(), a)?, a)?
        .ok_or("no sector for the spirallike Koebe function")?;

    let koebe_ok = koebe.sector.center_angle().abs() <= 1e-6 && (koebe.sector.opening() - TAU).abs() <= 0.02;
    let slit_ok = (slit.sector.opening() - PI).abs() <= 0.02;
    let spiral_ok = (spiral.sector.opening() - TAU).abs() <= 0.02;
    Ok((
        koebe_ok && slit_ok && spiral_ok,
        format!(
            "Koebe center {:.1e} opening {:.4}; two-atom opening {:.4}; λ=π/4 Koebe opening {:.4}",
            koebe.sector.center_angle(),
            koebe.sector.opening(),
            slit.sector.opening(),
            spiral.sector.opening()
        ),
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("identity law", identity_law),
        ("Koebe exactness", koebe_exactness),
        ("growth law", growth_law),
        ("boundary function recovery", beta_recovery),
        ("correspondence", correspondence),
        ("g0 certification", g0_certification),
        ("Q and C0", q_and_c0),
        ("Wilken-Feng bound", wilken_feng),
        ("Hansen counterexample", hansen_counterexample),
        ("Hansen validity margin", hansen_margin),
        ("Goodman bound", goodman_bound),
        ("sector detection", sector_detection),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let (pass, detail) = match check() {
            Ok(outcome) => outcome,
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        println!("{} {:>2} {name}: {detail}", if pass { "PASS" } else { "FAIL" }, k + 1);
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
