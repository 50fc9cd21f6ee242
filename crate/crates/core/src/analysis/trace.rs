//! Boundary traces `β_λ(t) = U_λ(t) + t` and jump estimation.
//!
//! `U_λ` is read off the continuous branch of `log(f/z)`: with `L = log(f/z)`
//! vanishing at 0, the harmonic function `Im L - tan λ · Re L` is the branch
//! of `arg_λ(f/z)` that vanishes at the origin. Along `|z| = r` the sum
//! `U_λ(re^{it}) + t` is strictly increasing in `t` and gains exactly 2π per
//! turn. Its mean over a period is zero, so the trace differs from a
//! measure's `beta_at` by the measure's `mean_offset`.
//!
//! A jump of the boundary function appears at finite `r` as a steep ramp.
//! When the underlying function has a logarithmic cusp (as `g₀` does) the
//! increment across `[t₀ - δ, t₀ + δ]` approaches the jump only like
//! `1/log(1/δ)`, so each candidate carries a ladder of increments over
//! shrinking `δ` and the jump is extrapolated in `x = 1/log(1/δ)`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{arg_lambda_of_log, SpiralAngle};
use crate::numeric::{bisect_increasing, polyfit};
use crate::representation::SpiralFunction;

/// Radius used to locate a jump inside its grid bracket.
const LOCATE_GAP: f64 = 1e-14;
/// Ladder half-widths are `10^{-2 - k/2}` for `k = 0..LADDER_STEPS`.
const LADDER_STEPS: usize = 11;
/// Ratio `(1 - r)/δ` used along the ladder.
const LADDER_RADIUS_RATIO: f64 = 1e-7;
/// At most this many jump candidates are examined.
const MAX_CANDIDATES: usize = 8;
/// Decreases of the trace larger than this are reported as inconsistent.
const MONOTONE_TOLERANCE: f64 = 1e-6;

/// One refinement step of a trace: the radius and the largest change of the
/// trace relative to the previous radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refinement {
    pub radius: f64,
    pub max_delta: f64,
}

/// Increments of the trace across a candidate jump at shrinking widths.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpLadder {
    /// Located position of the ramp's midpoint, in `[0, 2π)`.
    pub location: f64,
    /// Trace increment across the candidate's grid bracket.
    pub raw_increment: f64,
    /// `(δ, r, β(t₀+δ) - β(t₀-δ))`, widest first.
    pub steps: Vec<(f64, f64, f64)>,
    /// Midpoint `(β(t₀+δ) + β(t₀-δ))/2` at the narrowest width.
    pub center: f64,
}

impl JumpLadder {
    /// Jump extrapolated to `δ → 0` by a quadratic least-squares fit in
    /// `x = 1/log(1/δ)`, clamped to `[0, 2π]`.
    pub fn extrapolated(&self) -> f64 {
        let xs: Vec<f64> = self.steps.iter().map(|s| 1.0 / (1.0 / s.0).ln()).collect();
        let ys: Vec<f64> = self.steps.iter().map(|s| s.2).collect();
        polyfit(&xs, &ys, 2)[0].clamp(0.0, TAU)
    }
}

/// Sampled boundary function of a spirallike function.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaTrace {
    pub t_samples: Vec<f64>,
    pub beta_values: Vec<f64>,
    pub radius_used: f64,
    pub refinement_record: Vec<Refinement>,
    pub jump_ladders: Vec<JumpLadder>,
}

impl BetaTrace {
    /// Grid spacing.
    pub fn spacing(&self) -> f64 {
        TAU / self.t_samples.len() as f64
    }
}

/// `β(t_{j+1}) - β(t_{j-1})` with periodic wrap.
fn two_step(values: &[f64], j: usize) -> f64 {
    let n = values.len();
    let next = if j + 1 == n { values[0] + TAU } else { values[j + 1] };
    let prev = if j == 0 { values[n - 1] - TAU } else { values[j - 1] };
    next - prev
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Default detection threshold: ten grid spacings times the median slope of
/// the trace, and never less than ten grid spacings.
pub fn default_gap_threshold(trace: &BetaTrace) -> f64 {
    let h = trace.spacing();
    threshold_for(&trace.beta_values, h)
}

fn threshold_for(values: &[f64], h: f64) -> f64 {
    let slopes: Vec<f64> = (0..values.len()).map(|j| two_step(values, j) / (2.0 * h)).collect();
    (10.0 * h * median(slopes)).max(10.0 * h)
}

/// `β_r(t) = U_λ(re^{it}) + t`.
fn beta_value(f: &SpiralFunction, angle: &SpiralAngle, r: f64, t: f64) -> Result<f64> {
    let log = f.log_f_over_z(Complex64::from_polar(r, t))?;
    let value = arg_lambda_of_log(log, angle) + t;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Refinement(format!("non-finite boundary argument at t = {t}, r = {r}")))
    }
}

/// Samples `β_λ` on `t_grid` equally spaced points at each radius of
/// `r_schedule`; the last radius is the one reported.
pub fn beta_trace(
    f: &SpiralFunction,
    angle: SpiralAngle,
    t_grid: usize,
    r_schedule: &[f64],
) -> Result<BetaTrace> {
    if f.angle() != angle {
        return Err(Error::parameter(format!(
            "function was built for λ = {}, trace requested at λ = {}",
            f.angle().lambda(),
            angle.lambda()
        )));
    }
    if t_grid < 16 {
        return Err(Error::parameter("t grid must have at least 16 points"));
    }
    if r_schedule.is_empty()
        || r_schedule.iter().any(|r| !(*r > 0.0 && *r < 1.0))
        || r_schedule.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(Error::parameter("radius schedule must be strictly increasing in (0, 1)"));
    }
    let h = TAU / t_grid as f64;
    let t_samples: Vec<f64> = (0..t_grid).map(|j| j as f64 * h).collect();

    let mut refinement_record = Vec::with_capacity(r_schedule.len());
    let mut previous: Option<Vec<f64>> = None;
    for &r in r_schedule {
        let values = t_samples
            .par_iter()
            .map(|&t| beta_value(f, &angle, r, t))
            .collect::<Result<Vec<f64>>>()?;
        let max_delta = previous.as_ref().map_or(f64::NAN, |p| {
            p.iter().zip(&values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        });
        refinement_record.push(Refinement { radius: r, max_delta });
        previous = Some(values);
    }
    let beta_values = previous.expect("schedule is non-empty");

    let threshold = threshold_for(&beta_values, h);
    let mut candidates: Vec<(usize, f64)> = (0..t_grid)
        .map(|j| (j, two_step(&beta_values, j)))
        .filter(|&(_, d)| d > threshold)
        .collect();
    candidates.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut chosen: Vec<(usize, f64)> = Vec::new();
    for (j, d) in candidates {
        let near = chosen.iter().any(|&(k, _)| {
            let gap = j.abs_diff(k);
            gap.min(t_grid - gap) <= 2
        });
        if !near {
            chosen.push((j, d));
        }
        if chosen.len() == MAX_CANDIDATES {
            break;
        }
    }
    let jump_ladders = chosen
        .par_iter()
        .map(|&(j, d)| ladder(f, &angle, j as f64 * h, h, d))
        .collect::<Result<Vec<_>>>()?;

    Ok(BetaTrace {
        t_samples,
        beta_values,
        radius_used: *r_schedule.last().expect("schedule is non-empty"),
        refinement_record,
        jump_ladders,
    })
}

fn ladder(f: &SpiralFunction, angle: &SpiralAngle, t: f64, h: f64, raw: f64) -> Result<JumpLadder> {
    let r_loc = 1.0 - LOCATE_GAP;
    let (lo, hi) = (t - h, t + h);
    let target = 0.5 * (beta_value(f, angle, r_loc, lo)? + beta_value(f, angle, r_loc, hi)?);
    let t0 = bisect_increasing(
        |s| beta_value(f, angle, r_loc, s).unwrap_or(f64::NAN),
        lo,
        hi,
        target,
    );
    let mut steps = Vec::with_capacity(LADDER_STEPS);
    let mut center = f64::NAN;
    for k in 0..LADDER_STEPS {
        let delta = 10f64.powf(-2.0 - 0.5 * k as f64);
        let r = 1.0 - (delta * LADDER_RADIUS_RATIO).max(1e-15);
        let right = beta_value(f, angle, r, t0 + delta)?;
        let left = beta_value(f, angle, r, t0 - delta)?;
        steps.push((delta, r, right - left));
        center = 0.5 * (right + left);
    }
    Ok(JumpLadder {
        location: wrap_location(t0),
        raw_increment: raw,
        steps,
        center,
    })
}

/// `t` reduced to `[0, 2π)`, with values a rounding error below 2π folded to 0.
fn wrap_location(t: f64) -> f64 {
    let w = t.rem_euclid(TAU);
    if TAU - w < 1e-12 {
        0.0
    } else {
        w
    }
}

/// Largest boundary jump of a trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpEstimate {
    pub jump: f64,
    /// Position of the jump in `[0, 2π)`.
    pub location: f64,
    /// Midpoint value of the trace across the jump.
    pub center: f64,
}

/// The largest extrapolated jump exceeding `gap_threshold`, or a zero jump
/// when there is none. Only candidates found by the default detection
/// threshold when the trace was built are considered.
pub fn estimate_max_jump(trace: &BetaTrace, gap_threshold: f64) -> Result<JumpEstimate> {
    let n = trace.beta_values.len();
    for j in 0..n {
        let next = if j + 1 == n { trace.beta_values[0] + TAU } else { trace.beta_values[j + 1] };
        let step = next - trace.beta_values[j];
        if step < -MONOTONE_TOLERANCE {
            return Err(Error::Inconsistent(format!(
                "trace decreases by {} after t = {}",
                -step, trace.t_samples[j]
            )));
        }
    }
    let best = trace
        .jump_ladders
        .iter()
        .map(|l| (l, l.extrapolated()))
        .filter(|&(_, jump)| jump > gap_threshold)
        .max_by(|a, b| a.1.total_cmp(&b.1));
    Ok(match best {
        Some((l, jump)) => JumpEstimate {
            jump,
            location: l.location,
            center: l.center,
        },
        None => JumpEstimate {
            jump: 0.0,
            location: 0.0,
            center: trace.beta_values[0],
        },
    })
}
