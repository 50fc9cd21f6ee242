use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::SpiralAngle;
use crate::numeric::golden_max;
use crate::representation::{SpiralFunction, Source};

/// Default number of coarse angles for the maximum-modulus scan.
pub const DEFAULT_COARSE: usize = 1024;

/// Largest `log M` that still converts to a finite `f64`.
const LOG_MAX: f64 = 709.0;

/// Maximum modulus on a circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxModulus {
    pub value: f64,
    pub log_value: f64,
    /// Angle where the maximum was found.
    pub argmax: f64,
    /// Angular resolution of the refinement.
    pub tolerance: f64,
    /// Number of coarse angles scanned.
    pub coarse: usize,
}

/// `M(r, f)` by a coarse scan of `coarse` angles followed by golden-section
/// refinement around the three best local maxima and around every known
/// boundary singularity. The value is attained at a sample point, so it is
/// a lower bound for the true maximum.
pub fn max_modulus(f: &SpiralFunction, r: f64, coarse: usize) -> Result<MaxModulus> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain(format!("radius {r} must lie in (0, 1)")));
    }
    let coarse = coarse.max(8);
    let h = TAU / coarse as f64;
    let log_abs = |t: f64| -> Result<f64> {
        Ok(r.ln() + f.log_f_over_z(Complex64::from_polar(r, t))?.re)
    };
    let values = (0..coarse)
        .into_par_iter()
        .map(|j| log_abs(j as f64 * h))
        .collect::<Result<Vec<f64>>>()?;

    let mut peaks: Vec<usize> = (0..coarse)
        .filter(|&j| {
            let prev = values[(j + coarse - 1) % coarse];
            let next = values[(j + 1) % coarse];
            values[j] >= prev && values[j] >= next
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let mut seeds: Vec<f64> = peaks.iter().take(3).map(|&j| j as f64 * h).collect();
    match f.source() {
        Source::Measure(m) => seeds.extend(m.atoms().iter().map(|a| a.t)),
        Source::ClosedForm(_) => seeds.push(0.0),
    }

    let tolerance = (1e-3 * (1.0 - r)).max(1e-15);
    let (mut argmax, mut best) = peaks
        .first()
        .map(|&j| (j as f64 * h, values[j]))
        .unwrap_or((0.0, values[0]));
    for seed in seeds {
        let (t, v) = golden_max(
            |t| log_abs(t).unwrap_or(f64::NEG_INFINITY),
            seed - h,
            seed + h,
            tolerance,
        );
        if v > best {
            best = v;
            argmax = t;
        }
    }
    if best > LOG_MAX {
        return Err(Error::Range(format!(
            "log M({r}) = {best} overflows double precision"
        )));
    }
    Ok(MaxModulus {
        value: best.exp(),
        log_value: best,
        argmax: argmax.rem_euclid(TAU),
        tolerance,
        coarse,
    })
}

/// Radii `1 - 10^{-k}` for `k = k_min..=k_max`.
pub fn decade_schedule(k_min: u32, k_max: u32) -> Result<Vec<f64>> {
    if k_min == 0 || k_min > k_max || k_max > 15 {
        return Err(Error::parameter(format!(
            "decade range {k_min}:{k_max} must satisfy 1 ≤ k_min ≤ k_max ≤ 15"
        )));
    }
    Ok((k_min..=k_max).map(|k| 1.0 - 10f64.powi(-(k as i32))).collect())
}

/// One row of a growth report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthRow {
    pub r: f64,
    pub m: f64,
    pub log_m: f64,
    /// `log(M(r)/r) / log(1/(1-r))`.
    pub e: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
    /// `a_estimate · cos²λ / π`.
    pub predicted_q0: f64,
    /// Largest boundary jump.
    pub a_estimate: f64,
}

impl GrowthReport {
    pub fn exponents(&self) -> Vec<f64> {
        self.rows.iter().map(|row| row.e).collect()
    }

    pub fn last_exponent(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |row| row.e)
    }
}

fn check_schedule(schedule: &[f64], min_len: usize) -> Result<()> {
    if schedule.len() < min_len {
        return Err(Error::parameter(format!(
            "radius schedule needs at least {min_len} entries"
        )));
    }
    if schedule.iter().any(|r| !(*r > 0.0 && *r < 1.0)) || schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::parameter("radius schedule must be strictly increasing in (0, 1)"));
    }
    Ok(())
}

/// Growth exponents along `schedule`.
///
/// The exponent is normalized by `log(M/r)`, which is nonnegative for every
/// normalized function and has the same limit as `log M`.
pub fn growth_exponent(f: &SpiralFunction, angle: SpiralAngle, schedule: &[f64]) -> Result<GrowthReport> {
    check_schedule(schedule, 3)?;
    let rows = schedule
        .iter()
        .map(|&r| {
            let mm = max_modulus(f, r, DEFAULT_COARSE)?;
            Ok(GrowthRow {
                r,
                m: mm.value,
                log_m: mm.log_value,
                e: (mm.log_value - r.ln()) / -(1.0 - r).ln(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let a_estimate = f.max_jump();
    Ok(GrowthReport {
        rows,
        predicted_q0: a_estimate * angle.cos().powi(2) / PI,
        a_estimate,
    })
}

/// `(r, M(r) (1-r)^{q0})` along `schedule`.
pub fn hansen_ratio(f: &SpiralFunction, q0: f64, schedule: &[f64]) -> Result<Vec<(f64, f64)>> {
    if !(q0 >= 0.0) {
        return Err(Error::parameter(format!("q0 = {q0} must be nonnegative")));
    }
    check_schedule(schedule, 1)?;
    schedule
        .iter()
        .map(|&r| {
            let mm = max_modulus(f, r, DEFAULT_COARSE)?;
            Ok((r, (mm.log_value + q0 * (1.0 - r).ln()).exp()))
        })
        .collect()
}
