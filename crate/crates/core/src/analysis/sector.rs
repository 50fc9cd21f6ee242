//! Maximal λ-spiral sectors from the largest boundary jump.
//!
//! For the largest atom at `t₀` the image contains the sector centred at the
//! boundary argument `β(t₀) - mean_offset` with opening equal to the jump.
//! The construction is checked by sampling: for sample λ-arguments `θ` in the
//! sector, a point `z` near the circle with `arg_λ f(z) = θ` is found by
//! bisection (the boundary argument is increasing in `t`), and since the image
//! is λ-spirallike the whole spiral segment `[0, f(z)]_λ` lies in it. A
//! sample is certified to radius `|f(z)|`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::analysis::trace::{beta_trace, default_gap_threshold, estimate_max_jump};
use crate::error::Result;
use crate::geometry::{arg_lambda, arg_lambda_of_log, principal_angle, SpiralAngle, SpiralSector};
use crate::numeric::bisect_increasing;
use crate::representation::SpiralFunction;

/// Radius at which sample preimages are sought.
pub const CERTIFICATION_RADIUS: f64 = 1.0 - 1e-10;

/// Relative positions of interior samples across the opening.
const INTERIOR_OFFSETS: [f64; 7] = [-0.45, -0.3, -0.15, 0.0, 0.15, 0.3, 0.45];

/// One certified sample direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorSample {
    /// λ-argument of the sample spiral.
    pub theta: f64,
    /// Preimage angle on `|z| = CERTIFICATION_RADIUS`.
    pub preimage_t: f64,
    /// `log|f(z)|` at the preimage; the spiral is certified up to this modulus.
    pub log_modulus: f64,
    /// Circular distance between `arg_λ f(z)` and `theta`.
    pub residual: f64,
}

impl SectorSample {
    /// Whether the sampled spiral is certified out to modulus `radius`.
    pub fn reaches(&self, radius: f64) -> bool {
        self.log_modulus >= radius.ln()
    }
}

/// A detected sector with its sampling evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorReport {
    pub sector: SpiralSector,
    /// Position `t₀` of the jump.
    pub location: f64,
    /// Samples across the opening.
    pub interior: Vec<SectorSample>,
}

/// The sector attached to the largest jump, or `None` if the boundary
/// function has no jump. Measure-built functions use their atoms directly;
/// closed forms use a boundary trace.
pub fn detect_maximal_sector(f: &SpiralFunction, angle: SpiralAngle) -> Result<Option<SectorReport>> {
    let (location, center, opening) = match f.measure() {
        Some(m) => match m.largest_atom() {
            Some(atom) => (atom.t, m.argument_at(atom.t), atom.jump),
            None => return Ok(None),
        },
        None => {
            let trace = beta_trace(f, angle, 1024, &[1.0 - 1e-6])?;
            let est = estimate_max_jump(&trace, default_gap_threshold(&trace))?;
            if est.jump == 0.0 {
                return Ok(None);
            }
            (est.location, est.center, est.jump)
        }
    };
    let opening = opening.min(TAU);
    let sector = SpiralSector::new(center, opening, angle)?;

    let interior = INTERIOR_OFFSETS
        .iter()
        .map(|s| sample(f, &angle, location, center + s * opening))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(SectorReport {
        sector,
        location,
        interior,
    }))
}

fn sample(f: &SpiralFunction, angle: &SpiralAngle, t0: f64, theta: f64) -> Result<SectorSample> {
    let r = CERTIFICATION_RADIUS;
    let shift = -angle.tan() * r.ln();
    let image_arg = |t: f64| -> f64 {
        f.log_f_over_z(Complex64::from_polar(r, t))
            .map(|log| arg_lambda_of_log(log, angle) + t + shift)
            .unwrap_or(f64::NAN)
    };
    let (lo, hi) = (t0 - PI, t0 + PI);
    let base = image_arg(lo);
    let target = base + (theta - base).rem_euclid(TAU);
    let t = bisect_increasing(image_arg, lo, hi, target);
    let z = Complex64::from_polar(r, t);
    let log = f.log_f_over_z(z)?;
    let w_arg = arg_lambda(z, angle)? + arg_lambda_of_log(log, angle);
    Ok(SectorSample {
        theta,
        preimage_t: t,
        log_modulus: r.ln() + log.re,
        residual: principal_angle(w_arg - theta).abs(),
    })
}
