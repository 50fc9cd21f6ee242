//! λ-spirals and the λ-argument.
//!
//! For `|λ| < π/2` the λ-spiral through `e^{iθ}` is `t ↦ exp(iθ + t·e^{iλ})`.
//! Every nonzero `w` lies on exactly one such spiral up to `θ mod 2π`; that
//! `θ` is the λ-argument of `w` and equals `arg w - tan λ · log|w|`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest principal phase step accepted between consecutive path samples.
///
/// A principal increment can never exceed π in magnitude, so steps close to π
/// are indistinguishable from aliased ones and are rejected.
pub const PHASE_STEP_LIMIT: f64 = 0.9 * PI;

/// The spiral parameter `λ ∈ (-π/2, π/2)` with its cached derived values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpiralAngle {
    lambda: f64,
    mu: Complex64,
    tan_lambda: f64,
}

impl SpiralAngle {
    /// `λ = 0`: ordinary rays and the ordinary argument.
    pub const STARLIKE: SpiralAngle = SpiralAngle {
        lambda: 0.0,
        mu: Complex64::new(1.0, 0.0),
        tan_lambda: 0.0,
    };

    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda.abs() >= FRAC_PI_2 {
            return Err(Error::domain(format!(
                "spiral angle {lambda} must lie strictly inside (-π/2, π/2)"
            )));
        }
        let (s, c) = lambda.sin_cos();
        Ok(Self {
            lambda,
            mu: Complex64::new(c * c, s * c),
            tan_lambda: lambda.tan(),
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// The exponent `μ = e^{iλ} cos λ` relating `log(f/z)` to `log(g/z)`.
    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    pub fn tan(&self) -> f64 {
        self.tan_lambda
    }

    pub fn cos(&self) -> f64 {
        self.lambda.cos()
    }

    /// `e^{iλ}`, the direction of the spiral tangent relative to the radius.
    pub fn direction(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.lambda)
    }

    pub fn is_starlike(&self) -> bool {
        self.lambda == 0.0
    }
}

impl Default for SpiralAngle {
    fn default() -> Self {
        Self::STARLIKE
    }
}

/// Reduces an angle to its representative in `(-π, π]`.
pub fn principal_angle(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}

/// The λ-argument of `exp(log_w)` taken directly from a logarithm, before
/// reduction: `Im log_w - tan λ · Re log_w`.
///
/// When `log_w` is a continuous branch of a logarithm, this is the matching
/// continuous branch of the λ-argument.
pub fn arg_lambda_of_log(log_w: Complex64, angle: &SpiralAngle) -> f64 {
    log_w.im - angle.tan() * log_w.re
}

/// Principal λ-argument of `w` in `(-π, π]`.
pub fn arg_lambda(w: Complex64, angle: &SpiralAngle) -> Result<f64> {
    check_nonzero(w)?;
    Ok(principal_angle(w.arg() - angle.tan() * w.norm().ln()))
}

/// The point `exp(iθ₀ + t·e^{iλ})` of the λ-spiral through `e^{iθ₀}`.
pub fn spiral_point(theta0: f64, angle: &SpiralAngle, t: f64) -> Complex64 {
    (Complex64::new(0.0, theta0) + angle.direction() * t).exp()
}

/// Samples the λ-spiral segment `[0, w]_λ` at `n` equally spaced parameters
/// in `[t_min, 0]`; the last sample is `w` itself.
pub fn spiral_segment_sample(
    w: Complex64,
    angle: &SpiralAngle,
    n: usize,
    t_min: f64,
) -> Result<Vec<Complex64>> {
    check_nonzero(w)?;
    if n < 2 {
        return Err(Error::parameter("spiral segment needs at least 2 samples"));
    }
    if !(t_min < 0.0) {
        return Err(Error::parameter("spiral segment start t_min must be negative"));
    }
    let dir = angle.direction();
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|k| {
            let t = t_min * (last - k as f64) / last;
            w * (dir * t).exp()
        })
        .collect())
}

/// The λ-spiral sector `S_λ(θ₀, α)`: all λ-spirals whose λ-argument is within
/// `α/2` of `θ₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpiralSector {
    center_angle: f64,
    opening: f64,
    angle: SpiralAngle,
}

impl SpiralSector {
    pub fn new(center_angle: f64, opening: f64, angle: SpiralAngle) -> Result<Self> {
        if !center_angle.is_finite() || !(opening > 0.0 && opening <= TAU) {
            return Err(Error::parameter(format!(
                "sector opening {opening} must lie in (0, 2π]"
            )));
        }
        Ok(Self {
            center_angle,
            opening,
            angle,
        })
    }

    pub fn center_angle(&self) -> f64 {
        self.center_angle
    }

    pub fn opening(&self) -> f64 {
        self.opening
    }

    pub fn angle(&self) -> SpiralAngle {
        self.angle
    }

    /// Membership in the open sector. A full sector (`α = 2π`) is the plane
    /// minus the single spiral opposite its center.
    pub fn contains(&self, w: Complex64) -> Result<bool> {
        let theta = arg_lambda(w, &self.angle)?;
        let dist = principal_angle(theta - self.center_angle).abs();
        Ok(dist < 0.5 * self.opening)
    }
}

pub fn sector_contains(sector: &SpiralSector, w: Complex64) -> Result<bool> {
    sector.contains(w)
}

/// Continuous lift of the λ-argument along a path starting at 1.
///
/// The output starts at 0 and each entry differs from the principal
/// λ-argument of the corresponding sample by a multiple of 2π.
pub fn continuous_arg_lambda(path: &[Complex64], angle: &SpiralAngle) -> Result<Vec<f64>> {
    let Some(&first) = path.first() else {
        return Ok(Vec::new());
    };
    if (first - 1.0).norm() > 1e-12 {
        return Err(Error::parameter("continuation path must start at 1"));
    }
    let mut out = Vec::with_capacity(path.len());
    out.push(0.0);
    let mut acc = 0.0;
    for (k, pair) in path.windows(2).enumerate() {
        let (prev, cur) = (pair[0], pair[1]);
        check_nonzero(cur)?;
        let ratio = cur / prev;
        let phase = ratio.arg();
        if phase.abs() >= PHASE_STEP_LIMIT {
            return Err(Error::Refinement(format!(
                "phase step {phase:.3} between samples {k} and {} is too large",
                k + 1
            )));
        }
        acc += phase - angle.tan() * ratio.norm().ln();
        out.push(acc);
    }
    Ok(out)
}

fn check_nonzero(w: Complex64) -> Result<()> {
    if w == Complex64::new(0.0, 0.0) {
        Err(Error::domain("λ-argument undefined at 0"))
    } else if !w.is_finite() {
        Err(Error::domain("λ-argument undefined for non-finite input"))
    } else {
        Ok(())
    }
}
