//! Evaluation of spirallike functions built from boundary measures.
//!
//! For a measure `dβ` and `μ = e^{iλ} cos λ`,
//!
//! ```text
//! log(f(z)/z) = -(μ/π) ∫ log(1 - e^{-it} z) dβ(t)
//! z f'(z)/f(z) = 1 + (μ/π) ∫ e^{-it} z / (1 - e^{-it} z) dβ(t)
//! ```
//!
//! Atoms are summed in closed form. For a piecewise-linear density `d` the
//! integrals integrate by parts twice into sums over the density's kinks:
//!
//! ```text
//! ∫ d(t) log(1 - e^{-it} z) dt        =  Σ_j κ_j Li₃(e^{-it_j} z)
//! ∫ d(t) e^{-it}z/(1 - e^{-it}z) dt   = -Σ_j κ_j Li₂(e^{-it_j} z)
//! ```
//!
//! where `κ_j` is the change of slope at knot `t_j`. A constant density
//! contributes nothing. The periodic trapezoidal rule is available as an
//! alternative through [`DensityRule::Trapezoid`].
//!
//! Every factor `1 - e^{-it} z` lies in the disk of radius `|z|` about 1, so
//! principal logarithms never cross their cut and `log(f/z)` is the
//! continuous branch vanishing at the origin.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gallery::ClosedFormFunction;
use crate::geometry::SpiralAngle;
use crate::measure::BoundaryMeasure;
use crate::special::{li2, li3};

/// Largest node count the trapezoidal rule will use.
pub const MAX_TRAPEZOID_NODES: usize = 1 << 22;

/// Error target for the trapezoidal rule.
pub const TRAPEZOID_TOLERANCE: f64 = 1e-10;

/// How the density part of a measure is integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DensityRule {
    /// Closed form through Li₂/Li₃ at the density knots.
    #[default]
    Exact,
    /// Periodic trapezoidal rule with at least `min_nodes` nodes, scaled up
    /// like `16/(1-|z|)` toward the circle.
    Trapezoid { min_nodes: usize },
}

/// Where a function's starlike part `log(g/z)` comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Measure(BoundaryMeasure),
    ClosedForm(ClosedFormFunction),
}

/// An evaluatable function `f` with `log(f/z) = scale · log(g/z)`, where `g`
/// is the starlike function described by the source.
#[derive(Debug, Clone, PartialEq)]
pub struct SpiralFunction {
    source: Source,
    angle: SpiralAngle,
    scale: Complex64,
    starlike_certified: bool,
    density_rule: DensityRule,
}

impl SpiralFunction {
    /// The λ-spirallike function with boundary measure `measure`.
    pub fn from_measure(measure: BoundaryMeasure, angle: SpiralAngle) -> Self {
        Self {
            source: Source::Measure(measure),
            angle,
            scale: angle.mu(),
            starlike_certified: angle.is_starlike(),
            density_rule: DensityRule::Exact,
        }
    }

    /// A closed-form gallery function, taken as a `λ = 0` function.
    pub fn from_closed_form(form: ClosedFormFunction) -> Self {
        let certified = form.is_starlike();
        Self {
            source: Source::ClosedForm(form),
            angle: SpiralAngle::STARLIKE,
            scale: Complex64::new(1.0, 0.0),
            starlike_certified: certified,
            density_rule: DensityRule::Exact,
        }
    }

    /// `f(z) = z`.
    pub fn identity() -> Self {
        Self::from_measure(BoundaryMeasure::uniform(), SpiralAngle::STARLIKE)
    }

    /// The Koebe function `z/(1-z)²`, from a single atom of mass 2π at 0.
    pub fn koebe() -> Self {
        let m = BoundaryMeasure::from_atoms(&[(0.0, TAU)]).expect("Koebe measure is valid");
        Self::from_measure(m, SpiralAngle::STARLIKE)
    }

    pub fn with_density_rule(mut self, rule: DensityRule) -> Self {
        self.density_rule = rule;
        self
    }

    /// Rebinds the multiplier and angle; used by the correspondence.
    pub(crate) fn rescaled(&self, angle: SpiralAngle, scale: Complex64, certified: bool) -> Self {
        Self {
            source: self.source.clone(),
            angle,
            scale,
            starlike_certified: certified,
            density_rule: self.density_rule,
        }
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn measure(&self) -> Option<&BoundaryMeasure> {
        match &self.source {
            Source::Measure(m) => Some(m),
            Source::ClosedForm(_) => None,
        }
    }

    pub fn angle(&self) -> SpiralAngle {
        self.angle
    }

    /// Multiplier applied to the starlike part's logarithm.
    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    pub fn density_rule(&self) -> DensityRule {
        self.density_rule
    }

    /// Largest jump of the boundary function: the measure's largest atom, or
    /// the known jump of a closed form. Unchanged by the correspondence.
    pub fn max_jump(&self) -> f64 {
        match &self.source {
            Source::Measure(m) => m.max_jump(),
            Source::ClosedForm(form) => form.boundary_jump(),
        }
    }

    /// Whether this function is known to be starlike (built at `λ = 0` from a
    /// measure, or a starlike gallery entry).
    pub fn is_starlike_certified(&self) -> bool {
        self.starlike_certified
    }

    /// `log(f(z)/z)`, the branch that vanishes at 0.
    pub fn log_f_over_z(&self, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        Ok(self.scale * self.base_log(z)?)
    }

    /// `f(z) = z · exp(log(f(z)/z))`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let l = self.log_f_over_z(z)?;
        if z == Complex64::new(0.0, 0.0) {
            return Ok(z);
        }
        Ok(z * l.exp())
    }

    /// `z f'(z) / f(z)`, equal to 1 at the origin.
    pub fn log_derivative(&self, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        Ok(1.0 + self.scale * self.base_log_derivative_minus_one(z)?)
    }

    /// Taylor coefficients `a_1 .. a_{n_max}` by sampling `f` on `|z| = radius`.
    pub fn taylor_coefficients(&self, n_max: usize, radius: f64) -> Result<Vec<Complex64>> {
        if !(radius > 0.0 && radius < 1.0) {
            return Err(Error::domain(format!(
                "coefficient radius {radius} must lie in (0, 1)"
            )));
        }
        if n_max == 0 {
            return Err(Error::parameter("n_max must be at least 1"));
        }
        let samples = coefficient_sample_count(n_max, radius);
        let values: Vec<Complex64> = (0..samples)
            .map(|j| {
                let z = Complex64::from_polar(radius, TAU * j as f64 / samples as f64);
                self.evaluate(z)
            })
            .collect::<Result<_>>()?;
        Ok((1..=n_max)
            .map(|n| {
                let sum: Complex64 = values
                    .iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let phase = -TAU * ((n * j) % samples) as f64 / samples as f64;
                        v * Complex64::from_polar(1.0, phase)
                    })
                    .sum();
                sum / (samples as f64 * radius.powi(n as i32))
            })
            .collect())
    }

    /// `log(g/z)` of the starlike part.
    fn base_log(&self, z: Complex64) -> Result<Complex64> {
        match &self.source {
            Source::ClosedForm(form) => Ok(form.log_over_z(z)),
            Source::Measure(m) => {
                let atoms: Complex64 = m
                    .atoms()
                    .iter()
                    .map(|a| a.jump * (1.0 - rotate(z, a.t)).ln())
                    .sum();
                let density = match self.density_rule {
                    DensityRule::Exact => m
                        .kinks()
                        .iter()
                        .map(|&(t, kappa)| kappa * li3(rotate(z, t)))
                        .sum(),
                    DensityRule::Trapezoid { min_nodes } => {
                        trapezoid(m, z, min_nodes, |w| (1.0 - w).ln())?
                    }
                };
                Ok(-(atoms + density) / PI)
            }
        }
    }

    /// `z g'(z)/g(z) - 1` of the starlike part.
    fn base_log_derivative_minus_one(&self, z: Complex64) -> Result<Complex64> {
        match &self.source {
            Source::ClosedForm(form) => Ok(form.log_derivative(z) - 1.0),
            Source::Measure(m) => {
                let atoms: Complex64 = m
                    .atoms()
                    .iter()
                    .map(|a| {
                        let w = rotate(z, a.t);
                        a.jump * w / (1.0 - w)
                    })
                    .sum();
                let density = match self.density_rule {
                    DensityRule::Exact => -m
                        .kinks()
                        .iter()
                        .map(|&(t, kappa)| kappa * li2(rotate(z, t)))
                        .sum::<Complex64>(),
                    DensityRule::Trapezoid { min_nodes } => {
                        trapezoid(m, z, min_nodes, |w| w / (1.0 - w))?
                    }
                };
                Ok((atoms + density) / PI)
            }
        }
    }
}

fn rotate(z: Complex64, t: f64) -> Complex64 {
    z * Complex64::from_polar(1.0, -t)
}

pub(crate) fn check_disk(z: Complex64) -> Result<()> {
    if !z.is_finite() || z.norm() >= 1.0 {
        Err(Error::domain(format!("point {z} is not in the open unit disk")))
    } else {
        Ok(())
    }
}

/// Samples used for Cauchy coefficient extraction: a power of two with at
/// least four samples per coefficient and `radius^N · N² < 1e-12`, so the
/// aliased tail stays below the 1e-10 target for polynomially bounded
/// coefficients.
fn coefficient_sample_count(n_max: usize, radius: f64) -> usize {
    let mut n = (4 * n_max).max(64).next_power_of_two();
    while radius.powi(n as i32) * (n as f64).powi(2) > 1e-12 && n < (1 << 24) {
        n *= 2;
    }
    n
}

/// Trapezoidal rule for `∫ kernel(e^{-it} z) d(t) dt` over the density.
fn trapezoid<K>(m: &BoundaryMeasure, z: Complex64, min_nodes: usize, kernel: K) -> Result<Complex64>
where
    K: Fn(Complex64) -> Complex64,
{
    if m.density_knots().is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let wanted = (16.0 / (1.0 - z.norm())).ceil() as usize;
    let nodes = wanted.max(min_nodes).max(8).next_power_of_two();
    let nodes = nodes.min(MAX_TRAPEZOID_NODES);
    let h = TAU / nodes as f64;
    let mut full = Complex64::new(0.0, 0.0);
    let mut even = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let t = j as f64 * h;
        let v = kernel(rotate(z, t)) * m.density_at(t);
        full += v;
        if j % 2 == 0 {
            even += v;
        }
    }
    let fine = full * h;
    let coarse = even * 2.0 * h;
    let estimate = (fine - coarse).norm();
    if estimate > TRAPEZOID_TOLERANCE {
        return Err(Error::Accuracy {
            estimate,
            tolerance: TRAPEZOID_TOLERANCE,
        });
    }
    Ok(fine)
}

/// Default coefficient radius: 1/2, raised when needed so that
/// `radius^{n_max} ≥ 10^{-3}` keeps roundoff amplification bounded.
pub fn default_coefficient_radius(n_max: usize) -> f64 {
    0.5_f64.max(10f64.powf(-3.0 / n_max.max(1) as f64))
}
