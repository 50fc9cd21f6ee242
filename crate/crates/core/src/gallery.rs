//! Closed-form starlike functions used in the growth experiments.
//!
//! * `g₀(z) = z/(1-z) · S(z)` with `S(z) = log(1/(1-z))/z`, whose boundary
//!   function has a single jump of π at `t = 0`;
//! * the Hansen family `z (1-z)^{-α} (1 + c log(1/(1-z)))^{β}`, starlike when
//!   the parameters obey the constraints checked by [`HansenParams::new`];
//! * Koebe powers `z (1-z)^{-e}`, `0 ≤ e ≤ 2`.
//!
//! The module also carries the auxiliary function `Q(θ)` and the threshold
//! constant `C₀` that controls which Hansen parameters are admissible.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::correspondence::spirallike_of;
use crate::error::{Error, Result};
use crate::geometry::SpiralAngle;
use crate::numeric::golden_max;
use crate::representation::{check_disk, SpiralFunction};

/// `lim_{θ→0+} Q(θ)`.
pub const Q_LIMIT_AT_ZERO: f64 = 2.0;
/// `lim_{θ→π/2-} Q(θ)`.
pub const Q_LIMIT_AT_RIGHT_ANGLE: f64 = 0.0;

/// `|z|` below which `log(1/(1-z))/z` is summed as a power series.
const SERIES_SWITCH: f64 = 0.05;

/// A closed-form normalized starlike function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedFormFunction {
    G0,
    Hansen(HansenParams),
    KoebePower(f64),
}

impl ClosedFormFunction {
    /// `z (1-z)^{-exponent}`; starlike for `0 ≤ exponent ≤ 2`.
    pub fn koebe_power(exponent: f64) -> Result<Self> {
        if !(0.0..=2.0).contains(&exponent) {
            return Err(Error::parameter(format!(
                "Koebe exponent {exponent} must lie in [0, 2]"
            )));
        }
        Ok(Self::KoebePower(exponent))
    }

    /// `log(f(z)/z)`, vanishing at the origin. The caller guarantees `|z| < 1`.
    pub fn log_over_z(&self, z: Complex64) -> Complex64 {
        let l = minus_log_one_minus(z);
        match self {
            Self::G0 => l + log_s(z, l),
            Self::Hansen(p) => {
                let base = 1.0 + p.c * l;
                debug_assert!(base.re > 0.0, "Hansen base left the right half-plane");
                p.alpha * l + p.beta_exp * base.ln()
            }
            Self::KoebePower(e) => e * l,
        }
    }

    /// `z f'(z)/f(z)`. The caller guarantees `|z| < 1`.
    pub fn log_derivative(&self, z: Complex64) -> Complex64 {
        match self {
            Self::G0 => g0_log_derivative_unchecked(z),
            Self::Hansen(p) => {
                let l = minus_log_one_minus(z);
                let one_minus = 1.0 - z;
                1.0 + p.alpha * z / one_minus
                    + p.beta_exp * z / (one_minus * (1.0 / p.c + l))
            }
            Self::KoebePower(e) => 1.0 + e * z / (1.0 - z),
        }
    }

    /// Starlikeness of every constructible value is established in closed form.
    pub fn is_starlike(&self) -> bool {
        true
    }

    /// Jump of the boundary function at `t = 0`: `π` for `g₀`, `πα` for the
    /// Hansen family and `πe` for a Koebe power.
    pub fn boundary_jump(&self) -> f64 {
        match self {
            Self::G0 => PI,
            Self::Hansen(p) => PI * p.alpha,
            Self::KoebePower(e) => PI * e,
        }
    }

    /// Short selector name.
    pub fn name(&self) -> &'static str {
        match self {
            Self::G0 => "g0",
            Self::Hansen(_) => "hansen",
            Self::KoebePower(_) => "koebe_power",
        }
    }
}

/// `log(1/(1-z))`.
fn minus_log_one_minus(z: Complex64) -> Complex64 {
    -(1.0 - z).ln()
}

/// `S(z) = log(1/(1-z))/z`, equal to 1 at the origin.
fn s_function(z: Complex64, l: Complex64) -> Complex64 {
    if z.norm() < SERIES_SWITCH {
        s_series(z)
    } else {
        l / z
    }
}

/// `Σ z^k/(k+1)`; at the switch radius 0.05^24 is far below rounding level.
fn s_series(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for k in 0..24 {
        sum += power / (k + 1) as f64;
        power *= z;
    }
    sum
}

/// Principal `log S(z)`. `S` maps the disk into the right half-plane, so the
/// principal branch is the continuous one vanishing at 0.
fn log_s(z: Complex64, l: Complex64) -> Complex64 {
    s_function(z, l).ln()
}

/// `G(z) = -z/((1-z) log(1-z)) = 1/((1-z) S(z))`, equal to 1 at the origin.
pub fn wilken_feng_g(z: Complex64) -> Result<Complex64> {
    check_disk(z)?;
    Ok(wilken_feng_unchecked(z))
}

fn wilken_feng_unchecked(z: Complex64) -> Complex64 {
    let l = minus_log_one_minus(z);
    1.0 / ((1.0 - z) * s_function(z, l))
}

fn g0_log_derivative_unchecked(z: Complex64) -> Complex64 {
    z / (1.0 - z) + wilken_feng_unchecked(z)
}

/// `z g₀'(z)/g₀(z) = z/(1-z) + G(z)`.
pub fn g0_log_derivative(z: Complex64) -> Result<Complex64> {
    check_disk(z)?;
    Ok(g0_log_derivative_unchecked(z))
}

/// Infimum of `Re(z g₀'/g₀)` over the disk, approached at `z = -1`.
pub fn g0_margin_bound() -> f64 {
    0.5 / LN_2 - 0.5
}

/// Infimum of `Re G` over the disk, `G(-1) = 1/(2 log 2)`.
pub fn wilken_feng_bound() -> f64 {
    0.5 / LN_2
}

/// `Q(θ) = ((log cos θ)² + θ²) / (θ tan θ + log cos θ)` on `(0, π/2)`.
pub fn q_function(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(Error::domain(format!(
            "Q(θ) is defined for 0 < θ < π/2, got {theta}"
        )));
    }
    Ok(q_unchecked(theta))
}

fn q_unchecked(theta: f64) -> f64 {
    // log cos θ = log(1 - 2 sin²(θ/2)) keeps full relative accuracy near 0.
    let s = (0.5 * theta).sin();
    let log_cos = (-2.0 * s * s).ln_1p();
    (log_cos * log_cos + theta * theta) / (theta * theta.tan() + log_cos)
}

/// Result of the numerical maximization of `Q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C0Report {
    /// `sup Q` over `(0, π/2)`, including the endpoint limits.
    pub sup_q: f64,
    /// Largest value found in the interior (grid plus local refinement).
    pub interior_max: f64,
    /// Where the interior maximum was found.
    pub argmax: f64,
    /// `2 exp(sup_q)`.
    pub c0: f64,
    /// Whether `Q` was non-increasing along the grid.
    pub monotone: bool,
}

/// Maximizes `Q` on `grid` equally spaced interior points, refines around
/// the best one by golden section, and records whether `Q` decreased
/// monotonically along the grid.
pub fn c0_constant(grid: usize) -> Result<C0Report> {
    if grid < 1000 {
        return Err(Error::parameter(format!("Q grid must have at least 1000 points, got {grid}")));
    }
    let step = FRAC_PI_2 / (grid + 1) as f64;
    let values: Vec<f64> = (1..=grid).map(|j| q_unchecked(j as f64 * step)).collect();
    let monotone = values.windows(2).all(|w| w[1] <= w[0]);
    let (best, _) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid is non-empty");
    let centre = (best + 1) as f64 * step;
    let lo = (centre - step).max(step * 1e-3);
    let hi = (centre + step).min(FRAC_PI_2 - step * 1e-3);
    let (argmax, refined) = golden_max(q_unchecked, lo, hi, step * 1e-6);
    let interior_max = refined.max(values[best]);
    let sup_q = interior_max.max(Q_LIMIT_AT_ZERO).max(Q_LIMIT_AT_RIGHT_ANGLE);
    Ok(C0Report {
        sup_q,
        interior_max,
        argmax,
        c0: 2.0 * sup_q.exp(),
        monotone,
    })
}

/// The constant `C₀` used for Hansen parameter validation.
///
/// `2e²` when a dense scan confirms `sup Q ≤ 2`; otherwise the measured
/// `2 exp(sup Q)`.
pub fn c0() -> f64 {
    static C0: OnceLock<f64> = OnceLock::new();
    *C0.get_or_init(|| {
        let report = c0_constant(100_000).expect("grid size is valid");
        if report.sup_q <= Q_LIMIT_AT_ZERO + 1e-9 {
            2.0 * Q_LIMIT_AT_ZERO.exp()
        } else {
            report.c0
        }
    })
}

/// `p(z) = 1/((1-z)(log C - log(1-z)))` for `|z| ≤ 1`, `z ≠ 1`.
pub fn lemma_c_p(big_c: f64, z: Complex64) -> Result<Complex64> {
    check_closed_disk(z)?;
    let one_minus = 1.0 - z;
    Ok(1.0 / (one_minus * (big_c.ln() - one_minus.ln())))
}

/// `q(z) = z p(z)`.
pub fn lemma_c_q(big_c: f64, z: Complex64) -> Result<Complex64> {
    Ok(z * lemma_c_p(big_c, z)?)
}

fn check_closed_disk(z: Complex64) -> Result<()> {
    if !z.is_finite() || z.norm() > 1.0 || z == Complex64::new(1.0, 0.0) {
        Err(Error::domain(format!("point {z} is not in the closed disk minus 1")))
    } else {
        Ok(())
    }
}

/// Minimum over a polar grid of
/// `Re p(z) - 1/(2 log(C/2))` and `Re q(z) + 1/(2 log(C/2))`.
///
/// The grid has radii `i/radial` for `i = 0..radial` and `angular` equally
/// spaced angles.
pub fn lemma_c_margins(big_c: f64, radial: usize, angular: usize) -> Result<(f64, f64)> {
    if !(big_c > 2.0) || !big_c.is_finite() {
        return Err(Error::domain(format!("C = {big_c} must exceed 2")));
    }
    if radial == 0 || angular == 0 {
        return Err(Error::parameter("grid sizes must be positive"));
    }
    let bound = 0.5 / (0.5 * big_c).ln();
    let mut m1 = f64::INFINITY;
    let mut m2 = f64::INFINITY;
    for i in 0..radial {
        let r = i as f64 / radial as f64;
        for j in 0..angular {
            let z = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / angular as f64);
            let p = lemma_c_p(big_c, z)?;
            m1 = m1.min(p.re - bound);
            m2 = m2.min((z * p).re + bound);
        }
    }
    Ok((m1, m2))
}

/// Parameters of the Hansen family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HansenParams {
    alpha: f64,
    beta_exp: f64,
    c: f64,
}

impl HansenParams {
    /// Validates against the configured [`c0`].
    pub fn new(alpha: f64, beta_exp: f64, c: f64) -> Result<Self> {
        Self::with_c0(alpha, beta_exp, c, c0())
    }

    /// Validates against an explicit `C₀`.
    pub fn with_c0(alpha: f64, beta_exp: f64, c: f64, c0: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::parameter(format!("α = {alpha} must lie in (0, 2)")));
        }
        if !(beta_exp > 0.0) || !beta_exp.is_finite() {
            return Err(Error::parameter(format!("β_exp = {beta_exp} must be positive")));
        }
        if !(c > 0.0) {
            return Err(Error::parameter(format!("c = {c} must be positive")));
        }
        let c_max = 1.0 / c0.ln();
        if c > c_max {
            return Err(Error::parameter(format!(
                "c ≤ 1/log C₀ violated: c = {c} > {c_max}"
            )));
        }
        let lhs = alpha + c * beta_exp / (1.0 - c * LN_2);
        if lhs >= 2.0 {
            return Err(Error::parameter(format!(
                "α + cβ/(1 - c log 2) < 2 violated: value {lhs}"
            )));
        }
        Ok(Self { alpha, beta_exp, c })
    }

    /// Demo defaults: `α = A/π`, `β_exp = 1`, `c = min(0.3, 0.99/log C₀)`.
    pub fn for_jump(a: f64) -> Result<Self> {
        Self::new(a / PI, 1.0, default_c())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta_exp(&self) -> f64 {
        self.beta_exp
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `C = e^{1/c}`.
    pub fn big_c(&self) -> f64 {
        (1.0 / self.c).exp()
    }

    /// Lower bound `1 - α/2 - β/(2/c - 2 log 2)` for `Re(z g'/g)`.
    pub fn margin_bound(&self) -> f64 {
        1.0 - 0.5 * self.alpha - self.beta_exp / (2.0 / self.c - 2.0 * LN_2)
    }

    /// Slack `2 - (α + cβ/(1 - c log 2))` in the second constraint.
    pub fn headroom(&self) -> f64 {
        2.0 - (self.alpha + self.c * self.beta_exp / (1.0 - self.c * LN_2))
    }
}

/// Default `c` for demos.
pub fn default_c() -> f64 {
    0.3_f64.min(0.99 / c0().ln())
}

pub fn hansen_build(params: HansenParams) -> ClosedFormFunction {
    ClosedFormFunction::Hansen(params)
}

/// The λ-spirallike partner of the Hansen function with `α = A/π`.
pub fn counterexample_for(angle: SpiralAngle, a: f64, beta_exp: f64, c: f64) -> Result<SpiralFunction> {
    if !(a > 0.0 && a < 2.0 * PI) {
        return Err(Error::parameter(format!("A = {a} must lie in (0, 2π)")));
    }
    let g = SpiralFunction::from_closed_form(hansen_build(HansenParams::new(a / PI, beta_exp, c)?));
    spirallike_of(&g, angle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn g0_values() {
        // g₀(1/2) = 2 log 2
        let g = SpiralFunction::from_closed_form(ClosedFormFunction::G0);
        let v = g.evaluate(c(0.5, 0.0)).unwrap();
        assert!((v - 2.0 * LN_2).norm() < 1e-15);
        assert_eq!(g0_log_derivative(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        // 1/2 ... z g'/g at 1/2 = 1 + 1/log 2
        let d = g0_log_derivative(c(0.5, 0.0)).unwrap();
        assert!((d - (1.0 + 1.0 / LN_2)).norm() < 1e-14);
        assert!(g0_log_derivative(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn g0_limit_at_minus_one() {
        let d = g0_log_derivative(c(-1.0 + 1e-12, 0.0)).unwrap();
        assert!((d.re - g0_margin_bound()).abs() < 1e-9);
        assert!((g0_margin_bound() - 0.221_347_520_444_481_7).abs() < 1e-15);
    }

    #[test]
    fn series_switch_is_seamless() {
        for k in 0..16 {
            let z = Complex64::from_polar(SERIES_SWITCH, 0.4 * k as f64);
            let l = minus_log_one_minus(z);
            assert!((s_series(z) - l / z).norm() < 1e-14);
        }
    }

    #[test]
    fn hansen_log_derivative_matches_differences() {
        let p = HansenParams::new(1.0, 1.0, 0.3).unwrap();
        let f = hansen_build(p);
        let h = 1e-6;
        for z in [c(0.3, 0.2), c(-0.7, 0.5), c(0.9, -0.1)] {
            let d = (f.log_over_z(z + h) - f.log_over_z(z - h)) / (2.0 * h);
            assert!((f.log_derivative(z) - (1.0 + z * d)).norm() < 1e-8);
        }
    }

    #[test]
    fn hansen_constraints() {
        assert!(HansenParams::new(1.0, 1.0, 0.3).is_ok());
        assert!(HansenParams::new(0.0, 1.0, 0.3).is_err());
        assert!(HansenParams::new(1.0, 0.0, 0.3).is_err());
        let err = HansenParams::new(1.0, 1.0, 0.4).unwrap_err().to_string();
        assert!(err.contains("1/log C₀"), "{err}");
        let err = HansenParams::new(1.8, 1.0, 0.3).unwrap_err().to_string();
        assert!(err.contains("< 2 violated"), "{err}");
        let p = HansenParams::new(1.0, 1.0, 0.3).unwrap();
        assert!((p.margin_bound() - (0.5 - 1.0 / (2.0 / 0.3 - 2.0 * LN_2))).abs() < 1e-15);
        assert!(p.headroom() > 0.0);
    }

    #[test]
    fn q_limits_and_domain() {
        assert!((q_function(1e-6).unwrap() - 2.0).abs() < 1e-9);
        assert!(q_function(FRAC_PI_2 - 1e-6).unwrap() < 1e-2);
        assert!(q_function(0.0).is_err());
        assert!(q_function(FRAC_PI_2).is_err());
    }

    #[test]
    fn c0_report() {
        let r = c0_constant(20_000).unwrap();
        assert!(r.interior_max <= 2.0 + 1e-9);
        assert!((r.c0 - 2.0 * 2f64.exp()).abs() < 1e-6);
        assert!(c0_constant(999).is_err());
        assert!((c0() - 14.778_112_197_861_3).abs() < 1e-9);
    }

    #[test]
    fn lemma_c_points() {
        let big_c = 2.0 * 2f64.exp();
        let bound = 0.5 / (0.5 * big_c).ln();
        let p0 = lemma_c_p(big_c, c(0.0, 0.0)).unwrap();
        assert!((p0.re - 1.0 / big_c.ln()).abs() < 1e-15);
        let q = lemma_c_q(big_c, c(-1.0, 0.0)).unwrap();
        assert!((q.re + bound).abs() < 1e-15);
        assert!(lemma_c_p(big_c, c(1.0, 0.0)).is_err());
        assert!(lemma_c_margins(1.5, 8, 8).is_err());
    }
}
