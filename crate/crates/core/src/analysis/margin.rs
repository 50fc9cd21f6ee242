use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::SpiralAngle;
use crate::representation::SpiralFunction;

/// Polar sample grid: radii `r_max · i / radial` for `i = 1..=radial` and
/// `angular` equally spaced angles starting at 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarGrid {
    radial: usize,
    angular: usize,
    r_max: f64,
}

impl PolarGrid {
    pub fn new(radial: usize, angular: usize, r_max: f64) -> Result<Self> {
        if radial == 0 || angular == 0 {
            return Err(Error::parameter("grid sizes must be positive"));
        }
        if !(r_max > 0.0 && r_max < 1.0) {
            return Err(Error::domain(format!("r_max = {r_max} must lie in (0, 1)")));
        }
        Ok(Self {
            radial,
            angular,
            r_max,
        })
    }

    pub fn radii(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.radial).map(move |i| self.r_max * i as f64 / self.radial as f64)
    }

    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.angular).map(move |j| TAU * j as f64 / self.angular as f64)
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn len(&self) -> usize {
        self.radial * self.angular
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Maximum of `value` over the grid, computed in parallel over radii.
    fn reduce_max<F>(&self, value: F) -> Result<f64>
    where
        F: Fn(Complex64) -> Result<f64> + Sync,
    {
        let radii: Vec<f64> = self.radii().collect();
        radii
            .par_iter()
            .map(|&r| {
                self.angles().try_fold(f64::NEG_INFINITY, |acc, theta| {
                    Ok(acc.max(value(Complex64::from_polar(r, theta))?))
                })
            })
            .try_reduce(|| f64::NEG_INFINITY, |a, b| Ok(a.max(b)))
    }
}

/// Minimum of `Re(e^{-iλ} z f'(z)/f(z))` over the grid. A positive value
/// certifies the λ-spirallike condition at every grid point.
pub fn spirallikeness_margin(f: &SpiralFunction, angle: SpiralAngle, grid: &PolarGrid) -> Result<f64> {
    let rotation = Complex64::from_polar(1.0, -angle.lambda());
    let neg = grid.reduce_max(|z| Ok(-(rotation * f.log_derivative(z)?).re))?;
    Ok(-neg)
}

/// Maximum over the grid of `|arg(g(z)/z)| - 2 arcsin|z|`, using the branch
/// of `arg(g/z)` that vanishes at the origin. Non-positive for starlike `g`.
pub fn goodman_check(g: &SpiralFunction, grid: &PolarGrid) -> Result<f64> {
    if !g.is_starlike_certified() {
        return Err(Error::parameter("Goodman's bound applies to starlike functions only"));
    }
    grid.reduce_max(|z| Ok(g.log_f_over_z(z)?.im.abs() - 2.0 * z.norm().asin()))
}
