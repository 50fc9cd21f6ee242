//! Boundary measures `dβ` on the circle.
//!
//! A measure is a finite set of atoms plus a 2π-periodic piecewise-linear
//! density. Its total mass must be 2π so that `β(t + 2π) = β(t) + 2π`.

use std::f64::consts::{PI, TAU};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, MeasureViolation, Result};

/// Absolute tolerance on the total mass.
pub const MASS_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub t: f64,
    pub jump: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityKnot {
    pub t: f64,
    pub value: f64,
}

/// Unvalidated measure description, as read from a measure-spec file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    #[serde(default)]
    pub atoms: Vec<Atom>,
    #[serde(default)]
    pub density_knots: Vec<DensityKnot>,
}

impl MeasureSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Every violated invariant, in input order; empty when valid.
    pub fn validate(&self) -> Vec<MeasureViolation> {
        let mut out = Vec::new();
        let in_range = |t: f64| (0.0..TAU).contains(&t);

        for (index, a) in self.atoms.iter().enumerate() {
            if !a.t.is_finite() || !a.jump.is_finite() {
                out.push(MeasureViolation::NonFinite { what: "atoms", index });
                continue;
            }
            if !(a.jump > 0.0) {
                out.push(MeasureViolation::NonPositiveJump { index, jump: a.jump });
            }
            if !in_range(a.t) {
                out.push(MeasureViolation::AtomOutOfRange { index, t: a.t });
            }
            if index > 0 && !(a.t > self.atoms[index - 1].t) {
                out.push(MeasureViolation::AtomsNotIncreasing { index });
            }
        }
        for (index, k) in self.density_knots.iter().enumerate() {
            if !k.t.is_finite() || !k.value.is_finite() {
                out.push(MeasureViolation::NonFinite { what: "density_knots", index });
                continue;
            }
            if k.value < 0.0 {
                out.push(MeasureViolation::NegativeDensity { index, value: k.value });
            }
            if !in_range(k.t) {
                out.push(MeasureViolation::KnotOutOfRange { index, t: k.t });
            }
            if index > 0 && !(k.t > self.density_knots[index - 1].t) {
                out.push(MeasureViolation::KnotsNotIncreasing { index });
            }
        }
        if out.is_empty() {
            let atom_mass: f64 = self.atoms.iter().map(|a| a.jump).sum();
            let mass = atom_mass + Density::new(&self.density_knots).total();
            if (mass - TAU).abs() > MASS_TOLERANCE {
                out.push(MeasureViolation::MassMismatch { mass });
            }
        }
        out
    }
}

/// Validates a measure description.
pub fn validate(spec: &MeasureSpec) -> std::result::Result<(), Vec<MeasureViolation>> {
    let v = spec.validate();
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

/// Periodic piecewise-linear density; an empty knot list is the zero density.
#[derive(Debug, Clone, PartialEq)]
struct Density {
    knots: Vec<DensityKnot>,
}

impl Density {
    fn new(knots: &[DensityKnot]) -> Self {
        Self {
            knots: knots.to_vec(),
        }
    }

    /// Piece `j` runs from knot `j` to knot `j+1`, the last one wrapping
    /// around to the first knot shifted by 2π.
    fn piece(&self, j: usize) -> (f64, f64, f64, f64) {
        let n = self.knots.len();
        let a = self.knots[j];
        let b = self.knots[(j + 1) % n];
        let tb = if j + 1 == n { b.t + TAU } else { b.t };
        (a.t, tb, a.value, b.value)
    }

    fn slope(&self, j: usize) -> f64 {
        let (ta, tb, da, db) = self.piece(j);
        (db - da) / (tb - ta)
    }

    fn at(&self, t: f64) -> f64 {
        match self.knots.len() {
            0 => 0.0,
            1 => self.knots[0].value,
            n => {
                let t0 = self.knots[0].t;
                let s = t0 + (t - t0).rem_euclid(TAU);
                let j = (0..n).rev().find(|&j| self.knots[j].t <= s).unwrap_or(n - 1);
                let (ta, tb, da, db) = self.piece(j);
                let s = if s < ta { s + TAU } else { s };
                da + (db - da) * (s - ta) / (tb - ta)
            }
        }
    }

    fn total(&self) -> f64 {
        match self.knots.len() {
            0 => 0.0,
            1 => TAU * self.knots[0].value,
            n => (0..n)
                .map(|j| {
                    let (ta, tb, da, db) = self.piece(j);
                    0.5 * (tb - ta) * (da + db)
                })
                .sum(),
        }
    }

    /// Breakpoints of `[lo, hi] ⊂ [0, 2π]` at which the density is linear
    /// in between.
    fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut pts = vec![lo];
        pts.extend(self.knots.iter().map(|k| k.t).filter(|&t| t > lo && t < hi));
        pts.push(hi);
        pts
    }

    /// `∫_0^x d(s) ds` for `x ∈ [0, 2π]`.
    fn cumulative(&self, x: f64) -> f64 {
        if self.knots.is_empty() || x <= 0.0 {
            return 0.0;
        }
        self.breakpoints(0.0, x)
            .windows(2)
            .map(|w| 0.5 * (w[1] - w[0]) * (self.at(w[0]) + self.at(w[1])))
            .sum()
    }

    /// `∫_0^{2π} s d(s) ds`, exact for piecewise-linear densities.
    fn first_moment(&self) -> f64 {
        if self.knots.is_empty() {
            return 0.0;
        }
        self.breakpoints(0.0, TAU)
            .windows(2)
            .map(|w| {
                let (a, b) = (w[0], w[1]);
                let m = 0.5 * (a + b);
                (b - a) / 6.0 * (a * self.at(a) + 4.0 * m * self.at(m) + b * self.at(b))
            })
            .sum()
    }

    /// Changes of slope at each knot, `(t_j, s_j - s_{j-1})`, dropping
    /// knots where the density is locally linear.
    fn kinks(&self) -> Vec<(f64, f64)> {
        let n = self.knots.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n)
            .map(|j| (self.knots[j].t, self.slope(j) - self.slope((j + n - 1) % n)))
            .filter(|&(_, kappa)| kappa != 0.0)
            .collect()
    }
}

/// A validated boundary measure.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMeasure {
    atoms: Vec<Atom>,
    density: Density,
    kinks: Vec<(f64, f64)>,
}

impl BoundaryMeasure {
    pub fn new(atoms: Vec<Atom>, density_knots: Vec<DensityKnot>) -> Result<Self> {
        MeasureSpec {
            atoms,
            density_knots,
        }
        .try_into()
    }

    /// `dβ = dt`: the identity function for every λ.
    pub fn uniform() -> Self {
        Self::new(Vec::new(), vec![DensityKnot { t: 0.0, value: 1.0 }])
            .expect("uniform measure is valid")
    }

    /// Purely atomic measure from `(position, jump)` pairs.
    pub fn from_atoms(atoms: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            atoms.iter().map(|&(t, jump)| Atom { t, jump }).collect(),
            Vec::new(),
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        MeasureSpec::from_json(text)?.try_into()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn density_knots(&self) -> &[DensityKnot] {
        &self.density.knots
    }

    /// Slope changes of the density at its knots.
    pub fn kinks(&self) -> &[(f64, f64)] {
        &self.kinks
    }

    pub fn density_at(&self, t: f64) -> f64 {
        self.density.at(t)
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.jump).sum::<f64>() + self.density.total()
    }

    /// `β(t)` normalized by `β(0-) = 0`, with the midpoint value at atoms.
    pub fn beta_at(&self, t: f64) -> f64 {
        let mut tp = t.rem_euclid(TAU);
        let mut turns = ((t - tp) / TAU).round();
        if tp >= TAU {
            tp -= TAU;
            turns += 1.0;
        }
        let atoms: f64 = self
            .atoms
            .iter()
            .map(|a| {
                if a.t < tp {
                    a.jump
                } else if a.t == tp {
                    0.5 * a.jump
                } else {
                    0.0
                }
            })
            .sum();
        TAU * turns + atoms + self.density.cumulative(tp)
    }

    pub fn max_jump(&self) -> f64 {
        self.atoms.iter().map(|a| a.jump).fold(0.0, f64::max)
    }

    /// The largest atom, if any.
    pub fn largest_atom(&self) -> Option<Atom> {
        self.atoms
            .iter()
            .copied()
            .max_by(|a, b| a.jump.total_cmp(&b.jump))
    }

    /// Mean of `β(t) - t` over a period.
    ///
    /// The boundary λ-argument of the function built from this measure is
    /// `β(t) - mean_offset()`: the built function has `log(f/z) = 0` at the
    /// origin, which forces a zero mean.
    pub fn mean_offset(&self) -> f64 {
        let moment: f64 =
            self.atoms.iter().map(|a| a.t * a.jump).sum::<f64>() + self.density.first_moment();
        PI - moment / TAU
    }

    /// `β(t) - mean_offset()`.
    pub fn argument_at(&self, t: f64) -> f64 {
        self.beta_at(t) - self.mean_offset()
    }
}

impl TryFrom<MeasureSpec> for BoundaryMeasure {
    type Error = Error;

    fn try_from(spec: MeasureSpec) -> Result<Self> {
        let violations = spec.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidMeasure(violations));
        }
        let density = Density::new(&spec.density_knots);
        let kinks = density.kinks();
        Ok(Self {
            atoms: spec.atoms,
            density,
            kinks,
        })
    }
}

impl From<&BoundaryMeasure> for MeasureSpec {
    fn from(m: &BoundaryMeasure) -> Self {
        Self {
            atoms: m.atoms.clone(),
            density_knots: m.density.knots.clone(),
        }
    }
}
