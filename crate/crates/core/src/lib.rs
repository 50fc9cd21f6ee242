//! Spirallike and starlike univalent functions of the unit disk.
//!
//! A λ-spirallike function is built from a non-decreasing boundary function
//! `β` (with `β(t+2π) = β(t) + 2π`) through
//!
//! ```text
//! f(z) = z · exp( -(e^{iλ} cos λ / π) ∫₀^{2π} log(1 - e^{-it} z) dβ(t) )
//! ```
//!
//! The crate provides the λ-argument calculus ([`geometry`]), boundary
//! measures ([`measure`]), evaluation of the resulting functions
//! ([`representation`]), the spirallike/starlike correspondence
//! ([`correspondence`]), numerical verification tools ([`analysis`]) and the
//! closed-form examples used in growth experiments ([`gallery`]).

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod correspondence;
pub mod error;
pub mod gallery;
pub mod geometry;
pub mod measure;
pub mod representation;
pub mod special;

mod numeric;

pub use error::{Error, Result};
pub use geometry::{SpiralAngle, SpiralSector};
pub use measure::{Atom, BoundaryMeasure, DensityKnot, MeasureSpec};
pub use representation::{DensityRule, SpiralFunction};

pub use num_complex::Complex64;
