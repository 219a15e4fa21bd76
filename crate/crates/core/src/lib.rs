//! Exact enumerators and numerical estimators for Falconer-type point
//! configuration problems.
//!
//! * [`geometry`]: point sets, simplex configurations, congruence and
//!   similarity keys, class counting and the ε-thickened pair measure.
//! * [`lattice`]: lattice points on circles and spheres, grid simplex
//!   census, growth-exponent fits and single-level sharpness sets.
//! * [`spectral`]: Fourier transforms of atomic measures, spherical and
//!   annulus averages, energy and Mattila integrals, Haar sampling on O(d),
//!   the measures ν_g / ν_{a,g} and their group energies, Frostman checks,
//!   decay fits and dimension thresholds.

pub mod error;
pub mod geometry;
pub mod lattice;
pub mod spectral;
pub mod stats;

pub use error::{Error, Result};
