//! Fourier-analytic estimators on atomic and gridded measures.

mod annulus;
mod decay;
mod energy;
mod frostman;
mod grid;
mod group_energy;
mod mattila;
mod measure;
mod orthogonal;
mod pushforward;
pub mod quadrature;
mod sphere;
mod thresholds;
mod transform;

pub use annulus::{annulus_energy, AnnulusOptions};
pub use decay::{decay_fit, gamma_s, DecayFit};
pub use energy::{energy_integral, EnergyEstimate};
pub use frostman::{frostman_check, FrostmanRow, FrostmanTable};
pub use grid::{GridDensity, GridSpec};
pub use group_energy::{
    group_energy, group_energy_at, group_energy_similarity, GroupEnergyEstimate, GroupEnergyOptions,
};
pub use mattila::{mattila_integral, MattilaOptions};
pub use measure::DiscreteMeasure;
pub use orthogonal::{haar_sample, haar_sample_with, OrthogonalTransform};
pub use pushforward::{nu_ag_pushforward, nu_g_pushforward};
pub use sphere::{sphere_nodes, spherical_average, spherical_average_curve, SphericalAverageCurve};
pub use thresholds::{thresholds, Rational, Thresholds};
pub use transform::{fourier_transform, FourierMeasure};

/// Default Fibonacci node count on S².
pub const DEFAULT_SPHERE_NODES: usize = 512;
