//! Lattice-point counting and the grid sharpness constructions.

mod census;
mod growth;
mod points;
mod sharpness;
mod spheres;

pub use census::{grid_simplex_census, grid_simplex_census_direct, CensusOptions, LatticeBox};
pub use growth::{fit_growth_exponent, GrowthFit, GrowthRecord};
pub use points::{circle_lattice_points, r2, r3, sphere_lattice_points};
pub use sharpness::{build_sharpness_set, SharpnessSet, SharpnessSummary};
pub use spheres::{three_spheres_triangle_census, ThreeSpheresCensus, ThreeSpheresOptions};
