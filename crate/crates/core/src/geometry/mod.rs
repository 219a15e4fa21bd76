//! Point configurations, simplex congruence/similarity classes and the
//! ε-thickened congruent-pair measure.

mod classes;
mod config;
mod keys;
mod linalg;
mod point_set;
mod thickened;

pub use classes::{count_classes, ClassCount, ClassEntry, ClassOptions, Relation, Subsample};
pub use config::{is_nondegenerate, squared_distance_vector, Configuration, SquaredDistances};
pub use keys::{
    canonical_upper_triangle, congruence_key, similarity_key, CongruenceKey, SimilarityKey,
};
pub use point_set::{Mode, PointSet, DEFAULT_QUANTUM, WEIGHT_TOLERANCE};
pub use thickened::{thickened_pair_measure, MonteCarlo, ThickenedMeasure, ThickenedOptions};

/// Relative singular-value cutoff below which a float-mode configuration
/// counts as degenerate.
pub const DEGENERACY_RTOL: f64 = 1e-9;
