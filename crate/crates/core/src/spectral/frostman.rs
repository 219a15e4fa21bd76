use rayon::prelude::*;
use serde::Serialize;

use super::measure::sq_dist;
use super::DiscreteMeasure;
use crate::stats::{log_log_fit, pairwise_sum};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrostmanRow {
    pub radius: f64,
    pub max_mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrostmanTable {
    pub rows: Vec<FrostmanRow>,
    /// Slope of log(max ball mass) against log(radius).
    pub exponent: f64,
    pub residual: f64,
}

/// Largest closed-ball mass over balls centered at atoms, per radius.
pub fn frostman_check(m: &DiscreteMeasure, radii: &[f64]) -> Result<FrostmanTable> {
    if radii.len() < 2 {
        return Err(Error::InsufficientData("need at least two radii".into()));
    }
    if radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::invalid("radii must be positive"));
    }
    if radii.windows(2).any(|w| !(w[0] > w[1])) {
        return Err(Error::invalid("radii must be strictly decreasing"));
    }
    let n = m.len();
    let rows: Vec<FrostmanRow> = radii
        .iter()
        .map(|&radius| {
            let limit = radius * radius * (1.0 + 1e-12);
            let max_mass = (0..n)
                .into_par_iter()
                .map(|i| {
                    let inside: Vec<f64> = (0..n)
                        .filter(|&j| sq_dist(m.point(i), m.point(j)) <= limit)
                        .map(|j| m.weights()[j])
                        .collect();
                    pairwise_sum(&inside)
                })
                .reduce(|| 0.0, f64::max);
            FrostmanRow { radius, max_mass }
        })
        .collect();
    let xs: Vec<f64> = rows.iter().map(|r| r.radius).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.max_mass).collect();
    let fit = log_log_fit(&xs, &ys)?;
    Ok(FrostmanTable {
        rows,
        exponent: fit.slope,
        residual: fit.residual,
    })
}
