use rayon::prelude::*;
use serde::Serialize;

use super::measure::sq_dist;
use super::DiscreteMeasure;
use crate::stats::pairwise_sum;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyEstimate {
    pub s: f64,
    pub value: f64,
    /// Two distinct atoms share a location, so a term is infinite.
    pub infinite: bool,
    /// Always true: the diagonal i = j is left out of the sum.
    pub discrete_surrogate: bool,
}

/// Σ_{i≠j} w_i w_j |x_i − x_j|^{−s}.
pub fn energy_integral(m: &DiscreteMeasure, s: f64) -> Result<EnergyEstimate> {
    let d = m.dim() as f64;
    if !(s > 0.0 && s < d) {
        return Err(Error::invalid(format!("s = {s} must lie in (0, {d})")));
    }
    let n = m.len();
    let w = m.weights();
    let rows: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let terms: Vec<f64> = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let r2 = sq_dist(m.point(i), m.point(j));
                    if r2 == 0.0 {
                        f64::INFINITY
                    } else {
                        w[i] * w[j] * r2.powf(-0.5 * s)
                    }
                })
                .collect();
            pairwise_sum(&terms)
        })
        .collect();
    let value = pairwise_sum(&rows);
    Ok(EnergyEstimate {
        s,
        value,
        infinite: value.is_infinite(),
        discrete_surrogate: true,
    })
}
