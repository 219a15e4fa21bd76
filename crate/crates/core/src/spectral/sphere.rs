use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::FourierMeasure;
use crate::stats::pairwise_sum;
use crate::{Error, Result};

pub const MIN_SPHERE_NODES: usize = 16;

/// Quadrature nodes on S^{d−1}, equally weighted: equal angles on the
/// circle, the Fibonacci lattice on S².
pub fn sphere_nodes(d: usize, count: usize) -> Result<Vec<Vec<f64>>> {
    if count < MIN_SPHERE_NODES {
        return Err(Error::invalid(format!(
            "need at least {MIN_SPHERE_NODES} sphere nodes, got {count}"
        )));
    }
    match d {
        2 => Ok((0..count)
            .map(|j| {
                let (s, c) = (2.0 * PI * j as f64 / count as f64).sin_cos();
                vec![c, s]
            })
            .collect()),
        3 => {
            let golden = PI * (3.0 - 5f64.sqrt());
            Ok((0..count)
                .map(|j| {
                    let z = 1.0 - (2 * j + 1) as f64 / count as f64;
                    let r = (1.0 - z * z).sqrt();
                    let (s, c) = (golden * j as f64).sin_cos();
                    vec![r * c, r * s, z]
                })
                .collect())
        }
        other => Err(Error::UnsupportedDimension(other)),
    }
}

pub(crate) fn average_on_nodes<M: FourierMeasure + ?Sized>(
    m: &M,
    t: f64,
    nodes: &[Vec<f64>],
) -> f64 {
    let vals: Vec<f64> = nodes
        .par_iter()
        .map(|w| {
            let xi: Vec<f64> = w.iter().map(|c| t * c).collect();
            m.fourier_transform(&xi).norm_sqr()
        })
        .collect();
    pairwise_sum(&vals) / nodes.len() as f64
}

/// σ(t) = ∫_{S^{d−1}} |μ̂(tω)|² dω with the sphere measure normalized to 1.
pub fn spherical_average<M: FourierMeasure + ?Sized>(m: &M, t: f64, nodes: usize) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::invalid(format!("t = {t} must be positive")));
    }
    let pts = sphere_nodes(m.dim(), nodes)?;
    Ok(average_on_nodes(m, t, &pts))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphericalAverageCurve {
    pub points: Vec<(f64, f64)>,
    pub nodes: usize,
}

impl SphericalAverageCurve {
    pub fn ts(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.0).collect()
    }

    pub fn sigmas(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.1).collect()
    }
}

/// σ(t) on strictly increasing `ts`.
pub fn spherical_average_curve<M: FourierMeasure + ?Sized>(
    m: &M,
    ts: &[f64],
    nodes: usize,
) -> Result<SphericalAverageCurve> {
    if ts.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid("t values must be strictly increasing"));
    }
    if ts.iter().any(|t| !(*t > 0.0)) {
        return Err(Error::invalid("t values must be positive"));
    }
    let pts = sphere_nodes(m.dim(), nodes)?;
    Ok(SphericalAverageCurve {
        points: ts.iter().map(|&t| (t, average_on_nodes(m, t, &pts))).collect(),
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::DiscreteMeasure;

    #[test]
    fn nodes_are_unit_vectors() {
        for d in [2, 3] {
            for w in sphere_nodes(d, 100).unwrap() {
                let n: f64 = w.iter().map(|c| c * c).sum();
                assert!((n - 1.0).abs() < 1e-14);
            }
        }
        assert!(matches!(sphere_nodes(4, 100), Err(Error::UnsupportedDimension(4))));
        assert!(sphere_nodes(2, 8).is_err());
    }

    #[test]
    fn fibonacci_nodes_have_small_mean() {
        let nodes = sphere_nodes(3, 512).unwrap();
        for axis in 0..3 {
            let mean: f64 = nodes.iter().map(|w| w[axis]).sum::<f64>() / 512.0;
            assert!(mean.abs() < 1e-2, "{axis}: {mean}");
        }
    }

    #[test]
    fn delta_average_is_one() {
        let m = DiscreteMeasure::delta(2).unwrap();
        for t in [0.1, 1.0, 17.0] {
            assert!((spherical_average(&m, t, 64).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn small_t_tends_to_one() {
        let m = DiscreteMeasure::cantor_product(3, 2).unwrap();
        let s = spherical_average(&m, 1e-6, 64).unwrap();
        assert!((s - 1.0).abs() < 1e-9);
    }

    #[test]
    fn curve_requires_increasing_t() {
        let m = DiscreteMeasure::delta(2).unwrap();
        assert!(spherical_average_curve(&m, &[1.0, 1.0], 32).is_err());
        assert!(spherical_average(&m, 0.0, 32).is_err());
    }
}
