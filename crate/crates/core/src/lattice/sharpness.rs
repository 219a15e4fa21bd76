use serde::Serialize;

use crate::geometry::PointSet;
use crate::{Error, Result};

use super::LatticeBox;

/// One level of the grid construction: centers (Z^d ∩ [0,q]^d)/q, each
/// thickened by q^{-d/s} before scaling, i.e. radius q^{-d/s}/q after.
#[derive(Debug, Clone, PartialEq)]
pub struct SharpnessSet {
    pub dim: usize,
    pub q: u64,
    pub s: f64,
    pub centers: PointSet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessSummary {
    pub dim: usize,
    pub q: u64,
    pub s: f64,
    pub centers: usize,
    pub radius: f64,
    pub radius_formula: &'static str,
}

impl SharpnessSet {
    pub const RADIUS_FORMULA: &'static str = "q^(-d/s) / q";

    /// Neighborhood radius after scaling into [0,1]^d.
    pub fn radius(&self) -> f64 {
        let q = self.q as f64;
        q.powf(-(self.dim as f64) / self.s) / q
    }

    pub fn summary(&self) -> SharpnessSummary {
        SharpnessSummary {
            dim: self.dim,
            q: self.q,
            s: self.s,
            centers: self.centers.len(),
            radius: self.radius(),
            radius_formula: Self::RADIUS_FORMULA,
        }
    }
}

pub fn build_sharpness_set(dim: usize, s: f64, q: u64) -> Result<SharpnessSet> {
    if !(s > 0.0 && s < dim as f64) {
        return Err(Error::invalid(format!("s = {s} must lie in (0, {dim})")));
    }
    if q < 2 {
        return Err(Error::invalid(format!("q = {q} must be at least 2")));
    }
    let grid = LatticeBox::new(dim, q)?.point_set(u128::from(u32::MAX))?;
    let qf = q as f64;
    let coords: Vec<f64> = (0..grid.len())
        .flat_map(|i| grid.point_f64(i).into_iter().map(|c| c / qf))
        .collect();
    Ok(SharpnessSet {
        dim,
        q,
        s,
        centers: PointSet::float_flat(dim, coords)?,
    })
}
