use crate::geometry::PointSet;
use crate::{Error, Result};

/// Probability measure made of finitely many weighted point masses.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    dim: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
}

pub const MASS_TOLERANCE: f64 = 1e-12;

impl DiscreteMeasure {
    /// Atoms given row-major in `points`; weights must be positive and sum
    /// to 1 within `MASS_TOLERANCE`.
    pub fn new(dim: usize, points: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        if points.len() != weights.len() * dim {
            return Err(Error::invalid(format!(
                "{} coordinates for {} atoms in dimension {dim}",
                points.len(),
                weights.len()
            )));
        }
        if weights.is_empty() {
            return Err(Error::invalid("measure has no atoms"));
        }
        if points.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("non-finite atom coordinate"));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::invalid("atom weights must be positive"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::invalid(format!("atom weights sum to {total}, not 1")));
        }
        Ok(DiscreteMeasure {
            dim,
            points,
            weights,
        })
    }

    pub fn uniform(dim: usize, points: Vec<f64>) -> Result<Self> {
        if dim == 0 || points.is_empty() || points.len() % dim != 0 {
            return Err(Error::invalid("cannot split coordinates into atoms"));
        }
        let n = points.len() / dim;
        Self::new(dim, points, vec![1.0 / n as f64; n])
    }

    /// Unit mass at the origin.
    pub fn delta(dim: usize) -> Result<Self> {
        Self::new(dim, vec![0.0; dim], vec![1.0])
    }

    /// Uses the point-set weights, or uniform weights when it has none.
    /// Zero-weight points are dropped.
    pub fn from_point_set(ps: &PointSet) -> Result<Self> {
        let n = ps.len();
        let weights = ps
            .weights()
            .map(|w| w.to_vec())
            .unwrap_or_else(|| vec![1.0 / n as f64; n]);
        let mut pts = Vec::with_capacity(n * ps.dim());
        let mut ws = Vec::with_capacity(n);
        for (i, &w) in weights.iter().enumerate() {
            if w > 0.0 {
                pts.extend(ps.point_f64(i));
                ws.push(w);
            }
        }
        Self::new(ps.dim(), pts, ws)
    }

    /// Uniform measure on the 2^level centers of the level-`level`
    /// middle-thirds intervals, raised to the `dim`-fold product.
    pub fn cantor_product(level: u32, dim: usize) -> Result<Self> {
        let mut line = vec![0.5f64];
        let mut width = 1.0f64;
        for _ in 0..level {
            width /= 3.0;
            line = line
                .iter()
                .flat_map(|&c| [c - width, c + width])
                .collect();
        }
        let mut pts: Vec<Vec<f64>> = vec![Vec::new()];
        for _ in 0..dim {
            pts = pts
                .into_iter()
                .flat_map(|p| {
                    line.iter().map(move |&c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        Self::uniform(dim, pts.concat())
    }

    /// Uniform measure on the full grid {0, 1/m, …, (m−1)/m}^dim.
    pub fn full_grid(m: usize, dim: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("grid side must be positive"));
        }
        let n = m.pow(dim as u32);
        let mut pts = Vec::with_capacity(n * dim);
        for idx in 0..n {
            let mut rest = idx;
            let mut p = vec![0.0; dim];
            for c in p.iter_mut().rev() {
                *c = (rest % m) as f64 / m as f64;
                rest /= m;
            }
            pts.extend(p);
        }
        Self::uniform(dim, pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Image under x ↦ f(x).
    pub fn map(&self, mut f: impl FnMut(&[f64]) -> Vec<f64>) -> Result<Self> {
        let pts: Vec<f64> = (0..self.len()).flat_map(|i| f(self.point(i))).collect();
        Self::new(self.dim, pts, self.weights.clone())
    }

    /// Image under x ↦ factor · x.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        self.map(|p| p.iter().map(|c| c * factor).collect())
    }

    pub fn diameter(&self) -> f64 {
        let n = self.len();
        let mut best = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                best = best.max(sq_dist(self.point(i), self.point(j)));
            }
        }
        best.sqrt()
    }

    /// Smallest distance between two distinct atoms, `None` for one atom.
    pub fn min_spacing(&self) -> Option<f64> {
        let n = self.len();
        let mut best = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                let d = sq_dist(self.point(i), self.point(j));
                if d > 0.0 {
                    best = best.min(d);
                }
            }
        }
        best.is_finite().then(|| best.sqrt())
    }
}

pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum()
}
