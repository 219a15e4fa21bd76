use serde::Serialize;

use crate::{Error, Result};

/// Default absolute grid for quantizing float-mode squared distances.
pub const DEFAULT_QUANTUM: f64 = 1e-9;

/// Tolerance on `sum(weights) == 1`.
pub const WEIGHT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::invalid(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Coordinates {
    Exact(Vec<i64>),
    Float(Vec<f64>),
}

/// A finite list of points in R^d, stored row-major.
///
/// Exact-mode sets guarantee that every squared distance fits in an `i64`.
/// Float-mode sets carry the quantization scale used to turn squared
/// distances into comparable integers.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Coordinates,
    weights: Option<Vec<f64>>,
    quantum: Option<f64>,
}

impl PointSet {
    pub fn exact(dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        let flat = flatten(dim, points)?;
        Self::exact_flat(dim, flat)
    }

    pub fn exact_flat(dim: usize, coords: Vec<i64>) -> Result<Self> {
        check_shape(dim, coords.len())?;
        check_exact_range(dim, &coords)?;
        Ok(PointSet {
            dim,
            coords: Coordinates::Exact(coords),
            weights: None,
            quantum: None,
        })
    }

    pub fn float(dim: usize, points: &[Vec<f64>]) -> Result<Self> {
        let flat = flatten(dim, points)?;
        Self::float_flat(dim, flat)
    }

    pub fn float_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        check_shape(dim, coords.len())?;
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("non-finite coordinate"));
        }
        Ok(PointSet {
            dim,
            coords: Coordinates::Float(coords),
            weights: None,
            quantum: Some(DEFAULT_QUANTUM),
        })
    }

    /// Attach probability weights (nonnegative, summing to 1).
    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.len() {
            return Err(Error::invalid(format!(
                "{} weights for {} points",
                weights.len(),
                self.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::invalid("weights must be finite and nonnegative"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_TOLERANCE {
            return Err(Error::invalid(format!("weights sum to {total}, not 1")));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn with_uniform_weights(self) -> Result<Self> {
        let n = self.len();
        if n == 0 {
            return Err(Error::invalid("empty point set"));
        }
        self.with_weights(vec![1.0 / n as f64; n])
    }

    /// Set or clear the float-mode quantization scale. Ignored in exact mode.
    pub fn with_quantum(mut self, quantum: Option<f64>) -> Result<Self> {
        if let Some(q) = quantum {
            if !(q > 0.0 && q.is_finite()) {
                return Err(Error::invalid(format!("quantization scale {q} must be positive")));
            }
        }
        self.quantum = quantum;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        match &self.coords {
            Coordinates::Exact(c) => c.len() / self.dim,
            Coordinates::Float(c) => c.len() / self.dim,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mode(&self) -> Mode {
        match self.coords {
            Coordinates::Exact(_) => Mode::Exact,
            Coordinates::Float(_) => Mode::Float,
        }
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn quantum(&self) -> Option<f64> {
        self.quantum
    }

    /// Integer coordinates of point `i`; `None` in float mode.
    pub fn exact_point(&self, i: usize) -> Option<&[i64]> {
        match &self.coords {
            Coordinates::Exact(c) => Some(&c[i * self.dim..(i + 1) * self.dim]),
            Coordinates::Float(_) => None,
        }
    }

    /// Coordinates of point `i` as floats (exact mode converts).
    pub fn point_f64(&self, i: usize) -> Vec<f64> {
        match &self.coords {
            Coordinates::Exact(c) => c[i * self.dim..(i + 1) * self.dim]
                .iter()
                .map(|&v| v as f64)
                .collect(),
            Coordinates::Float(c) => c[i * self.dim..(i + 1) * self.dim].to_vec(),
        }
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// Exact squared distance; only valid in exact mode, indices unchecked.
    pub(crate) fn sq_dist_exact(&self, i: usize, j: usize) -> i64 {
        match &self.coords {
            Coordinates::Exact(c) => {
                let (a, b) = (&c[i * self.dim..], &c[j * self.dim..]);
                (0..self.dim).map(|m| (a[m] - b[m]) * (a[m] - b[m])).sum()
            }
            Coordinates::Float(_) => unreachable!("exact distance requested in float mode"),
        }
    }

    pub(crate) fn sq_dist_f64(&self, i: usize, j: usize) -> f64 {
        match &self.coords {
            Coordinates::Exact(_) => self.sq_dist_exact(i, j) as f64,
            Coordinates::Float(c) => {
                let (a, b) = (&c[i * self.dim..], &c[j * self.dim..]);
                (0..self.dim).map(|m| (a[m] - b[m]).powi(2)).sum()
            }
        }
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> f64 {
        let n = self.len();
        let mut best = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                best = best.max(self.sq_dist_f64(i, j));
            }
        }
        best.sqrt()
    }

    /// The sub-point-set on `indices`, keeping mode and quantum. Weights are
    /// dropped since they would no longer sum to 1.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        for &i in indices {
            self.check_index(i)?;
        }
        let coords = match &self.coords {
            Coordinates::Exact(c) => Coordinates::Exact(
                indices
                    .iter()
                    .flat_map(|&i| c[i * self.dim..(i + 1) * self.dim].iter().copied())
                    .collect(),
            ),
            Coordinates::Float(c) => Coordinates::Float(
                indices
                    .iter()
                    .flat_map(|&i| c[i * self.dim..(i + 1) * self.dim].iter().copied())
                    .collect(),
            ),
        };
        Ok(PointSet {
            dim: self.dim,
            coords,
            weights: None,
            quantum: self.quantum,
        })
    }
}

fn flatten<T: Copy>(dim: usize, points: &[Vec<T>]) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(points.len() * dim);
    for (row, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(Error::invalid(format!(
                "point {row} has {} coordinates, expected {dim}",
                p.len()
            )));
        }
        out.extend_from_slice(p);
    }
    Ok(out)
}

fn check_shape(dim: usize, len: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    if len % dim != 0 {
        return Err(Error::invalid(format!(
            "{len} coordinates do not split into rows of {dim}"
        )));
    }
    Ok(())
}

/// Every squared distance is at most the sum over axes of the squared
/// coordinate span, so bounding that sum bounds all of them.
fn check_exact_range(dim: usize, coords: &[i64]) -> Result<()> {
    if coords.is_empty() {
        return Ok(());
    }
    let mut total: i128 = 0;
    for m in 0..dim {
        let axis = coords.iter().skip(m).step_by(dim);
        let lo = axis.clone().min().copied().unwrap_or(0) as i128;
        let hi = axis.max().copied().unwrap_or(0) as i128;
        let span = hi - lo;
        total = total.saturating_add(span.saturating_mul(span));
    }
    if total > i64::MAX as i128 {
        return Err(Error::Overflow(format!(
            "squared diameter bound {total} does not fit in 64 bits"
        )));
    }
    Ok(())
}
