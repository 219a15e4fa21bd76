use super::linalg::{offsets_independent_exact, offsets_independent_float};
use super::{Mode, PointSet, DEGENERACY_RTOL};
use crate::{Error, Result};

/// An ordered (k+1)-tuple of point indices, the vertices x¹, …, x^{k+1} of
/// a (possibly degenerate) k-simplex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    vertices: Vec<usize>,
}

impl Configuration {
    /// Checks that the indices are in range and that `1 <= k <= dim`.
    pub fn new(ps: &PointSet, vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::invalid("a configuration needs at least two vertices"));
        }
        let k = vertices.len() - 1;
        if k > ps.dim() {
            return Err(Error::invalid(format!(
                "k = {k} exceeds the ambient dimension {}",
                ps.dim()
            )));
        }
        for &v in &vertices {
            ps.check_index(v)?;
        }
        Ok(Configuration { vertices })
    }

    #[cfg(test)]
    pub(crate) fn unchecked(vertices: Vec<usize>) -> Self {
        Configuration { vertices }
    }

    pub fn k(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
}

/// Pairwise squared distances in the order (1,2), (1,3), …, (k,k+1).
#[derive(Debug, Clone, PartialEq)]
pub enum SquaredDistances {
    Exact(Vec<i64>),
    Float(Vec<f64>),
}

impl SquaredDistances {
    pub fn len(&self) -> usize {
        match self {
            SquaredDistances::Exact(v) => v.len(),
            SquaredDistances::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            SquaredDistances::Exact(v) => v.iter().map(|&x| x as f64).collect(),
            SquaredDistances::Float(v) => v.clone(),
        }
    }
}

pub fn squared_distance_vector(ps: &PointSet, c: &Configuration) -> Result<SquaredDistances> {
    for &v in c.vertices() {
        ps.check_index(v)?;
    }
    let vs = c.vertices();
    let pairs = upper_pairs(vs.len());
    Ok(match ps.mode() {
        Mode::Exact => SquaredDistances::Exact(
            pairs.map(|(i, j)| ps.sq_dist_exact(vs[i], vs[j])).collect(),
        ),
        Mode::Float => {
            SquaredDistances::Float(pairs.map(|(i, j)| ps.sq_dist_f64(vs[i], vs[j])).collect())
        }
    })
}

/// Linear independence of the offsets x^j − x¹.
pub fn is_nondegenerate(ps: &PointSet, c: &Configuration) -> Result<bool> {
    for &v in c.vertices() {
        ps.check_index(v)?;
    }
    Ok(nondegenerate_unchecked(ps, c.vertices()))
}

pub(crate) fn nondegenerate_unchecked(ps: &PointSet, vs: &[usize]) -> bool {
    match ps.mode() {
        Mode::Exact => {
            let base = ps.exact_point(vs[0]).expect("exact mode");
            let offsets: Vec<Vec<i64>> = vs[1..]
                .iter()
                .map(|&v| {
                    let p = ps.exact_point(v).expect("exact mode");
                    p.iter().zip(base).map(|(a, b)| a - b).collect()
                })
                .collect();
            offsets_independent_exact(&offsets)
        }
        Mode::Float => {
            let base = ps.point_f64(vs[0]);
            let offsets: Vec<Vec<f64>> = vs[1..]
                .iter()
                .map(|&v| {
                    ps.point_f64(v)
                        .iter()
                        .zip(&base)
                        .map(|(a, b)| a - b)
                        .collect()
                })
                .collect();
            offsets_independent_float(&offsets, DEGENERACY_RTOL)
        }
    }
}

/// Index pairs (i, j), i < j, in row-major upper-triangle order.
pub(crate) fn upper_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}
