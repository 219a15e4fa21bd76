use itertools::Itertools;
use num_integer::Integer;
use serde::Serialize;

use super::config::upper_pairs;
use super::{Configuration, Mode, PointSet};
use crate::{Error, Result};

/// Canonical form of a (k+1)-vertex configuration under congruence: the
/// lexicographically smallest upper triangle of its squared-distance matrix
/// over all vertex relabelings.
///
/// Exact mode stores integer squared distances; float mode stores squared
/// distances divided by the quantization scale and rounded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CongruenceKey {
    pub k: usize,
    pub entries: Vec<i64>,
    pub canonical: bool,
}

/// Canonical form under similarity. Exact mode divides the squared
/// distances by their gcd; float mode divides by the largest squared
/// distance and quantizes, so the maximum entry is `round(1 / quantum)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimilarityKey {
    pub k: usize,
    pub entries: Vec<i64>,
    pub canonical: bool,
}

/// Lexicographically minimal upper triangle of the symmetric `n x n`
/// matrix `m` (row-major) over all simultaneous row/column permutations.
pub fn canonical_upper_triangle(n: usize, m: &[i64]) -> Vec<i64> {
    debug_assert_eq!(m.len(), n * n);
    match n {
        0 | 1 => Vec::new(),
        2 => vec![m[1]],
        3 => {
            // S3 acts on the three edges as the full symmetric group.
            let mut e = vec![m[1], m[2], m[5]];
            e.sort_unstable();
            e
        }
        _ => {
            let mut best: Option<Vec<i64>> = None;
            let mut cur = Vec::with_capacity(n * (n - 1) / 2);
            for perm in (0..n).permutations(n) {
                cur.clear();
                cur.extend(upper_pairs(n).map(|(i, j)| m[perm[i] * n + perm[j]]));
                if best.as_ref().is_none_or(|b| cur < *b) {
                    best = Some(cur.clone());
                }
            }
            best.unwrap_or_default()
        }
    }
}

fn quantize(value: f64, quantum: f64) -> Result<i64> {
    let q = (value / quantum).round();
    if !(q.abs() < i64::MAX as f64) {
        return Err(Error::Overflow(format!(
            "squared distance {value} exceeds the quantized range at scale {quantum}"
        )));
    }
    Ok(q as i64)
}

/// Full symmetric matrix of key values for the vertices `vs`.
fn key_matrix(ps: &PointSet, vs: &[usize]) -> Result<Vec<i64>> {
    let n = vs.len();
    let mut m = vec![0i64; n * n];
    for (i, j) in upper_pairs(n) {
        let v = match ps.mode() {
            Mode::Exact => ps.sq_dist_exact(vs[i], vs[j]),
            Mode::Float => {
                let quantum = ps.quantum().ok_or(Error::QuantizationUnset)?;
                quantize(ps.sq_dist_f64(vs[i], vs[j]), quantum)?
            }
        };
        m[i * n + j] = v;
        m[j * n + i] = v;
    }
    Ok(m)
}

fn check_vertices(ps: &PointSet, c: &Configuration) -> Result<()> {
    c.vertices().iter().try_for_each(|&v| ps.check_index(v))
}

pub fn congruence_key(ps: &PointSet, c: &Configuration) -> Result<CongruenceKey> {
    check_vertices(ps, c)?;
    congruence_key_unchecked(ps, c.vertices())
}

pub(crate) fn congruence_key_unchecked(ps: &PointSet, vs: &[usize]) -> Result<CongruenceKey> {
    let n = vs.len();
    let m = key_matrix(ps, vs)?;
    Ok(CongruenceKey {
        k: n - 1,
        entries: canonical_upper_triangle(n, &m),
        canonical: true,
    })
}

pub fn similarity_key(ps: &PointSet, c: &Configuration) -> Result<SimilarityKey> {
    check_vertices(ps, c)?;
    similarity_key_unchecked(ps, c.vertices())
}

pub(crate) fn similarity_key_unchecked(ps: &PointSet, vs: &[usize]) -> Result<SimilarityKey> {
    let n = vs.len();
    let m = match ps.mode() {
        Mode::Exact => {
            let mut m = key_matrix(ps, vs)?;
            let g = m.iter().fold(0i64, |acc, &v| acc.gcd(&v));
            if g == 0 {
                return Err(Error::Degenerate("all vertices coincide".into()));
            }
            m.iter_mut().for_each(|v| *v /= g);
            m
        }
        Mode::Float => {
            let quantum = ps.quantum().ok_or(Error::QuantizationUnset)?;
            let mut raw = vec![0f64; n * n];
            for (i, j) in upper_pairs(n) {
                let v = ps.sq_dist_f64(vs[i], vs[j]);
                raw[i * n + j] = v;
                raw[j * n + i] = v;
            }
            let max = raw.iter().cloned().fold(0.0, f64::max);
            if max == 0.0 {
                return Err(Error::Degenerate("all vertices coincide".into()));
            }
            raw.iter()
                .map(|&v| quantize(v / max, quantum))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(SimilarityKey {
        k: n - 1,
        entries: canonical_upper_triangle(n, &m),
        canonical: true,
    })
}
