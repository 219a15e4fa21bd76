use std::collections::HashSet;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::{count_classes, ClassOptions, PointSet, Relation};
use crate::{Error, Result};

/// The grid Z^d ∩ [0, q]^d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeBox {
    pub dim: usize,
    pub q: u64,
}

impl LatticeBox {
    pub fn new(dim: usize, q: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        Ok(LatticeBox { dim, q })
    }

    /// (q+1)^d.
    pub fn point_count(&self) -> u128 {
        (self.q as u128 + 1).saturating_pow(self.dim as u32)
    }

    /// The box as an exact point set, points in lexicographic order.
    pub fn point_set(&self, budget: u128) -> Result<PointSet> {
        let n = self.point_count();
        if n > budget {
            return Err(Error::BudgetExceeded {
                what: "lattice box points",
                required: n,
                budget,
            });
        }
        let side = self.q as i64 + 1;
        let mut coords = Vec::with_capacity(n as usize * self.dim);
        for idx in 0..n as i64 {
            let mut rest = idx;
            let mut p = vec![0i64; self.dim];
            for m in (0..self.dim).rev() {
                p[m] = rest % side;
                rest /= side;
            }
            coords.extend(p);
        }
        PointSet::exact_flat(self.dim, coords)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusOptions {
    /// Work budget: vertex subsets for the direct path, vertex pairs for
    /// the translation-reduced path.
    pub budget: u128,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            budget: 20_000_000_000,
        }
    }
}

/// Exact number of k-simplex classes with vertices in the box.
///
/// Planar triangles use the translation reduction: the lexicographically
/// smallest vertex is moved to the origin, the other two range over the
/// half-plane of lexicographically larger points in [−q, q]², and a pair is
/// kept only when the triangle still fits in a box of side q.
pub fn grid_simplex_census(
    lattice: LatticeBox,
    k: usize,
    relation: Relation,
    opts: &CensusOptions,
) -> Result<u64> {
    if lattice.dim == 2 && k == 2 {
        planar_triangle_census(lattice.q, relation, opts.budget)
    } else {
        grid_simplex_census_direct(lattice, k, relation, opts)
    }
}

/// Census by enumerating every (k+1)-subset of the box.
pub fn grid_simplex_census_direct(
    lattice: LatticeBox,
    k: usize,
    relation: Relation,
    opts: &CensusOptions,
) -> Result<u64> {
    let ps = lattice.point_set(opts.budget)?;
    let class_opts = ClassOptions {
        budget: opts.budget,
        ..ClassOptions::default()
    };
    Ok(count_classes(&ps, k, relation, &class_opts)?.count() as u64)
}

fn planar_triangle_census(q: u64, relation: Relation, budget: u128) -> Result<u64> {
    let side = 2 * q as u128 + 1;
    let required = side.pow(4);
    if required > budget {
        return Err(Error::BudgetExceeded {
            what: "translation-reduced vertex pairs",
            required,
            budget,
        });
    }
    let q = q as i64;
    // Points lexicographically after the origin inside [-q, q]^2.
    let half: Vec<(i64, i64)> = (0..=q)
        .flat_map(|x| (-q..=q).map(move |y| (x, y)))
        .filter(|&(x, y)| x > 0 || y > 0)
        .collect();

    let merged = half
        .par_iter()
        .enumerate()
        .fold(HashSet::new, |mut set: HashSet<[i64; 3]>, (i, &v)| {
            for &w in &half[i + 1..] {
                if !fits(q, v, w) {
                    continue;
                }
                let cross = v.0 * w.1 - v.1 * w.0;
                if cross == 0 {
                    continue;
                }
                let dv = v.0 * v.0 + v.1 * v.1;
                let dw = w.0 * w.0 + w.1 * w.1;
                let dvw = (v.0 - w.0).pow(2) + (v.1 - w.1).pow(2);
                let mut key = [dv, dw, dvw];
                key.sort_unstable();
                if relation == Relation::Similarity {
                    let g = key[0].gcd(&key[1]).gcd(&key[2]);
                    key.iter_mut().for_each(|e| *e /= g);
                }
                set.insert(key);
            }
            set
        })
        .reduce(HashSet::new, |mut a, b| {
            if a.len() < b.len() {
                return b.into_iter().chain(a).collect();
            }
            a.extend(b);
            a
        });
    Ok(merged.len() as u64)
}

/// Whether {0, v, w} fits in some translate of [0, q]^2.
fn fits(q: i64, v: (i64, i64), w: (i64, i64)) -> bool {
    let span = |a: i64, b: i64| a.max(b).max(0) - a.min(b).min(0);
    span(v.0, w.0) <= q && span(v.1, w.1) <= q
}
