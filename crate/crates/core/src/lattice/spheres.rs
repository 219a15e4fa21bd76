use std::collections::HashSet;

use itertools::Itertools;
use serde::Serialize;

use super::sphere_lattice_points;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThreeSpheresOptions {
    pub require_distinct: bool,
    pub require_nondegenerate: bool,
}

impl Default for ThreeSpheresOptions {
    fn default() -> Self {
        ThreeSpheresOptions {
            require_distinct: true,
            require_nondegenerate: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeSpheresCensus {
    pub radii_squared: [u64; 3],
    pub sphere_sizes: [usize; 3],
    pub triangles_examined: u64,
    pub classes: u64,
}

/// Congruence classes of triangles (u, v, w) with u, v, w lattice points on
/// the spheres |u|² = n1, |v|² = n2, |w|² = n3.
///
/// Each vertex is labeled by its sphere; two triangles are identified when
/// a vertex bijection preserves both labels and squared side lengths. This
/// identifies vertex permutations only among spheres of equal radius.
pub fn three_spheres_triangle_census(
    n1: u64,
    n2: u64,
    n3: u64,
    opts: ThreeSpheresOptions,
) -> Result<ThreeSpheresCensus> {
    let radii = [n1, n2, n3];
    let spheres: Vec<Vec<[i64; 3]>> = radii.iter().map(|&n| sphere_lattice_points(n)).collect();
    for (s, &n) in spheres.iter().zip(&radii) {
        if s.is_empty() {
            return Err(Error::EmptySphere(n));
        }
    }
    let labels = radii.map(|n| n as i64);
    let perms: Vec<Vec<usize>> = (0..3).permutations(3).collect();

    let mut classes: HashSet<[i64; 6]> = HashSet::new();
    let mut examined = 0u64;
    for u in &spheres[0] {
        for v in &spheres[1] {
            for w in &spheres[2] {
                examined += 1;
                if opts.require_distinct && (u == v || u == w || v == w) {
                    continue;
                }
                if opts.require_nondegenerate && collinear(u, v, w) {
                    continue;
                }
                let pts = [u, v, w];
                let key = perms
                    .iter()
                    .map(|p| {
                        [
                            labels[p[0]],
                            labels[p[1]],
                            labels[p[2]],
                            sq_dist(pts[p[0]], pts[p[1]]),
                            sq_dist(pts[p[0]], pts[p[2]]),
                            sq_dist(pts[p[1]], pts[p[2]]),
                        ]
                    })
                    .min()
                    .expect("six permutations");
                classes.insert(key);
            }
        }
    }
    Ok(ThreeSpheresCensus {
        radii_squared: radii,
        sphere_sizes: [spheres[0].len(), spheres[1].len(), spheres[2].len()],
        triangles_examined: examined,
        classes: classes.len() as u64,
    })
}

fn sq_dist(a: &[i64; 3], b: &[i64; 3]) -> i64 {
    (0..3).map(|m| (a[m] - b[m]).pow(2)).sum()
}

fn collinear(u: &[i64; 3], v: &[i64; 3], w: &[i64; 3]) -> bool {
    let a = [v[0] - u[0], v[1] - u[1], v[2] - u[2]];
    let b = [w[0] - u[0], w[1] - u[1], w[2] - u[2]];
    let c = [
        a[1] as i128 * b[2] as i128 - a[2] as i128 * b[1] as i128,
        a[2] as i128 * b[0] as i128 - a[0] as i128 * b[2] as i128,
        a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128,
    ];
    c == [0, 0, 0]
}
