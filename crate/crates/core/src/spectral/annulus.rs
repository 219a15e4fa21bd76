use rayon::prelude::*;

use super::FourierMeasure;
use crate::stats::pairwise_sum;
use crate::{Error, Result};

pub const MIN_ANNULUS_CELLS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusOptions {
    /// Grid cells across the annulus width r; the cell side is r / cells.
    pub cells_per_width: usize,
}

impl Default for AnnulusOptions {
    fn default() -> Self {
        AnnulusOptions {
            cells_per_width: 16,
        }
    }
}

/// r^{−d} ∫_{r ≤ |x| ≤ 2r} |μ̂(x)|² dx by the midpoint rule on a tensor grid
/// covering [−2r, 2r]^d.
pub fn annulus_energy<M: FourierMeasure + ?Sized>(
    m: &M,
    r: f64,
    opts: AnnulusOptions,
) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::invalid(format!("radius {r} must be positive")));
    }
    if opts.cells_per_width < MIN_ANNULUS_CELLS {
        return Err(Error::GridTooCoarse(format!(
            "{} cells across the annulus width, need at least {MIN_ANNULUS_CELLS}",
            opts.cells_per_width
        )));
    }
    let d = m.dim();
    let h = r / opts.cells_per_width as f64;
    let side = 4 * opts.cells_per_width;
    let total = side.pow(d as u32);
    let (inner2, outer2) = (r * r, 4.0 * r * r);
    let vals: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut rest = idx;
            let mut x = vec![0.0; d];
            for c in x.iter_mut().rev() {
                *c = -2.0 * r + ((rest % side) as f64 + 0.5) * h;
                rest /= side;
            }
            let n2: f64 = x.iter().map(|c| c * c).sum();
            if n2 >= inner2 && n2 <= outer2 {
                m.fourier_transform(&x).norm_sqr()
            } else {
                0.0
            }
        })
        .collect();
    Ok(pairwise_sum(&vals) * h.powi(d as i32) / r.powi(d as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::DiscreteMeasure;
    use std::f64::consts::PI;

    #[test]
    fn delta_gives_annulus_volume() {
        let m = DiscreteMeasure::delta(2).unwrap();
        let opts = AnnulusOptions {
            cells_per_width: 64,
        };
        let v = annulus_energy(&m, 3.0, opts).unwrap();
        let want = 3.0 * PI;
        assert!((v - want).abs() / want < 5e-3, "{v} vs {want}");
    }

    #[test]
    fn coarse_grid_rejected() {
        let m = DiscreteMeasure::delta(2).unwrap();
        let opts = AnnulusOptions { cells_per_width: 7 };
        assert!(matches!(annulus_energy(&m, 1.0, opts), Err(Error::GridTooCoarse(_))));
    }

    #[test]
    fn halving_the_measure_halves_the_radius() {
        let m = DiscreteMeasure::cantor_product(2, 2).unwrap();
        let half = m.scaled(0.5).unwrap();
        let opts = AnnulusOptions::default();
        for r in [1.0, 3.0, 8.0] {
            let a = annulus_energy(&half, r, opts).unwrap();
            let b = annulus_energy(&m, r / 2.0, opts).unwrap();
            assert!((a - b).abs() <= 1e-12 * b.abs(), "{a} vs {b}");
        }
    }
}
