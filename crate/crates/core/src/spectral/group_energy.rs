use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{haar_sample_with, DiscreteMeasure, GridDensity, OrthogonalTransform};
use crate::stats::{mean_stderr, pairwise_sum};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GroupEnergyOptions {
    /// Grid cell side.
    pub h: f64,
    /// Haar (and, for the similarity variant, scale) samples.
    pub samples: usize,
    pub seed: u64,
    /// Sub-points per axis when depositing the transformed density.
    pub supersample: usize,
    /// Largest padded FFT grid allowed.
    pub cell_budget: usize,
}

impl Default for GroupEnergyOptions {
    fn default() -> Self {
        GroupEnergyOptions {
            h: 1.0 / 32.0,
            samples: 64,
            seed: 0,
            supersample: 1,
            cell_budget: 1 << 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupEnergyEstimate {
    pub k: usize,
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
    pub h: f64,
}

/// ∫ ν^{k+1} dx for ν the density of u − a g v on the grid.
fn slice_energy(
    rho: &GridDensity,
    k: usize,
    a: f64,
    g: &OrthogonalTransform,
    opts: &GroupEnergyOptions,
) -> Result<f64> {
    let image = rho.transformed(a, g, opts.supersample)?;
    let cells = rho.correlation_cells(&image);
    if cells > opts.cell_budget {
        return Err(Error::BudgetExceeded {
            what: "correlation grid cells",
            required: cells as u128,
            budget: opts.cell_budget as u128,
        });
    }
    let (_, _, nu) = rho.cross_correlation(&image)?;
    let p = k as i32 + 1;
    let terms: Vec<f64> = nu.iter().map(|v| v.max(0.0).powi(p)).collect();
    Ok(pairwise_sum(&terms) * rho.h().powi(rho.dim() as i32))
}

fn check(m: &DiscreteMeasure, k: usize, opts: &GroupEnergyOptions) -> Result<GridDensity> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if opts.samples < 2 {
        return Err(Error::invalid("need at least two samples for a standard error"));
    }
    GridDensity::bin(m, opts.h)
}

/// ∫ ν_g^{k+1} dx at a single transform g.
pub fn group_energy_at(
    m: &DiscreteMeasure,
    k: usize,
    g: &OrthogonalTransform,
    opts: &GroupEnergyOptions,
) -> Result<f64> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let rho = GridDensity::bin(m, opts.h)?;
    slice_energy(&rho, k, 1.0, g, opts)
}

/// Monte-Carlo estimate of ∫_{O(d)} ∫ ν_g^{k+1} dx dg with Haar-random g.
pub fn group_energy(
    m: &DiscreteMeasure,
    k: usize,
    opts: &GroupEnergyOptions,
) -> Result<GroupEnergyEstimate> {
    group_energy_similarity(m, k, (1.0, 1.0), opts)
}

/// Monte-Carlo estimate of the scale-averaged group energy
/// ∫_I ∫_{O(d)} ∫ ν_{a,g}^{k+1} dx dg da/a, with da/a normalized to a
/// probability on I = [a_lo, a_hi] and a drawn log-uniformly.
///
/// Scales come from a separate stream, so a degenerate range [1, 1]
/// reproduces [`group_energy`] exactly.
pub fn group_energy_similarity(
    m: &DiscreteMeasure,
    k: usize,
    a_range: (f64, f64),
    opts: &GroupEnergyOptions,
) -> Result<GroupEnergyEstimate> {
    let (a_lo, a_hi) = a_range;
    if !(a_lo > 0.0 && a_hi >= a_lo && a_hi.is_finite()) {
        return Err(Error::invalid(format!("invalid scale range [{a_lo}, {a_hi}]")));
    }
    let rho = check(m, k, opts)?;
    let d = m.dim();
    let mut g_rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut a_rng = ChaCha8Rng::seed_from_u64(opts.seed);
    a_rng.set_stream(1);
    let log_span = (a_hi / a_lo).ln();
    let draws: Vec<(f64, OrthogonalTransform)> = (0..opts.samples)
        .map(|_| {
            let g = haar_sample_with(d, &mut g_rng)?;
            let a = if log_span == 0.0 {
                a_lo
            } else {
                a_lo * (log_span * a_rng.random::<f64>()).exp()
            };
            Ok((a, g))
        })
        .collect::<Result<_>>()?;
    let values: Vec<f64> = draws
        .par_iter()
        .map(|(a, g)| slice_energy(&rho, k, *a, g, opts))
        .collect::<Result<_>>()?;
    let (value, stderr) = mean_stderr(&values);
    Ok(GroupEnergyEstimate {
        k,
        value,
        stderr,
        samples: opts.samples,
        seed: opts.seed,
        h: opts.h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_single_cell() {
        let m = DiscreteMeasure::delta(2).unwrap();
        let opts = GroupEnergyOptions {
            h: 0.25,
            samples: 8,
            ..GroupEnergyOptions::default()
        };
        for k in 1..=3 {
            let e = group_energy(&m, k, &opts).unwrap();
            let want = 0.25f64.powi(-2 * k as i32);
            assert!((e.value - want).abs() < 1e-9 * want, "k={k}: {}", e.value);
            assert!(e.stderr < 1e-9 * want);
            let s = group_energy_similarity(&m, k, (1.0, 2.0), &opts).unwrap();
            assert!((s.value - want).abs() < 1e-9 * want);
        }
    }

    #[test]
    fn degenerate_scale_range_matches() {
        let m = DiscreteMeasure::full_grid(8, 2).unwrap();
        let opts = GroupEnergyOptions {
            h: 0.125,
            samples: 6,
            seed: 3,
            ..GroupEnergyOptions::default()
        };
        let a = group_energy(&m, 1, &opts).unwrap();
        let b = group_energy_similarity(&m, 1, (1.0, 1.0), &opts).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors() {
        let m = DiscreteMeasure::full_grid(4, 2).unwrap();
        let coarse = GroupEnergyOptions {
            h: 0.5,
            ..GroupEnergyOptions::default()
        };
        assert!(matches!(group_energy(&m, 1, &coarse), Err(Error::GridTooCoarse(_))));
        let opts = GroupEnergyOptions {
            h: 0.25,
            ..GroupEnergyOptions::default()
        };
        assert!(group_energy(&m, 0, &opts).is_err());
        assert!(group_energy_similarity(&m, 1, (2.0, 1.0), &opts).is_err());
        let tiny = GroupEnergyOptions {
            h: 0.25,
            cell_budget: 10,
            ..GroupEnergyOptions::default()
        };
        assert!(matches!(group_energy(&m, 1, &tiny), Err(Error::BudgetExceeded { .. })));
    }
}
