use std::collections::HashMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::config::upper_pairs;
use super::{Mode, PointSet};
use crate::stats::{mean_stderr, pairwise_sum};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarlo {
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThickenedOptions {
    /// Maximum number of ordered tuple pairs, n^{2(k+1)}, for the exact sum.
    pub budget: u128,
    /// Fallback when the exact sum is over budget.
    pub monte_carlo: Option<MonteCarlo>,
}

impl Default for ThickenedOptions {
    fn default() -> Self {
        ThickenedOptions {
            budget: 10_000_000_000,
            monte_carlo: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThickenedMeasure {
    pub value: f64,
    /// Standard error; `None` for the exact sum.
    pub stderr: Option<f64>,
    pub exact: bool,
}

/// μ^{2(k+1)} of the ordered pairs of (k+1)-tuples whose corresponding
/// distances all differ by at most `epsilon`. Degenerate tuples count.
pub fn thickened_pair_measure(
    ps: &PointSet,
    k: usize,
    epsilon: f64,
    opts: &ThickenedOptions,
) -> Result<ThickenedMeasure> {
    if !(epsilon > 0.0) {
        return Err(Error::invalid(format!("epsilon must be positive, got {epsilon}")));
    }
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let weights = ps
        .weights()
        .ok_or_else(|| Error::invalid("thickened pair measure needs weights"))?;
    let n = ps.len() as u128;
    let required = n.saturating_pow(2 * (k as u32 + 1));
    if required <= opts.budget {
        Ok(ThickenedMeasure {
            value: exact_sum(ps, weights, k, epsilon),
            stderr: None,
            exact: true,
        })
    } else if let Some(mc) = opts.monte_carlo {
        monte_carlo(ps, weights, k, epsilon, mc)
    } else {
        Err(Error::BudgetExceeded {
            what: "ordered tuple pairs",
            required,
            budget: opts.budget,
        })
    }
}

/// Groups ordered tuples by their exact squared-distance vector, then sums
/// mass products over matching group pairs.
fn exact_sum(ps: &PointSet, weights: &[f64], k: usize, epsilon: f64) -> f64 {
    let n = ps.len();
    let m = k + 1;
    let mut groups: HashMap<Vec<u64>, f64> = HashMap::new();
    let mut idx = vec![0usize; m];
    'outer: loop {
        let w: f64 = idx.iter().map(|&i| weights[i]).product();
        if w > 0.0 {
            let key: Vec<u64> = upper_pairs(m)
                .map(|(a, b)| match ps.mode() {
                    Mode::Exact => ps.sq_dist_exact(idx[a], idx[b]) as u64,
                    Mode::Float => ps.sq_dist_f64(idx[a], idx[b]).to_bits(),
                })
                .collect();
            *groups.entry(key).or_insert(0.0) += w;
        }
        for slot in (0..m).rev() {
            idx[slot] += 1;
            if idx[slot] < n {
                continue 'outer;
            }
            idx[slot] = 0;
        }
        break;
    }

    let mode = ps.mode();
    let to_dist = |raw: u64| -> f64 {
        match mode {
            Mode::Exact => (raw as f64).sqrt(),
            Mode::Float => f64::from_bits(raw).sqrt(),
        }
    };
    let mut entries: Vec<(Vec<u64>, f64)> = groups.into_iter().collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let dists: Vec<(Vec<f64>, f64)> = entries
        .into_iter()
        .map(|(key, w)| (key.into_iter().map(to_dist).collect(), w))
        .collect();

    let partials: Vec<f64> = dists
        .par_iter()
        .map(|(da, wa)| {
            let matched: Vec<f64> = dists
                .iter()
                .filter(|(db, _)| da.iter().zip(db).all(|(x, y)| (x - y).abs() <= epsilon))
                .map(|(_, wb)| wa * wb)
                .collect();
            pairwise_sum(&matched)
        })
        .collect();
    pairwise_sum(&partials).min(1.0)
}

fn monte_carlo(
    ps: &PointSet,
    weights: &[f64],
    k: usize,
    epsilon: f64,
    mc: MonteCarlo,
) -> Result<ThickenedMeasure> {
    if mc.samples < 2 {
        return Err(Error::invalid("Monte-Carlo needs at least two samples"));
    }
    let dist = WeightedIndex::new(weights).map_err(|e| Error::invalid(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(mc.seed);
    let m = k + 1;
    let mut x = vec![0usize; m];
    let mut y = vec![0usize; m];
    let hits: Vec<f64> = (0..mc.samples)
        .map(|_| {
            x.iter_mut().for_each(|v| *v = dist.sample(&mut rng));
            y.iter_mut().for_each(|v| *v = dist.sample(&mut rng));
            let ok = upper_pairs(m).all(|(a, b)| {
                let dx = ps.sq_dist_f64(x[a], x[b]).sqrt();
                let dy = ps.sq_dist_f64(y[a], y[b]).sqrt();
                (dx - dy).abs() <= epsilon
            });
            if ok {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    let (value, stderr) = mean_stderr(&hits);
    Ok(ThickenedMeasure {
        value,
        stderr: Some(stderr),
        exact: false,
    })
}
