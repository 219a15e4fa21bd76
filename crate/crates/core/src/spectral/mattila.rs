use rayon::prelude::*;

use super::quadrature::composite_rule;
use super::sphere::{average_on_nodes, sphere_nodes};
use super::FourierMeasure;
use crate::stats::pairwise_sum;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct MattilaOptions {
    /// Sphere nodes per σ(t) evaluation.
    pub nodes: usize,
    /// Gauss–Legendre points per panel.
    pub order: usize,
    /// Panel width in t; `None` picks 1 / (2 · diam), capped at 1.
    pub panel_width: Option<f64>,
    /// Maximum number of σ(t) evaluations.
    pub budget: usize,
}

impl Default for MattilaOptions {
    fn default() -> Self {
        MattilaOptions {
            nodes: 256,
            order: 16,
            panel_width: None,
            budget: 1_000_000,
        }
    }
}

/// ∫_{t_min}^{t_max} σ(t)² t^{d−1} dt with σ the normalized spherical
/// average of |μ̂|².
///
/// σ(t)² oscillates in t at frequency at most 4π·diam, which sets the
/// default panel width.
pub fn mattila_integral<M: FourierMeasure + ?Sized>(
    m: &M,
    t_min: f64,
    t_max: f64,
    opts: &MattilaOptions,
) -> Result<f64> {
    if !(t_min > 0.0 && t_max > t_min) {
        return Err(Error::invalid(format!(
            "need 0 < t_min < t_max, got [{t_min}, {t_max}]"
        )));
    }
    let width = opts
        .panel_width
        .unwrap_or_else(|| (0.5 / m.support_diameter()).min(1.0));
    if !(width > 0.0) {
        return Err(Error::invalid("panel width must be positive"));
    }
    let panels = ((t_max - t_min) / width).ceil().max(1.0) as usize;
    let evals = panels * opts.order;
    if evals > opts.budget {
        return Err(Error::BudgetExceeded {
            what: "spherical-average evaluations",
            required: evals as u128,
            budget: opts.budget as u128,
        });
    }
    let d = m.dim();
    let nodes = sphere_nodes(d, opts.nodes)?;
    let rule = composite_rule(t_min, t_max, panels, opts.order);
    let terms: Vec<f64> = rule
        .par_iter()
        .map(|&(t, w)| {
            let sigma = average_on_nodes(m, t, &nodes);
            w * sigma * sigma * t.powi(d as i32 - 1)
        })
        .collect();
    Ok(pairwise_sum(&terms))
}
