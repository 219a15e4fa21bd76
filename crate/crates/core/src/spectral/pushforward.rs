use std::collections::BTreeMap;

use super::{DiscreteMeasure, OrthogonalTransform};
use crate::{Error, Result};

/// ν_g: the law of u − g v for u, v independent with law μ.
pub fn nu_g_pushforward(
    m: &DiscreteMeasure,
    g: &OrthogonalTransform,
    atom_budget: usize,
) -> Result<DiscreteMeasure> {
    nu_ag_pushforward(m, 1.0, g, atom_budget)
}

/// ν_{a,g}: the law of u − a g v. Exactly coincident atoms are merged.
pub fn nu_ag_pushforward(
    m: &DiscreteMeasure,
    a: f64,
    g: &OrthogonalTransform,
    atom_budget: usize,
) -> Result<DiscreteMeasure> {
    let d = m.dim();
    if g.dim() != d {
        return Err(Error::invalid(format!(
            "transform of dimension {} applied to a measure in dimension {d}",
            g.dim()
        )));
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::invalid(format!("dilation {a} must be positive")));
    }
    let n = m.len();
    let required = (n as u128) * (n as u128);
    if required > atom_budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "pushforward atoms",
            required,
            budget: atom_budget as u128,
        });
    }
    let images: Vec<Vec<f64>> = (0..n)
        .map(|j| g.apply(m.point(j)).into_iter().map(|c| a * c).collect())
        .collect();
    // Keyed on bit patterns with −0 folded into +0 so merging is exact.
    let mut atoms: BTreeMap<Vec<u64>, f64> = BTreeMap::new();
    for i in 0..n {
        let u = m.point(i);
        for (j, gv) in images.iter().enumerate() {
            let key: Vec<u64> = u
                .iter()
                .zip(gv)
                .map(|(x, y)| (x - y + 0.0).to_bits())
                .collect();
            *atoms.entry(key).or_insert(0.0) += m.weights()[i] * m.weights()[j];
        }
    }
    let mut pts = Vec::with_capacity(atoms.len() * d);
    let mut ws = Vec::with_capacity(atoms.len());
    for (key, w) in atoms {
        pts.extend(key.into_iter().map(f64::from_bits));
        ws.push(w);
    }
    // Products of normalized weights renormalize to 1 up to rounding.
    let total: f64 = ws.iter().sum();
    ws.iter_mut().for_each(|w| *w /= total);
    DiscreteMeasure::new(d, pts, ws)
}
