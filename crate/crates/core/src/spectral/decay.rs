use serde::Serialize;

use super::SphericalAverageCurve;
use crate::stats::log_log_fit;
use crate::{Error, Result};

/// Slack allowed above the −(s−1) reference line.
pub const DECAY_SLACK: f64 = 0.3;

/// Spherical-average decay exponent γ_s for s ≥ d/2; `None` below.
pub fn gamma_s(s: f64, d: usize) -> Option<f64> {
    let d = d as f64;
    if s < d / 2.0 {
        None
    } else if s <= (d + 2.0) / 2.0 {
        Some((d + 2.0 * s - 2.0) / 4.0)
    } else {
        Some(s - 1.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
    pub points_used: usize,
    /// −(s − 1).
    pub energy_reference: f64,
    /// −γ_s, when defined.
    pub gamma_reference: Option<f64>,
    /// slope ≤ −(s − 1) + DECAY_SLACK.
    pub within_energy_bound: bool,
}

/// Log-log slope of σ(t) over the points with t ≥ 1 and σ > 0, compared
/// with the reference exponents for dimension s in R^d.
pub fn decay_fit(curve: &SphericalAverageCurve, s: f64, d: usize) -> Result<DecayFit> {
    let (ts, sigmas): (Vec<f64>, Vec<f64>) = curve
        .points
        .iter()
        .filter(|(t, sigma)| *t >= 1.0 && *sigma > 0.0)
        .cloned()
        .unzip();
    if ts.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "decay fit needs 4 points with t >= 1 and positive sigma, got {}",
            ts.len()
        )));
    }
    let fit = log_log_fit(&ts, &sigmas)?;
    let energy_reference = -(s - 1.0);
    Ok(DecayFit {
        slope: fit.slope,
        intercept: fit.intercept,
        residual: fit.residual,
        points_used: ts.len(),
        energy_reference,
        gamma_reference: gamma_s(s, d).map(|g| -g),
        within_energy_bound: fit.slope <= energy_reference + DECAY_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(points: Vec<(f64, f64)>) -> SphericalAverageCurve {
        SphericalAverageCurve { points, nodes: 0 }
    }

    #[test]
    fn exact_power() {
        let c = curve((1..=8).map(|i| (i as f64, (i as f64).powi(-2))).collect());
        let f = decay_fit(&c, 1.5, 2).unwrap();
        assert!((f.slope + 2.0).abs() < 1e-12);
        assert!(f.within_energy_bound);
    }

    #[test]
    fn gamma_references() {
        assert_eq!(gamma_s(1.5, 2), Some(0.75));
        assert_eq!(gamma_s(2.5, 2), Some(1.5));
        assert_eq!(gamma_s(0.5, 2), None);
        // The two branches meet at s = (d + 2) / 2.
        assert_eq!(gamma_s(2.0, 2), Some(1.0));
    }

    #[test]
    fn drops_bad_points() {
        let mut pts: Vec<(f64, f64)> = (1..=3).map(|i| (i as f64, 1.0 / i as f64)).collect();
        pts.push((0.5, 2.0));
        pts.push((5.0, 0.0));
        assert!(matches!(decay_fit(&curve(pts), 1.5, 2), Err(Error::InsufficientData(_))));
    }
}
