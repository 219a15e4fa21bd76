use serde::Serialize;

use crate::stats::log_log_fit;
use crate::{Error, Result};

/// Class counts as a function of the box side q.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct GrowthRecord {
    pub entries: Vec<(u64, u64)>,
}

impl GrowthRecord {
    /// Appends `(q, count)`; q must increase and counts must be positive.
    pub fn push(&mut self, q: u64, count: u64) -> Result<()> {
        if let Some(&(last, _)) = self.entries.last() {
            if q <= last {
                return Err(Error::invalid(format!("q = {q} does not increase past {last}")));
            }
        }
        if count == 0 {
            return Err(Error::invalid(format!("count at q = {q} is zero")));
        }
        self.entries.push((q, count));
        Ok(())
    }

    pub fn from_entries(entries: &[(u64, u64)]) -> Result<Self> {
        let mut r = GrowthRecord::default();
        for &(q, c) in entries {
            r.push(q, c)?;
        }
        Ok(r)
    }
}

/// `count ≈ C q^beta` fit in log-log coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthFit {
    pub beta: f64,
    pub log_constant: f64,
    pub residual: f64,
}

pub fn fit_growth_exponent(record: &GrowthRecord) -> Result<GrowthFit> {
    if record.entries.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "growth fit needs at least 4 points, got {}",
            record.entries.len()
        )));
    }
    let qs: Vec<f64> = record.entries.iter().map(|e| e.0 as f64).collect();
    let cs: Vec<f64> = record.entries.iter().map(|e| e.1 as f64).collect();
    let fit = log_log_fit(&qs, &cs)?;
    Ok(GrowthFit {
        beta: fit.slope,
        log_constant: fit.intercept,
        residual: fit.residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let entries: Vec<(u64, u64)> = [2u64, 4, 8, 16, 32].iter().map(|&q| (q, 7 * q.pow(4))).collect();
        let fit = fit_growth_exponent(&GrowthRecord::from_entries(&entries).unwrap()).unwrap();
        assert!((fit.beta - 4.0).abs() < 1e-9);
        assert!((fit.log_constant - 7f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn log_factor_inflates_slope_mildly() {
        let entries: Vec<(u64, u64)> = (8u64..=64)
            .map(|q| (q, (1000.0 * (q as f64).powi(3) * (q as f64).ln()).round() as u64))
            .collect();
        let fit = fit_growth_exponent(&GrowthRecord::from_entries(&entries).unwrap()).unwrap();
        assert!(fit.beta > 3.0 && fit.beta < 3.5, "{}", fit.beta);
    }

    #[test]
    fn needs_four_points() {
        let r = GrowthRecord::from_entries(&[(1, 1), (2, 5), (3, 9)]).unwrap();
        assert!(matches!(fit_growth_exponent(&r), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn record_invariants() {
        let mut r = GrowthRecord::default();
        r.push(2, 3).unwrap();
        assert!(r.push(2, 4).is_err());
        assert!(r.push(3, 0).is_err());
    }
}
