use num_rational::Ratio;

use crate::{Error, Result};

pub type Rational = Ratio<i64>;

/// Dimension thresholds for k-simplices in R^d.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thresholds {
    pub d: i64,
    pub k: i64,
    /// (dk + 1) / (k + 1): congruence classes have positive measure above it.
    pub t_kd: Rational,
    /// dk / (k + 1): same for similarity classes.
    pub s_kd: Rational,
    /// max{k − 1, d/2}: no smaller exponent can work.
    pub lower_bound: Rational,
    /// 8/5 when d = k = 2.
    pub planar_special: Option<Rational>,
}

pub fn thresholds(k: usize, d: usize) -> Result<Thresholds> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k > d {
        return Err(Error::invalid(format!("k = {k} exceeds d = {d}")));
    }
    let (k, d) = (k as i64, d as i64);
    Ok(Thresholds {
        d,
        k,
        t_kd: Rational::new(d * k + 1, k + 1),
        s_kd: Rational::new(d * k, k + 1),
        lower_bound: Rational::from_integer(k - 1).max(Rational::new(d, 2)),
        planar_special: (d == 2 && k == 2).then(|| Rational::new(8, 5)),
    })
}
