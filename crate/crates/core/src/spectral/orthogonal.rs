use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// Orthogonality tolerance for `gᵀg = I` and `|det g| = 1`.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-12;

/// An element g of the orthogonal group O(d).
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalTransform {
    matrix: DMatrix<f64>,
}

impl OrthogonalTransform {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::invalid("orthogonal transform must be a nonempty square matrix"));
        }
        let d = matrix.nrows();
        let gram = matrix.transpose() * &matrix;
        let off = (&gram - DMatrix::<f64>::identity(d, d)).amax();
        // Tolerance scales mildly with d for accumulated rounding.
        let tol = ORTHOGONALITY_TOLERANCE * d as f64;
        if off > tol {
            return Err(Error::invalid(format!("gᵀg deviates from I by {off:e}")));
        }
        let det = matrix.determinant();
        if (det.abs() - 1.0).abs() > tol {
            return Err(Error::invalid(format!("determinant {det} is not ±1")));
        }
        Ok(OrthogonalTransform { matrix })
    }

    pub fn identity(d: usize) -> Self {
        OrthogonalTransform {
            matrix: DMatrix::identity(d, d),
        }
    }

    /// Planar rotation by `angle` radians.
    pub fn rotation_2d(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        OrthogonalTransform {
            matrix: DMatrix::from_row_slice(2, 2, &[c, -s, s, c]),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.determinant()
    }

    pub fn transpose(&self) -> Self {
        OrthogonalTransform {
            matrix: self.matrix.transpose(),
        }
    }

    /// g x.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.matrix[(i, j)] * x[j]).sum())
            .collect()
    }
}

/// Haar-distributed element of O(d) drawn from `rng`.
///
/// A Gaussian matrix is QR-factored, Q's columns are multiplied by the
/// signs of R's diagonal, and the last column is negated with probability ½.
pub fn haar_sample_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<OrthogonalTransform> {
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    let gauss = DMatrix::<f64>::from_fn(d, d, |_, _| rng.sample(StandardNormal));
    let qr = gauss.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if rng.random_bool(0.5) {
        q.column_mut(d - 1).neg_mut();
    }
    Ok(OrthogonalTransform { matrix: q })
}

/// Haar sample determined entirely by `seed`.
pub fn haar_sample(d: usize, seed: u64) -> Result<OrthogonalTransform> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_sample_with(d, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_orthogonal() {
        for seed in 0..50 {
            for d in 2..=4 {
                let g = haar_sample(d, seed).unwrap();
                assert!(OrthogonalTransform::new(g.matrix().clone()).is_ok());
            }
        }
    }

    #[test]
    fn deterministic_in_seed() {
        assert_eq!(haar_sample(3, 9).unwrap(), haar_sample(3, 9).unwrap());
        assert_ne!(haar_sample(3, 9).unwrap(), haar_sample(3, 10).unwrap());
    }

    #[test]
    fn both_components_are_reached() {
        let dets: Vec<f64> = (0..64).map(|s| haar_sample(3, s).unwrap().determinant()).collect();
        assert!(dets.iter().any(|&d| d > 0.0));
        assert!(dets.iter().any(|&d| d < 0.0));
    }

    #[test]
    fn rejects_non_orthogonal() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.1, 0.0, 1.0]);
        assert!(OrthogonalTransform::new(m).is_err());
        assert!(haar_sample(1, 0).is_err());
    }
}
