use std::f64::consts::PI;

use num_complex::Complex64;

use super::DiscreteMeasure;

/// A finite measure on R^d whose Fourier transform
/// μ̂(ξ) = ∫ e^{−2πi x·ξ} dμ(x) can be evaluated pointwise.
pub trait FourierMeasure: Sync {
    fn dim(&self) -> usize;

    fn fourier_transform(&self, xi: &[f64]) -> Complex64;

    /// Diameter of the support, used to size quadrature panels.
    fn support_diameter(&self) -> f64;
}

impl FourierMeasure for DiscreteMeasure {
    fn dim(&self) -> usize {
        DiscreteMeasure::dim(self)
    }

    fn fourier_transform(&self, xi: &[f64]) -> Complex64 {
        let d = DiscreteMeasure::dim(self);
        let (mut re, mut im) = (0.0, 0.0);
        for (p, &w) in self.points().chunks_exact(d).zip(self.weights()) {
            let phase = -2.0 * PI * p.iter().zip(xi).map(|(a, b)| a * b).sum::<f64>();
            let (s, c) = phase.sin_cos();
            re += w * c;
            im += w * s;
        }
        Complex64::new(re, im)
    }

    fn support_diameter(&self) -> f64 {
        self.diameter()
    }
}

/// μ̂(ξ) = Σ_j w_j exp(−2πi x_j·ξ).
pub fn fourier_transform(m: &DiscreteMeasure, xi: &[f64]) -> Complex64 {
    FourierMeasure::fourier_transform(m, xi)
}
