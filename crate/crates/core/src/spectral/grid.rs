use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{DiscreteMeasure, FourierMeasure, OrthogonalTransform};
use crate::{Error, Result};

/// Binning parameters for turning atoms into a piecewise-constant density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Cell side h. Cell centers sit at integer multiples of h.
    pub h: f64,
    /// Sub-points per axis when depositing a transformed density.
    pub supersample: usize,
}

impl GridSpec {
    pub fn new(h: f64) -> Self {
        GridSpec { h, supersample: 1 }
    }
}

/// Cell masses on the box of cells `origin .. origin + shape`; the density
/// on a cell is its mass divided by h^d.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDensity {
    dim: usize,
    h: f64,
    origin: Vec<i64>,
    shape: Vec<usize>,
    mass: Vec<f64>,
}

impl GridDensity {
    /// Nearest-cell binning of the atoms of `m`. The cell side may not
    /// exceed the smallest atom spacing.
    pub fn bin(m: &DiscreteMeasure, h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::invalid(format!("cell side {h} must be positive")));
        }
        if let Some(spacing) = m.min_spacing() {
            if h > spacing * (1.0 + 1e-9) {
                return Err(Error::GridTooCoarse(format!(
                    "cell side {h} exceeds the minimum atom spacing {spacing}"
                )));
            }
        }
        let d = m.dim();
        let cells: Vec<(Vec<i64>, f64)> = (0..m.len())
            .map(|i| {
                let idx = m.point(i).iter().map(|c| (c / h).round() as i64).collect();
                (idx, m.weights()[i])
            })
            .collect();
        Self::from_cells(d, h, &cells)
    }

    /// Normalized Lebesgue measure on the level-`level` product Cantor set,
    /// one cell of side 3^−level per surviving cube. Cells are indexed by
    /// the cube's lower corner, so the set is shifted by half a cell.
    pub fn cantor_product(level: u32, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        let mut line = vec![0i64];
        for _ in 0..level {
            line = line.iter().flat_map(|&a| [3 * a, 3 * a + 2]).collect();
        }
        let w = (line.len() as f64).powi(dim as i32).recip();
        let mut cells: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..dim {
            cells = cells
                .into_iter()
                .flat_map(|c| {
                    line.iter().map(move |&a| {
                        let mut c = c.clone();
                        c.push(a);
                        c
                    })
                })
                .collect();
        }
        let cells: Vec<(Vec<i64>, f64)> = cells.into_iter().map(|c| (c, w)).collect();
        Self::from_cells(dim, 3f64.powi(-(level as i32)), &cells)
    }

    fn from_cells(dim: usize, h: f64, cells: &[(Vec<i64>, f64)]) -> Result<Self> {
        let mut lo = vec![i64::MAX; dim];
        let mut hi = vec![i64::MIN; dim];
        for (idx, _) in cells {
            for m in 0..dim {
                lo[m] = lo[m].min(idx[m]);
                hi[m] = hi[m].max(idx[m]);
            }
        }
        let shape: Vec<usize> = lo.iter().zip(&hi).map(|(l, h)| (h - l + 1) as usize).collect();
        let mut grid = GridDensity {
            dim,
            h,
            origin: lo,
            mass: vec![0.0; shape.iter().product()],
            shape,
        };
        for (idx, w) in cells {
            let flat = grid.flat_index(idx);
            grid.mass[flat] += w;
        }
        Ok(grid)
    }

    fn flat_index(&self, idx: &[i64]) -> usize {
        let mut flat = 0usize;
        for m in 0..self.dim {
            flat = flat * self.shape[m] + (idx[m] - self.origin[m]) as usize;
        }
        flat
    }

    fn cell_index(&self, mut flat: usize) -> Vec<i64> {
        let mut idx = vec![0i64; self.dim];
        for m in (0..self.dim).rev() {
            idx[m] = self.origin[m] + (flat % self.shape[m]) as i64;
            flat /= self.shape[m];
        }
        idx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn origin(&self) -> &[i64] {
        &self.origin
    }

    pub fn masses(&self) -> &[f64] {
        &self.mass
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// Nonzero cells as (center, mass).
    pub fn cells(&self) -> impl Iterator<Item = (Vec<f64>, f64)> + '_ {
        self.mass
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0.0)
            .map(|(flat, &w)| {
                let c = self.cell_index(flat).iter().map(|&i| i as f64 * self.h).collect();
                (c, w)
            })
    }

    /// Image of the density under x ↦ a g x, deposited back on the grid
    /// with cloud-in-cell (multilinear) weights and renormalized to the
    /// original mass. A point mass at a cell center that maps onto a cell
    /// center stays in one cell.
    pub fn transformed(&self, a: f64, g: &OrthogonalTransform, supersample: usize) -> Result<Self> {
        if g.dim() != self.dim {
            return Err(Error::invalid("transform dimension does not match grid"));
        }
        let d = self.dim;
        let n = supersample.max(1);
        let sub_offsets: Vec<Vec<f64>> = (0..n.pow(d as u32))
            .map(|mut j| {
                let mut off = vec![0.0; d];
                for o in off.iter_mut() {
                    *o = (((j % n) as f64 + 0.5) / n as f64 - 0.5) * self.h;
                    j /= n;
                }
                off
            })
            .collect();
        let share = 1.0 / sub_offsets.len() as f64;
        let corners = 1usize << d;
        let mut deposits: Vec<(Vec<i64>, f64)> = Vec::new();
        for (center, w) in self.cells() {
            for off in &sub_offsets {
                let p: Vec<f64> = center.iter().zip(off).map(|(c, o)| c + o).collect();
                let y = g.apply(&p);
                let cont: Vec<f64> = y.iter().map(|v| a * v / self.h).collect();
                let base: Vec<f64> = cont.iter().map(|c| c.floor()).collect();
                for corner in 0..corners {
                    let mut weight = w * share;
                    let mut idx = vec![0i64; d];
                    for m in 0..d {
                        let frac = cont[m] - base[m];
                        let upper = (corner >> m) & 1 == 1;
                        weight *= if upper { frac } else { 1.0 - frac };
                        idx[m] = base[m] as i64 + upper as i64;
                    }
                    if weight != 0.0 {
                        deposits.push((idx, weight));
                    }
                }
            }
        }
        let mut out = Self::from_cells(d, self.h, &deposits)?;
        let scale = self.total_mass() / out.total_mass();
        out.mass.iter_mut().for_each(|m| *m *= scale);
        Ok(out)
    }

    /// Padded FFT size needed to correlate `self` with `other`.
    pub fn correlation_cells(&self, other: &GridDensity) -> usize {
        self.shape
            .iter()
            .zip(&other.shape)
            .map(|(a, b)| fft_len(a + b - 1))
            .product()
    }

    /// Density of ν(x) = ∫ ρ_self(u) ρ_other(u − x) du on the offset grid,
    /// as (origin, shape, values).
    pub fn cross_correlation(&self, other: &GridDensity) -> Result<(Vec<i64>, Vec<usize>, Vec<f64>)> {
        if other.dim != self.dim || other.h != self.h {
            return Err(Error::invalid("grids differ in dimension or cell side"));
        }
        let d = self.dim;
        let out_shape: Vec<usize> = (0..d).map(|m| self.shape[m] + other.shape[m] - 1).collect();
        let padded: Vec<usize> = out_shape.iter().map(|&l| fft_len(l)).collect();
        let total: usize = padded.iter().product();

        let mut fa = vec![Complex64::new(0.0, 0.0); total];
        let mut fb = vec![Complex64::new(0.0, 0.0); total];
        scatter(&mut fa, &padded, &self.shape, &self.mass, false);
        scatter(&mut fb, &padded, &other.shape, &other.mass, true);
        let mut planner = FftPlanner::new();
        fft_nd(&mut planner, &mut fa, &padded, false);
        fft_nd(&mut planner, &mut fb, &padded, false);
        fa.iter_mut().zip(&fb).for_each(|(a, b)| *a *= b);
        fft_nd(&mut planner, &mut fa, &padded, true);

        let norm = 1.0 / (total as f64 * self.h.powi(d as i32));
        let out_len: usize = out_shape.iter().product();
        let mut values = Vec::with_capacity(out_len);
        for flat in 0..out_len {
            let mut rest = flat;
            let mut pflat = 0usize;
            let mut idx = vec![0usize; d];
            for m in (0..d).rev() {
                idx[m] = rest % out_shape[m];
                rest /= out_shape[m];
            }
            for m in 0..d {
                pflat = pflat * padded[m] + idx[m];
            }
            values.push(fa[pflat].re * norm);
        }
        // Offset n − j for n in self, j in other; index 0 corresponds to
        // self.origin − (other.origin + other.shape − 1).
        let origin: Vec<i64> = (0..d)
            .map(|m| self.origin[m] - other.origin[m] - other.shape[m] as i64 + 1)
            .collect();
        Ok((origin, out_shape, values))
    }
}

impl FourierMeasure for GridDensity {
    fn dim(&self) -> usize {
        self.dim
    }

    /// Transform of the piecewise-constant density: the cell-center sum
    /// times the cell indicator's sinc factors.
    fn fourier_transform(&self, xi: &[f64]) -> Complex64 {
        let (mut re, mut im) = (0.0, 0.0);
        for (flat, &w) in self.mass.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let idx = self.cell_index(flat);
            let dot: f64 = idx.iter().zip(xi).map(|(&i, x)| i as f64 * self.h * x).sum();
            let (s, c) = (-2.0 * PI * dot).sin_cos();
            re += w * c;
            im += w * s;
        }
        let envelope: f64 = xi.iter().map(|x| sinc(self.h * x)).product();
        Complex64::new(re * envelope, im * envelope)
    }

    fn support_diameter(&self) -> f64 {
        let side: f64 = self
            .shape
            .iter()
            .map(|&s| (s as f64 * self.h).powi(2))
            .sum();
        side.sqrt()
    }
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// Smallest 2^a 3^b 5^c at least `n`.
fn fft_len(n: usize) -> usize {
    (n..)
        .find(|&m| {
            let mut r = m;
            for p in [2, 3, 5] {
                while r % p == 0 {
                    r /= p;
                }
            }
            r == 1
        })
        .expect("5-smooth numbers are unbounded")
}

/// Writes `values` (shape `shape`) into the zero-padded buffer, reversing
/// every axis when `flip` is set.
fn scatter(buf: &mut [Complex64], padded: &[usize], shape: &[usize], values: &[f64], flip: bool) {
    let d = shape.len();
    let mut idx = vec![0usize; d];
    for (flat, &v) in values.iter().enumerate() {
        let mut rest = flat;
        for m in (0..d).rev() {
            idx[m] = rest % shape[m];
            rest /= shape[m];
        }
        let mut p = 0usize;
        for m in 0..d {
            let i = if flip { shape[m] - 1 - idx[m] } else { idx[m] };
            p = p * padded[m] + i;
        }
        buf[p] = Complex64::new(v, 0.0);
    }
}

/// In-place unnormalized N-dimensional FFT over a row-major buffer.
fn fft_nd(planner: &mut FftPlanner<f64>, data: &mut [Complex64], shape: &[usize], inverse: bool) {
    let d = shape.len();
    let total = data.len();
    for axis in 0..d {
        let len = shape[axis];
        let stride: usize = shape[axis + 1..].iter().product();
        let fft = if inverse {
            planner.plan_fft_inverse(len)
        } else {
            planner.plan_fft_forward(len)
        };
        let mut line = vec![Complex64::new(0.0, 0.0); len];
        let block = len * stride;
        for start in (0..total).step_by(block) {
            for inner in 0..stride {
                let base = start + inner;
                for (i, slot) in line.iter_mut().enumerate() {
                    *slot = data[base + i * stride];
                }
                fft.process(&mut line);
                for (i, v) in line.iter().enumerate() {
                    data[base + i * stride] = *v;
                }
            }
        }
    }
}
