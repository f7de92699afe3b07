//! Uniform periodic grids on `[0, L)^d` and complex grid functions with a
//! normalized discrete Fourier transform.
//!
//! Frequency-space values are Fourier series coefficients: for `u(x) =
//! sum_k c_k exp(i 2 pi k . x / L)` the transform stores `c_k` at the
//! lattice point `xi = k / L`, `k` in `{-M/2, ..., M/2-1}^d`. A multiplier
//! evaluated at `xi` therefore acts exactly as in the continuum convention
//! with the `2 pi` inside the exponent.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Physical,
    Frequency,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusGrid {
    dim: usize,
    side: f64,
    points: usize,
}

impl TorusGrid {
    pub fn new(dim: usize, side: f64, points: usize) -> Result<Self> {
        if dim == 0 || dim > 3 {
            return Err(Error::config("grids cover dimensions 1..=3"));
        }
        if !(side > 0.0) {
            return Err(Error::config("side length must be positive"));
        }
        if points < 4 || !points.is_power_of_two() {
            return Err(Error::config("points per axis must be a power of two, at least 4"));
        }
        Ok(TorusGrid { dim, side, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn side(&self) -> f64 {
        self.side
    }
    pub fn points(&self) -> usize {
        self.points
    }
    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn spacing(&self) -> f64 {
        self.side / self.points as f64
    }
    pub fn nyquist(&self) -> f64 {
        self.points as f64 / (2.0 * self.side)
    }

    /// Signed integer mode along one axis for a raw index component.
    #[inline]
    pub fn signed_mode(&self, i: usize) -> i64 {
        if i < self.points / 2 {
            i as i64
        } else {
            i as i64 - self.points as i64
        }
    }

    #[inline]
    pub fn coords_of(&self, idx: usize) -> [usize; 3] {
        let m = self.points;
        match self.dim {
            1 => [idx, 0, 0],
            2 => [idx / m, idx % m, 0],
            _ => [idx / (m * m), (idx / m) % m, idx % m],
        }
    }

    #[inline]
    pub fn index_of(&self, coords: [usize; 3]) -> usize {
        let m = self.points;
        match self.dim {
            1 => coords[0],
            2 => coords[0] * m + coords[1],
            _ => (coords[0] * m + coords[1]) * m + coords[2],
        }
    }

    /// Frequency vector `xi = k/L` at a raw index (frequency-space layout).
    #[inline]
    pub fn freq_of(&self, idx: usize) -> [f64; 3] {
        let c = self.coords_of(idx);
        let mut out = [0.0; 3];
        for a in 0..self.dim {
            out[a] = self.signed_mode(c[a]) as f64 / self.side;
        }
        out
    }

    /// Physical point at a raw index.
    #[inline]
    pub fn point_of(&self, idx: usize) -> [f64; 3] {
        let c = self.coords_of(idx);
        let h = self.spacing();
        let mut out = [0.0; 3];
        for a in 0..self.dim {
            out[a] = c[a] as f64 * h;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: TorusGrid,
    space: Space,
    values: Vec<Complex64>,
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if forward {
            p.plan_fft_forward(len)
        } else {
            p.plan_fft_inverse(len)
        }
    })
}

impl GridFunction {
    pub fn new(grid: TorusGrid, space: Space, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::usage("value buffer does not match the grid size"));
        }
        Ok(GridFunction { grid, space, values })
    }

    pub fn zeros(grid: TorusGrid, space: Space) -> Self {
        GridFunction { grid, space, values: vec![Complex64::ZERO; grid.len()] }
    }

    /// Sample a complex field on the physical lattice.
    pub fn from_fn(grid: TorusGrid, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let values = (0..grid.len())
            .map(|i| {
                let p = grid.point_of(i);
                f(&p[..grid.dim()])
            })
            .collect();
        GridFunction { grid, space: Space::Physical, values }
    }

    pub fn from_real_fn(grid: TorusGrid, f: impl Fn(&[f64]) -> f64) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    /// Frequency-space constructor from mode coefficients `c(k)`, `k` signed.
    pub fn from_modes(grid: TorusGrid, c: impl Fn(&[i64]) -> Complex64) -> Self {
        let values = (0..grid.len())
            .map(|i| {
                let co = grid.coords_of(i);
                let mut k = [0i64; 3];
                for a in 0..grid.dim() {
                    k[a] = grid.signed_mode(co[a]);
                }
                c(&k[..grid.dim()])
            })
            .collect();
        GridFunction { grid, space: Space::Frequency, values }
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }
    pub fn space(&self) -> Space {
        self.space
    }
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    fn transform(&self, forward: bool) -> GridFunction {
        let m = self.grid.points();
        let d = self.grid.dim();
        let mut vals = self.values.clone();
        let fft = plan(m, forward);
        let mut line = vec![Complex64::ZERO; m];
        // apply the 1-d transform along each axis in turn
        for axis in 0..d {
            let stride = m.pow((d - 1 - axis) as u32);
            let blocks = self.grid.len() / m;
            for b in 0..blocks {
                // decompose the block index into the non-axis coordinates
                let outer = b / stride;
                let inner = b % stride;
                let base = outer * stride * m + inner;
                for (j, v) in line.iter_mut().enumerate() {
                    *v = vals[base + j * stride];
                }
                fft.process(&mut line);
                for (j, v) in line.iter().enumerate() {
                    vals[base + j * stride] = *v;
                }
            }
        }
        if forward {
            let scale = 1.0 / self.grid.len() as f64;
            for v in &mut vals {
                *v *= scale;
            }
        }
        GridFunction {
            grid: self.grid,
            space: if forward { Space::Frequency } else { Space::Physical },
            values: vals,
        }
    }

    pub fn to_frequency(&self) -> GridFunction {
        match self.space {
            Space::Frequency => self.clone(),
            Space::Physical => self.transform(true),
        }
    }

    pub fn to_physical(&self) -> GridFunction {
        match self.space {
            Space::Physical => self.clone(),
            Space::Frequency => self.transform(false),
        }
    }

    /// Applies a Fourier multiplier `xi -> c(xi)`; returns a function in the
    /// same space as the input. Linear in the input by construction.
    pub fn apply_multiplier(&self, mult: impl Fn(&[f64]) -> Complex64 + Sync) -> GridFunction {
        let mut freq = self.to_frequency();
        let grid = freq.grid;
        for (i, v) in freq.values.iter_mut().enumerate() {
            let xi = grid.freq_of(i);
            *v *= mult(&xi[..grid.dim()]);
        }
        match self.space {
            Space::Frequency => freq,
            Space::Physical => freq.to_physical(),
        }
    }

    /// Supremum norm over the physical lattice.
    pub fn sup_norm(&self) -> f64 {
        self.to_physical()
            .values
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    /// Grid L1 norm `h^d sum |u|`.
    pub fn l1_norm(&self) -> f64 {
        let h = self.grid.spacing().powi(self.grid.dim() as i32);
        self.to_physical().values.iter().map(|v| v.norm()).sum::<f64>() * h
    }

    /// Circular shift by whole grid cells (physical space), exact.
    pub fn roll(&self, shift: [i64; 3]) -> GridFunction {
        let phys = self.to_physical();
        let m = self.grid.points() as i64;
        let mut out = vec![Complex64::ZERO; phys.values.len()];
        for (i, val) in out.iter_mut().enumerate() {
            let c = self.grid.coords_of(i);
            let mut src = [0usize; 3];
            for a in 0..self.grid.dim() {
                src[a] = ((c[a] as i64 - shift[a]).rem_euclid(m)) as usize;
            }
            *val = phys.values[self.grid.index_of(src)];
        }
        GridFunction { grid: self.grid, space: Space::Physical, values: out }
    }

    pub fn scale(&self, c: Complex64) -> GridFunction {
        let values = self.values.iter().map(|v| v * c).collect();
        GridFunction { grid: self.grid, space: self.space, values }
    }

    pub fn add(&self, other: &GridFunction) -> Result<GridFunction> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &GridFunction,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<GridFunction> {
        if self.grid != other.grid {
            return Err(Error::usage("grid mismatch"));
        }
        let (a, b) = if self.space == other.space {
            (self.clone(), other.clone())
        } else {
            (self.to_physical(), other.to_physical())
        };
        let values = a.values.iter().zip(&b.values).map(|(x, y)| f(*x, *y)).collect();
        Ok(GridFunction { grid: self.grid, space: a.space, values })
    }
}
