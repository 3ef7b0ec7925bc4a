use ndarray::Array2;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::num::{lit, Real};

/// Probability density per unit area sampled on a [`GridSpec`].
///
/// `values[[j, i]]` is the density at `(grid.x(i), grid.z(j))`: rows run
/// along z, columns along x.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityField<T> {
    pub grid: GridSpec<T>,
    pub values: Array2<T>,
}

impl<T: Real> DensityField<T> {
    pub fn new(grid: GridSpec<T>, values: Array2<T>) -> Result<Self> {
        grid.check()?;
        if values.dim() != (grid.nz, grid.nx) {
            return Err(Error::InvalidGrid(format!(
                "values have shape {:?}, grid expects ({}, {})",
                values.dim(),
                grid.nz,
                grid.nx
            )));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f(x, z)` at every node.
    pub fn from_fn(grid: GridSpec<T>, f: impl Fn(T, T) -> T) -> Self {
        let xs = grid.xs();
        let zs = grid.zs();
        let values = Array2::from_shape_fn((grid.nz, grid.nx), |(j, i)| f(xs[i], zs[j]));
        Self { grid, values }
    }

    /// Trapezoidal integral over the whole grid.
    pub fn integral(&self) -> T {
        let half = lit::<T>(0.5);
        let (nz, nx) = self.values.dim();
        let mut acc = T::zero();
        for ((j, i), &v) in self.values.indexed_iter() {
            let wz = if j == 0 || j == nz - 1 { half } else { T::one() };
            let wx = if i == 0 || i == nx - 1 { half } else { T::one() };
            acc = acc + v * wx * wz;
        }
        acc * self.grid.dx() * self.grid.dz()
    }

    pub fn max_value(&self) -> T {
        self.values.iter().fold(T::zero(), |m, &v| m.max(v))
    }

    pub fn min_value(&self) -> T {
        self.values.iter().fold(T::infinity(), |m, &v| m.min(v))
    }

    /// Largest pointwise absolute difference; fails on grid mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(other.values.iter())
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs())))
    }
}

/// One-dimensional profile, e.g. a z-marginal of a density field.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile<T> {
    pub coords: Vec<T>,
    pub values: Vec<T>,
}

impl<T: Real> Profile<T> {
    pub fn new(coords: Vec<T>, values: Vec<T>) -> Self {
        assert_eq!(coords.len(), values.len(), "profile coordinates and values differ in length");
        Self { coords, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn spacing(&self) -> T {
        if self.coords.len() < 2 {
            T::zero()
        } else {
            self.coords[1] - self.coords[0]
        }
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self::new(self.coords.clone(), self.values.iter().map(|&v| v * factor).collect())
    }

    pub fn same_axis(&self, other: &Self) -> bool {
        self.coords == other.coords
    }

    /// Trapezoidal integral of the profile.
    pub fn integral(&self) -> T {
        let h = self.spacing();
        let n = self.values.len();
        if n < 2 {
            return T::zero();
        }
        let half = lit::<T>(0.5);
        let inner = self.values[1..n - 1].iter().fold(T::zero(), |a, &v| a + v);
        (inner + half * (self.values[0] + self.values[n - 1])) * h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_integrates_gaussian() {
        let g = GridSpec::<f64>::square(10.0, 401).unwrap();
        let d = DensityField::from_fn(g, |x, z| (-(x * x + z * z) / 2.0).exp() / (2.0 * std::f64::consts::PI));
        assert!((d.integral() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shape_must_match_grid() {
        let g = GridSpec::square(1.0, 4).unwrap();
        assert!(DensityField::new(g, Array2::zeros((3, 4))).is_err());
        assert!(DensityField::new(g, Array2::zeros((4, 4))).is_ok());
    }
}
