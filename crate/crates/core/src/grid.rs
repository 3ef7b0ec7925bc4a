use crate::error::{Error, Result};
use crate::num::{from_usize, lit, Real};
use crate::params::PhysParams;

/// Closed interval `[lo, hi]` on one axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Self { lo, hi }
    }

    /// Symmetric interval `[center - half, center + half]`.
    pub fn around(center: T, half: T) -> Self {
        Self { lo: center - half, hi: center + half }
    }

    pub fn contains(&self, v: T) -> bool {
        v >= self.lo && v <= self.hi
    }
}

/// Uniform rectangular grid over the (x, z) screen plane. Both end points
/// are nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    pub x_min: T,
    pub x_max: T,
    pub nx: usize,
    pub z_min: T,
    pub z_max: T,
    pub nz: usize,
}

impl<T: Real> GridSpec<T> {
    pub fn new(x_min: T, x_max: T, nx: usize, z_min: T, z_max: T, nz: usize) -> Result<Self> {
        let g = Self { x_min, x_max, nx, z_min, z_max, nz };
        g.check()?;
        Ok(g)
    }

    /// Square box `[-half, half]^2` with `n` nodes per axis.
    pub fn square(half: T, n: usize) -> Result<Self> {
        Self::new(-half, half, n, -half, half, n)
    }

    pub fn check(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidGrid(m.to_owned()));
        if self.nx < 2 || self.nz < 2 {
            return bad("at least two nodes per axis are required");
        }
        if !(self.x_min.is_finite() && self.x_max.is_finite())
            || !(self.z_min.is_finite() && self.z_max.is_finite())
        {
            return bad("bounds must be finite");
        }
        if self.x_max <= self.x_min {
            return bad("x_max must exceed x_min");
        }
        if self.z_max <= self.z_min {
            return bad("z_max must exceed z_min");
        }
        Ok(())
    }

    pub fn dx(&self) -> T {
        (self.x_max - self.x_min) / from_usize(self.nx - 1)
    }

    pub fn dz(&self) -> T {
        (self.z_max - self.z_min) / from_usize(self.nz - 1)
    }

    pub fn x(&self, i: usize) -> T {
        self.x_min + self.dx() * from_usize(i)
    }

    pub fn z(&self, j: usize) -> T {
        self.z_min + self.dz() * from_usize(j)
    }

    pub fn xs(&self) -> Vec<T> {
        (0..self.nx).map(|i| self.x(i)).collect()
    }

    pub fn zs(&self) -> Vec<T> {
        (0..self.nz).map(|j| self.z(j)).collect()
    }

    /// Grid of `nx` x `nz` nodes reaching `widths` screen-time packet widths
    /// beyond the outermost packet centers, for lobes at `±lobe_center`.
    pub fn covering(p: &PhysParams<T>, lobe_center: T, widths: T, nx: usize, nz: usize) -> Result<Self> {
        let xh = lobe_center.abs() + widths * p.x_spread().max(p.omega);
        let zh = p.z0 + widths * p.z_spread().max(p.sigma);
        Self::new(-xh, xh, nx, -zh, zh, nz)
    }

    /// The default analysis grid for a parameter set: 512 x 512 nodes
    /// reaching eight packet widths past the outermost lobe, which keeps the
    /// mass outside the box far below 1e-10.
    pub fn default_for(p: &PhysParams<T>) -> Result<Self> {
        let c = p.lobe_center(p.beta.max(p.b0), true);
        Self::covering(p, c, lit(8.0), 512, 512)
    }
}
