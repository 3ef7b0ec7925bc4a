//! One-dimensional complex Gaussian wave packets and their exact evolution.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::num::{lit, Real};

/// `amp * exp(-(u - center)^2 / (4 cwidth)) * exp(i kphase u / hbar)`.
///
/// `cwidth` starts as the squared probability width and picks up the
/// imaginary part `hbar t / 2m` as the packet spreads; `kphase` is the mean
/// momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexGaussian<T> {
    pub center: T,
    pub cwidth: Complex<T>,
    pub kphase: T,
    pub amp: Complex<T>,
    pub hbar: T,
}

impl<T: Real> ComplexGaussian<T> {
    pub fn new(center: T, cwidth: Complex<T>, kphase: T, amp: Complex<T>, hbar: T) -> Result<Self> {
        if !(cwidth.re > T::zero()) {
            return Err(Error::NonNormalizable);
        }
        Ok(Self { center, cwidth, kphase, amp, hbar })
    }

    /// Real packet at rest whose probability density has unit integral and
    /// standard deviation `width`.
    pub fn normalized(center: T, width: T, hbar: T) -> Self {
        let two_pi = lit::<T>(2.0) * T::PI();
        let amp = (two_pi * width * width).powf(lit(-0.25));
        Self {
            center,
            cwidth: Complex::new(width * width, T::zero()),
            kphase: T::zero(),
            amp: Complex::new(amp, T::zero()),
            hbar,
        }
    }

    /// Complex amplitude at coordinate `u`.
    #[inline]
    pub fn eval(&self, u: T) -> Complex<T> {
        let d = u - self.center;
        let four = lit::<T>(4.0);
        let gauss = Complex::new(-d * d, T::zero()) / (self.cwidth * four);
        let phase = Complex::new(T::zero(), self.kphase * u / self.hbar);
        self.amp * (gauss + phase).exp()
    }

    /// Standard deviation of `|g|^2`: `|W| / sqrt(Re W)` with `W = cwidth`.
    pub fn probability_width(&self) -> T {
        self.cwidth.norm() / self.cwidth.re.sqrt()
    }

    /// `∫ |g(u)|^2 du`, exactly.
    pub fn norm_sqr(&self) -> T {
        let two_pi = lit::<T>(2.0) * T::PI();
        self.amp.norm_sqr() * two_pi.sqrt() * self.probability_width()
    }

    /// Exact free evolution under `p^2 / 2m` for a duration `dt`.
    ///
    /// The width parameter moves to `cwidth + i hbar dt / 2m`, the center
    /// drifts with velocity `kphase / m`, and the prefactor picks up
    /// `sqrt(W / W')` together with the kinetic phase of the mean momentum.
    pub fn free_evolve(&self, dt: T, mass: T) -> Self {
        if dt == T::zero() {
            return *self;
        }
        let two = lit::<T>(2.0);
        let w1 = self.cwidth + Complex::new(T::zero(), self.hbar * dt / (two * mass));
        let spread = self.cwidth.sqrt() / w1.sqrt();
        let kinetic = Complex::new(T::zero(), -self.kphase * self.kphase * dt / (two * mass * self.hbar)).exp();
        Self {
            center: self.center + self.kphase * dt / mass,
            cwidth: w1,
            kphase: self.kphase,
            amp: self.amp * spread * kinetic,
            hbar: self.hbar,
        }
    }

    /// Exact evolution for a duration `dt` under `p^2 / 2m - force * u`.
    ///
    /// A uniform force only translates the freely evolved packet by
    /// `force dt^2 / 2m` and adds the momentum `force dt`; the accompanying
    /// phases are kept so the result is the exact wavefunction.
    pub fn accelerate(&self, force: T, dt: T, mass: T) -> Self {
        if dt == T::zero() {
            return *self;
        }
        let two = lit::<T>(2.0);
        let six = lit::<T>(6.0);
        let mut g = self.free_evolve(dt, mass);
        let shift = force * dt * dt / (two * mass);
        let phase = -g.kphase * shift / g.hbar - force * force * dt * dt * dt / (six * mass * g.hbar);
        g.center = g.center + shift;
        g.amp = g.amp * Complex::new(T::zero(), phase).exp();
        g.kphase = g.kphase + force * dt;
        g
    }

    /// Field-wise comparison with a relative tolerance.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        let close = |a: T, b: T| (a - b).abs() <= tol * T::one().max(a.abs().max(b.abs()));
        let close_c = |a: Complex<T>, b: Complex<T>| (a - b).norm() <= tol * T::one().max(a.norm().max(b.norm()));
        close(self.center, other.center)
            && close_c(self.cwidth, other.cwidth)
            && close(self.kphase, other.kphase)
            && close_c(self.amp, other.amp)
            && close(self.hbar, other.hbar)
    }
}
