//! Physical constants and timings of one experiment run.

use crate::error::{Error, Result};
use crate::num::{lit, Real};

/// All physical constants and timings of one run, in natural units.
///
/// Times are measured from the moment the packets leave the double slit:
/// the particle enters the second magnet at `t_i`, spends `t_e` inside it
/// and reaches the screen at `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams<T> {
    pub m: T,
    pub hbar: T,
    /// Initial z-width of each slit packet.
    pub sigma: T,
    /// Initial x-width of the packets.
    pub omega: T,
    /// Half slit separation; the slits sit at `z = ±z0`.
    pub z0: T,
    /// Field-gradient coupling of the eraser magnet (force units).
    pub beta: T,
    pub t_i: T,
    pub t_e: T,
    pub t: T,
    /// Field gradient of the which-way magnet.
    pub b0: T,
}

impl<T: Real> Default for PhysParams<T> {
    /// Desk-scale parameter set: strongly overlapping slit packets at the
    /// screen and well separated eraser lobes.
    fn default() -> Self {
        Self {
            m: T::one(),
            hbar: T::one(),
            sigma: T::one(),
            omega: lit(1.8),
            z0: lit(4.0),
            beta: lit(0.5),
            t_i: lit(2.0),
            t_e: lit(2.0),
            t: lit(20.0),
            b0: lit(0.5),
        }
    }
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParams(msg.to_owned()))
    }
}

impl<T: Real> PhysParams<T> {
    /// Checks every invariant, in declaration order, and returns the
    /// parameters unchanged. `magnet_active` adds the timing constraint
    /// `t >= t_i + t_e` needed by the eraser and which-way scenarios.
    pub fn validate(self, magnet_active: bool) -> Result<Self> {
        let fields = [
            ("m", self.m),
            ("hbar", self.hbar),
            ("sigma", self.sigma),
            ("omega", self.omega),
            ("z0", self.z0),
            ("beta", self.beta),
            ("t_i", self.t_i),
            ("t_e", self.t_e),
            ("t", self.t),
            ("b0", self.b0),
        ];
        for (name, v) in fields {
            require(v.is_finite(), &format!("{name} must be finite"))?;
        }
        let zero = T::zero();
        require(self.m > zero, "m must be positive")?;
        require(self.hbar > zero, "hbar must be positive")?;
        require(self.sigma > zero, "sigma must be positive")?;
        require(self.omega > zero, "omega must be positive")?;
        // z0 = 0 is the degenerate single-slit case.
        require(self.z0 >= zero, "z0 must be non-negative")?;
        require(self.beta >= zero, "beta must be non-negative")?;
        require(self.b0 >= zero, "b0 must be non-negative")?;
        require(self.t_i >= zero, "t_i must be non-negative")?;
        require(self.t_e >= zero, "t_e must be non-negative")?;
        require(self.t >= zero, "t must be non-negative")?;
        if magnet_active {
            require(self.t >= self.t_i + self.t_e, "t < t_i + t_e")?;
        }
        Ok(self)
    }

    /// Same parameters observed at a different screen time.
    pub fn at_time(mut self, t: T) -> Self {
        self.t = t;
        self
    }

    /// Probability (standard-deviation) width at time `time` of a freely
    /// spreading packet whose initial width is `width0`.
    pub fn spread(&self, width0: T, time: T) -> T {
        let b = self.hbar * time / (lit::<T>(2.0) * self.m);
        (width0 * width0 + b * b / (width0 * width0)).sqrt()
    }

    /// z-width of each slit packet at the screen.
    pub fn z_spread(&self) -> T {
        self.spread(self.sigma, self.t)
    }

    /// x-width of the packets at the screen.
    pub fn x_spread(&self) -> T {
        self.spread(self.omega, self.t)
    }

    /// Displacement inside a magnet of gradient `coupling`, ignoring the
    /// later drift: `coupling * t_e^2 / 2m`.
    pub fn magnet_shift(&self, coupling: T) -> T {
        coupling * self.t_e * self.t_e / (lit::<T>(2.0) * self.m)
    }

    /// Distance drifted between the magnet exit and the screen with the
    /// momentum kick `coupling * t_e`.
    pub fn post_magnet_drift(&self, coupling: T) -> T {
        coupling * self.t_e * (self.t - self.t_i - self.t_e) / self.m
    }

    /// x-center of the positive lobe on the screen for a magnet of the
    /// given gradient.
    pub fn lobe_center(&self, coupling: T, with_drift: bool) -> T {
        let shift = self.magnet_shift(coupling);
        if with_drift {
            shift + self.post_magnet_drift(coupling)
        } else {
            shift
        }
    }

    /// Angular wavenumber in z of the interference cross term at the screen.
    ///
    /// The cross term of two packets with complex width `W = sigma^2 + i b`
    /// (`b = hbar t / 2m`) centered at `±z0` oscillates as
    /// `cos(b z0 z / |W|^2)`.
    pub fn fringe_wavenumber(&self) -> T {
        let b = self.hbar * self.t / (lit::<T>(2.0) * self.m);
        let s2 = self.sigma * self.sigma;
        b * self.z0 / (s2 * s2 + b * b)
    }

    /// Period in z of the eraser fringes, or `None` when there is no
    /// oscillation (`t = 0` or `z0 = 0`).
    pub fn fringe_period(&self) -> Option<T> {
        let k = self.fringe_wavenumber();
        (k > T::zero()).then(|| lit::<T>(2.0) * T::PI() / k)
    }
}
