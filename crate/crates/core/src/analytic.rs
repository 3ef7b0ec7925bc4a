//! Closed-form states and screen densities of the double-slit spin eraser.
//!
//! Packets leave the double slit as Gaussians of width `sigma` (z) and
//! `omega` (x) entangled with `|S_z;±>`. Free flight only spreads them;
//! a Stern-Gerlach magnet with a linear field gradient translates each spin
//! component along x and kicks its momentum. Both motions are exact for
//! Gaussians, so every state here is the exact solution of
//! `H_f = p^2/2m` and `H_e = p^2/2m - beta x sigma_x` (or `- b0 x sigma_z`
//! for the which-way magnet).

use num_complex::Complex;

use crate::density::DensityField;
use crate::error::{Error, Result};
use crate::gaussian::ComplexGaussian;
use crate::grid::GridSpec;
use crate::num::{lit, Real};
use crate::params::PhysParams;
use crate::state::{Branch, Spin, SpinBasis, SpinorState, ZPart};

/// Options for the eraser pipeline.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EraserOptions {
    /// Leave out the drift the momentum kick causes between the magnet exit
    /// and the screen, placing the lobes at `±beta t_e^2 / 2m` exactly.
    pub strict_eq12: bool,
}

/// State right after the double slit: two Gaussians at `z = ±z0` entangled
/// with `|S_z;±>`, each branch weighted `1/√2`.
pub fn initial_state<T: Real>(p: &PhysParams<T>) -> Result<SpinorState<T>> {
    let p = p.validate(false)?;
    if p.z0 < lit::<T>(3.0) * p.sigma {
        log::warn!(
            "z0 = {} is below 3 sigma = {}; slit packets overlap and the analytic normalization degrades",
            p.z0,
            lit::<T>(3.0) * p.sigma
        );
    }
    let coeff = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let xpacket = ComplexGaussian::normalized(T::zero(), p.omega, p.hbar);
    let branch = |spin: Spin, center: T| Branch {
        spin,
        coeff,
        xpacket,
        zparts: vec![ZPart { weight: one, packet: ComplexGaussian::normalized(center, p.sigma, p.hbar) }],
    };
    SpinorState::new(SpinBasis::Z, vec![branch(Spin::Up, p.z0), branch(Spin::Down, -p.z0)])
}

/// Exact free evolution of every packet for a duration `dt`.
pub fn free_evolve<T: Real>(s: &SpinorState<T>, p: &PhysParams<T>, dt: T) -> Result<SpinorState<T>> {
    if !(dt >= T::zero()) {
        return Err(Error::InvalidParams("dt must be non-negative".into()));
    }
    let m = p.m;
    Ok(s.map_packets(|g| g.free_evolve(dt, m)))
}

/// Rewrites a two-branch `S_z` state in the `S_x` basis.
pub fn basis_rewrite_sx<T: Real>(s: &SpinorState<T>) -> Result<SpinorState<T>> {
    if s.basis() != SpinBasis::Z {
        return Err(Error::UnsupportedState("state is already in the S_x basis".into()));
    }
    if s.branches().len() != 2 {
        return Err(Error::UnsupportedState("expected exactly two S_z branches".into()));
    }
    s.rotate_basis()
}

/// Spin-dependent magnet acting for `p.t_e`: the `Up` branch feels the force
/// `+coupling`, the `Down` branch `-coupling`.
fn magnet<T: Real>(s: &SpinorState<T>, p: &PhysParams<T>, coupling: T) -> SpinorState<T> {
    let (m, te) = (p.m, p.t_e);
    s.map_xpackets(|spin, g| g.accelerate(spin.sign::<T>() * coupling, te, m))
        .with_z_free(te, m)
}

impl<T: Real> SpinorState<T> {
    /// Free spreading of the z-packets only; used while the magnet acts on x.
    fn with_z_free(&self, dt: T, mass: T) -> Self {
        let branches = self
            .branches()
            .iter()
            .map(|b| Branch {
                zparts: b
                    .zparts
                    .iter()
                    .map(|zp| ZPart { weight: zp.weight, packet: zp.packet.free_evolve(dt, mass) })
                    .collect(),
                ..b.clone()
            })
            .collect();
        SpinorState::new(self.basis(), branches).expect("branch spins unchanged")
    }
}

/// Free flight to `t_i`, magnet of gradient `coupling` for `t_e`, free
/// flight to the screen.
fn magnet_schedule<T: Real>(s0: &SpinorState<T>, p: &PhysParams<T>, coupling: T) -> Result<SpinorState<T>> {
    let s = free_evolve(s0, p, p.t_i)?;
    let s = magnet(&s, p, coupling);
    free_evolve(&s, p, p.t - p.t_i - p.t_e)
}

/// `S_x`-basis state on the screen with the eraser magnet switched on.
///
/// The `X+` lobe ends up at `beta t_e^2/2m + beta t_e (t - t_i - t_e)/m`
/// carrying momentum `+beta t_e`; the `X-` lobe mirrors it.
pub fn eraser_evolve<T: Real>(p: &PhysParams<T>, opts: EraserOptions) -> Result<SpinorState<T>> {
    let p = p.validate(true)?;
    let s = basis_rewrite_sx(&initial_state(&p)?)?;
    let s = magnet_schedule(&s, &p, p.beta)?;
    if opts.strict_eq12 {
        let drift = p.post_magnet_drift(p.beta);
        return Ok(s.map_xpackets(|spin, g| ComplexGaussian { center: g.center - spin.sign::<T>() * drift, ..*g }));
    }
    Ok(s)
}

/// `S_z`-basis state on the screen with the which-way magnet
/// (`B = k B0 x`) in place of the eraser: the spin branches separate along
/// x without mixing.
pub fn whichway_state<T: Real>(p: &PhysParams<T>) -> Result<SpinorState<T>> {
    let p = p.validate(true)?;
    magnet_schedule(&initial_state(&p)?, &p, p.b0)
}

/// Screen density of the which-way configuration.
pub fn whichway_evolve<T: Real>(p: &PhysParams<T>, g: &GridSpec<T>) -> Result<DensityField<T>> {
    Ok(evaluate_state(&whichway_state(p)?, g))
}

/// No-eraser state at the screen time `p.t`.
pub fn no_eraser_state<T: Real>(p: &PhysParams<T>) -> Result<SpinorState<T>> {
    free_evolve(&initial_state(p)?, p, p.t)
}

/// `Σ_spin |component|^2` on the grid.
pub fn evaluate_state<T: Real>(s: &SpinorState<T>, g: &GridSpec<T>) -> DensityField<T> {
    s.evaluate(g)
}

/// Closed-form pieces shared by the screen densities.
struct ScreenTerms<T> {
    /// `|A_t|^2 = 1 / (4π s_x s_z)`.
    a2: T,
    sx: T,
    sz: T,
    z0: T,
    k: T,
}

impl<T: Real> ScreenTerms<T> {
    fn new(p: &PhysParams<T>) -> Self {
        let sx = p.x_spread();
        let sz = p.z_spread();
        Self {
            a2: T::one() / (lit::<T>(4.0) * T::PI() * sx * sz),
            sx,
            sz,
            z0: p.z0,
            k: p.fringe_wavenumber(),
        }
    }

    fn x_lobe(&self, x: T, center: T) -> T {
        let d = x - center;
        (-d * d / (lit::<T>(2.0) * self.sx * self.sx)).exp()
    }

    /// `P_+(z) + P_-(z)`.
    fn slits(&self, z: T) -> T {
        let two_s2 = lit::<T>(2.0) * self.sz * self.sz;
        let (a, b) = (z - self.z0, z + self.z0);
        (-a * a / two_s2).exp() + (-b * b / two_s2).exp()
    }

    /// Cross term `f(z)`.
    fn cross(&self, z: T) -> T {
        let two_s2 = lit::<T>(2.0) * self.sz * self.sz;
        (-(z * z + self.z0 * self.z0) / two_s2).exp() * (self.k * z).cos()
    }
}

/// Screen density without the eraser: a separable x-Gaussian times the sum
/// of the two spread slit packets, with no cross term.
pub fn density_no_eraser<T: Real>(p: &PhysParams<T>, g: &GridSpec<T>) -> Result<DensityField<T>> {
    let p = p.validate(false)?;
    g.check()?;
    let st = ScreenTerms::new(&p);
    let xs: Vec<T> = g.xs().iter().map(|&x| st.x_lobe(x, T::zero())).collect();
    let zs: Vec<T> = g.zs().iter().map(|&z| st.slits(z)).collect();
    Ok(DensityField::from_fn_indexed(*g, |i, j| st.a2 * xs[i] * zs[j]))
}

/// Screen density with the eraser on: the lobe at `+c` carries
/// `P_+ + P_- + 2f`, the lobe at `-c` carries `P_+ + P_- - 2f`.
pub fn density_eraser<T: Real>(p: &PhysParams<T>, g: &GridSpec<T>, opts: EraserOptions) -> Result<DensityField<T>> {
    let p = p.validate(true)?;
    g.check()?;
    let st = ScreenTerms::new(&p);
    let c = p.lobe_center(p.beta, !opts.strict_eq12);
    let half = lit::<T>(0.5);
    let two = lit::<T>(2.0);
    let plus: Vec<T> = g.xs().iter().map(|&x| st.x_lobe(x, c)).collect();
    let minus: Vec<T> = g.xs().iter().map(|&x| st.x_lobe(x, -c)).collect();
    let slits: Vec<T> = g.zs().iter().map(|&z| st.slits(z)).collect();
    let cross: Vec<T> = g.zs().iter().map(|&z| two * st.cross(z)).collect();
    Ok(DensityField::from_fn_indexed(*g, |i, j| {
        half * st.a2 * (plus[i] * (slits[j] + cross[j]) + minus[i] * (slits[j] - cross[j]))
    }))
}

impl<T: Real> DensityField<T> {
    fn from_fn_indexed(grid: GridSpec<T>, f: impl Fn(usize, usize) -> T) -> Self {
        let values = ndarray::Array2::from_shape_fn((grid.nz, grid.nx), |(j, i)| f(i, j));
        Self { grid, values }
    }
}
