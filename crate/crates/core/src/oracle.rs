//! Split-operator propagation of the two-component spinor on a grid.
//!
//! This is the brute-force counterpart of [`crate::analytic`]: the initial
//! state is sampled on a periodic box and stepped with Strang splitting
//! (half potential, spectral kinetic step, half potential). Magnet
//! potentials are diagonal in one spin basis (`S_x` for the eraser, `S_z`
//! for the which-way magnet), so each potential step is a pair of position
//! dependent phases applied in that basis.

use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::density::DensityField;
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::num::{from_usize, lit, Real};
use crate::params::PhysParams;
use crate::state::{SpinBasis, SpinorState};

/// Which Hamiltonian acts during a propagation segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HamiltonianKind {
    /// `p_x^2/2m + p_z^2/2m`.
    Free,
    /// `p^2/2m - coupling x sigma_x`.
    Eraser,
    /// `p^2/2m - coupling x sigma_z`.
    WhichWay,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianSpec<T> {
    pub kind: HamiltonianKind,
    pub coupling: T,
    pub mass: T,
    pub hbar: T,
}

impl<T: Real> HamiltonianSpec<T> {
    pub fn new(kind: HamiltonianKind, coupling: T, mass: T, hbar: T) -> Result<Self> {
        if !(coupling >= T::zero()) {
            return Err(Error::InvalidParams("coupling must be non-negative".into()));
        }
        if !(mass > T::zero() && hbar > T::zero()) {
            return Err(Error::InvalidParams("mass and hbar must be positive".into()));
        }
        Ok(Self { kind, coupling, mass, hbar })
    }

    pub fn free(p: &PhysParams<T>) -> Self {
        Self { kind: HamiltonianKind::Free, coupling: T::zero(), mass: p.m, hbar: p.hbar }
    }

    pub fn eraser(p: &PhysParams<T>) -> Self {
        Self { kind: HamiltonianKind::Eraser, coupling: p.beta, mass: p.m, hbar: p.hbar }
    }

    pub fn whichway(p: &PhysParams<T>) -> Self {
        Self { kind: HamiltonianKind::WhichWay, coupling: p.b0, mass: p.m, hbar: p.hbar }
    }

    /// Spin basis in which the potential is diagonal.
    pub fn diagonal_basis(&self) -> Option<SpinBasis> {
        match self.kind {
            HamiltonianKind::Free => None,
            HamiltonianKind::Eraser => Some(SpinBasis::X),
            HamiltonianKind::WhichWay => Some(SpinBasis::Z),
        }
    }
}

/// Experiment configuration driven by [`run_schedule`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    NoEraser,
    Eraser,
    WhichWay,
}

/// Both spin components sampled on a grid. Arrays are indexed `[[j, i]]`
/// with `j` along z and `i` along x, like [`DensityField`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorGrid<T> {
    pub grid: GridSpec<T>,
    pub up: Array2<Complex<T>>,
    pub down: Array2<Complex<T>>,
    pub basis: SpinBasis,
}

impl<T: Real> SpinorGrid<T> {
    /// Discrete norm `Σ (|up|^2 + |down|^2) dx dz`.
    pub fn norm(&self) -> T {
        let s = self
            .up
            .iter()
            .chain(self.down.iter())
            .fold(T::zero(), |a, c| a + c.norm_sqr());
        s * self.grid.dx() * self.grid.dz()
    }

    pub fn density(&self) -> DensityField<T> {
        let values = Array2::from_shape_fn(self.up.dim(), |ix| self.up[ix].norm_sqr() + self.down[ix].norm_sqr());
        DensityField { grid: self.grid, values }
    }

    /// Re-expresses the components in `basis` (a Hadamard rotation when the
    /// basis changes).
    pub fn to_basis(mut self, basis: SpinBasis) -> Self {
        if basis != self.basis {
            let r = T::FRAC_1_SQRT_2();
            ndarray::Zip::from(&mut self.up).and(&mut self.down).for_each(|u, d| {
                let (a, b) = (*u, *d);
                *u = (a + b) * r;
                *d = (a - b) * r;
            });
            self.basis = basis;
        }
        self
    }
}

/// Result of [`discretize`].
#[derive(Debug, Clone)]
pub struct Discretized<T> {
    pub state: SpinorGrid<T>,
    /// Factor applied to reach unit discrete norm; 1 for a well-chosen box.
    pub renormalization: T,
}

/// Samples an analytic state on `g` and renormalizes it to unit discrete
/// norm.
///
/// Fails with [`Error::GridTooSmall`] when the density on the box boundary
/// exceeds 1e-8 of its peak (which includes a box that misses the packets).
pub fn discretize<T: Real>(s: &SpinorState<T>, g: &GridSpec<T>) -> Result<Discretized<T>> {
    g.check()?;
    let xs = g.xs();
    let zs = g.zs();
    let mut comps = [Array2::zeros((g.nz, g.nx)), Array2::zeros((g.nz, g.nx))];
    for b in s.branches() {
        let slot = match b.spin {
            crate::state::Spin::Up => 0,
            crate::state::Spin::Down => 1,
        };
        let xa: Vec<Complex<T>> = xs.iter().map(|&x| b.coeff * b.xpacket.eval(x)).collect();
        let za: Vec<Complex<T>> = zs.iter().map(|&z| b.z_amplitude(z)).collect();
        for ((j, i), v) in comps[slot].indexed_iter_mut() {
            *v = xa[i] * za[j];
        }
    }
    let [up, down] = comps;
    let mut state = SpinorGrid { grid: *g, up, down, basis: s.basis() };

    let dens = state.density();
    let peak = dens.max_value();
    let (nz, nx) = dens.values.dim();
    let mut edge = T::zero();
    for ((j, i), &v) in dens.values.indexed_iter() {
        if j == 0 || i == 0 || j == nz - 1 || i == nx - 1 {
            edge = edge.max(v);
        }
    }
    if !(peak > T::zero()) {
        return Err(Error::GridTooSmall { ratio: f64::INFINITY });
    }
    let ratio = edge / peak;
    if ratio > lit(1e-8) {
        return Err(Error::GridTooSmall { ratio: ratio.to_f64().unwrap_or(f64::INFINITY) });
    }

    let factor = T::one() / state.norm().sqrt();
    if (factor - T::one()).abs() > lit(1e-6) {
        log::warn!("discretized state renormalized by {factor}; the grid under-resolves the packets");
    }
    state.up.mapv_inplace(|c| c * factor);
    state.down.mapv_inplace(|c| c * factor);
    Ok(Discretized { state, renormalization: factor })
}

/// Planned 2D transforms and the kinetic propagator for one step size.
#[derive(Clone)]
struct KineticStep<T: Real> {
    nx: usize,
    nz: usize,
    fwd_x: Arc<dyn Fft<T>>,
    inv_x: Arc<dyn Fft<T>>,
    fwd_z: Arc<dyn Fft<T>>,
    inv_z: Arc<dyn Fft<T>>,
    /// `exp(-i hbar (kx^2 + kz^2) dt / 2m) / (nx nz)`, stored transposed
    /// (`[i * nz + j]`).
    phase: Vec<Complex<T>>,
    scratch: Vec<Complex<T>>,
    transposed: Vec<Complex<T>>,
}

/// Angular wavenumbers of a length-`n` transform with spacing `d`, in FFT
/// order.
fn wavenumbers<T: Real>(n: usize, d: T) -> Vec<T> {
    let base = lit::<T>(2.0) * T::PI() / (from_usize::<T>(n) * d);
    (0..n)
        .map(|k| {
            let signed = if k <= n / 2 { k as i64 } else { k as i64 - n as i64 };
            base * T::from_i64(signed).expect("wavenumber index")
        })
        .collect()
}

impl<T: Real> KineticStep<T> {
    fn new(grid: &GridSpec<T>, mass: T, hbar: T, dt: T) -> Self {
        let (nx, nz) = (grid.nx, grid.nz);
        let mut planner = FftPlanner::new();
        let fwd_x = planner.plan_fft(nx, FftDirection::Forward);
        let inv_x = planner.plan_fft(nx, FftDirection::Inverse);
        let fwd_z = planner.plan_fft(nz, FftDirection::Forward);
        let inv_z = planner.plan_fft(nz, FftDirection::Inverse);
        let kx = wavenumbers(nx, grid.dx());
        let kz = wavenumbers(nz, grid.dz());
        let norm = T::one() / from_usize::<T>(nx * nz);
        let c = hbar * dt / (lit::<T>(2.0) * mass);
        let mut phase = Vec::with_capacity(nx * nz);
        for &a in &kx {
            for &b in &kz {
                phase.push(Complex::new(T::zero(), -c * (a * a + b * b)).exp() * norm);
            }
        }
        let scratch_len = [&fwd_x, &inv_x, &fwd_z, &inv_z]
            .iter()
            .map(|f| f.get_inplace_scratch_len())
            .max()
            .unwrap_or(0);
        Self {
            nx,
            nz,
            fwd_x,
            inv_x,
            fwd_z,
            inv_z,
            phase,
            scratch: vec![Complex::new(T::zero(), T::zero()); scratch_len],
            transposed: vec![Complex::new(T::zero(), T::zero()); nx * nz],
        }
    }

    fn apply(&mut self, a: &mut Array2<Complex<T>>) {
        let (nx, nz) = (self.nx, self.nz);
        let buf = a.as_slice_mut().expect("standard layout");
        self.fwd_x.process_with_scratch(buf, &mut self.scratch);
        for j in 0..nz {
            for i in 0..nx {
                self.transposed[i * nz + j] = buf[j * nx + i];
            }
        }
        self.fwd_z.process_with_scratch(&mut self.transposed, &mut self.scratch);
        for (v, p) in self.transposed.iter_mut().zip(&self.phase) {
            *v = *v * *p;
        }
        self.inv_z.process_with_scratch(&mut self.transposed, &mut self.scratch);
        for j in 0..nz {
            for i in 0..nx {
                buf[j * nx + i] = self.transposed[i * nz + j];
            }
        }
        self.inv_x.process_with_scratch(buf, &mut self.scratch);
    }

    /// Largest per-axis kinetic phase per step, at the Nyquist wavenumber.
    fn max_axis_phase(grid: &GridSpec<T>, mass: T, hbar: T, dt: T) -> T {
        let kx = T::PI() / grid.dx();
        let kz = T::PI() / grid.dz();
        hbar * dt * kx.max(kz).powi(2) / (lit::<T>(2.0) * mass)
    }
}

/// `exp(±i coupling x tau / hbar)` per x node for the `Up`/`Down` component
/// in the potential's diagonal basis.
fn potential_phases<T: Real>(grid: &GridSpec<T>, h: &HamiltonianSpec<T>, tau: T) -> Vec<Complex<T>> {
    grid.xs()
        .iter()
        .map(|&x| Complex::new(T::zero(), h.coupling * x * tau / h.hbar).exp())
        .collect()
}

fn apply_phases<T: Real>(a: &mut Array2<Complex<T>>, phases: &[Complex<T>]) {
    for mut row in a.rows_mut() {
        for (v, p) in row.iter_mut().zip(phases) {
            *v = *v * *p;
        }
    }
}

fn apply_potential<T: Real>(sg: &mut SpinorGrid<T>, phases: &[Complex<T>]) {
    apply_phases(&mut sg.up, phases);
    let conj: Vec<_> = phases.iter().map(|p| p.conj()).collect();
    apply_phases(&mut sg.down, &conj);
}

/// Strang steps for one spin component in the potential's diagonal basis,
/// where the two components evolve independently. `phases` holds the half
/// and full step potential phases for this component.
fn evolve_component<T: Real>(
    a: &mut Array2<Complex<T>>,
    mut kinetic: KineticStep<T>,
    phases: Option<(Vec<Complex<T>>, Vec<Complex<T>>)>,
    steps: usize,
) -> Result<()> {
    if let Some((half, _)) = &phases {
        apply_phases(a, half);
    }
    for n in 0..steps {
        kinetic.apply(a);
        if let Some((half, full)) = &phases {
            apply_phases(a, if n + 1 == steps { half } else { full });
        }
        if (n + 1) % 64 == 0 || n + 1 == steps {
            if !a.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::NonFinite { step: n + 1 });
            }
        }
    }
    Ok(())
}

/// Potential step applied as the 2x2 matrix exponential
/// `exp(i theta sigma)` in the S_z basis, without rotating the state.
pub fn potential_step_matrix<T: Real>(sg: &SpinorGrid<T>, h: &HamiltonianSpec<T>, tau: T) -> Result<SpinorGrid<T>> {
    if sg.basis != SpinBasis::Z {
        return Err(Error::UnsupportedState("matrix potential step expects the S_z basis".into()));
    }
    let mut out = sg.clone();
    let xs = sg.grid.xs();
    let i = Complex::new(T::zero(), T::one());
    for ((j, k), u) in out.up.indexed_iter_mut() {
        let theta = h.coupling * xs[k] * tau / h.hbar;
        let (c, s) = (theta.cos(), theta.sin());
        let (a, b) = (sg.up[[j, k]], sg.down[[j, k]]);
        let (na, nb) = match h.kind {
            HamiltonianKind::Free => (a, b),
            // exp(i θ σ_x) = cos θ + i sin θ σ_x
            HamiltonianKind::Eraser => (a * c + i * b * s, i * a * s + b * c),
            // exp(i θ σ_z) = diag(e^{iθ}, e^{-iθ})
            HamiltonianKind::WhichWay => (a * Complex::new(c, s), b * Complex::new(c, -s)),
        };
        *u = na;
        out.down[[j, k]] = nb;
    }
    Ok(out)
}

/// Potential step in the rotated (diagonal) basis; the state is returned in
/// its original basis. Counterpart of [`potential_step_matrix`].
pub fn potential_step_rotated<T: Real>(sg: &SpinorGrid<T>, h: &HamiltonianSpec<T>, tau: T) -> SpinorGrid<T> {
    let Some(basis) = h.diagonal_basis() else {
        return sg.clone();
    };
    let original = sg.basis;
    let mut s = sg.clone().to_basis(basis);
    apply_potential(&mut s, &potential_phases(&sg.grid, h, tau));
    s.to_basis(original)
}

/// Advances `sg` by `steps` Strang steps of size `dt` under `h`.
///
/// The state is returned in the potential's diagonal basis (unchanged for
/// the free kind). Adjacent half potential steps are fused.
pub fn split_step<T: Real>(sg: SpinorGrid<T>, h: &HamiltonianSpec<T>, dt: T, steps: usize) -> Result<SpinorGrid<T>> {
    if steps == 0 {
        return Ok(sg);
    }
    if !(dt >= T::zero()) {
        return Err(Error::InvalidParams("dt must be non-negative".into()));
    }
    let mut sg = match h.diagonal_basis() {
        Some(b) => sg.to_basis(b),
        None => sg,
    };
    if h.kind != HamiltonianKind::Free {
        let phase = KineticStep::max_axis_phase(&sg.grid, h.mass, h.hbar, dt);
        if phase > lit(0.5) {
            log::warn!("kinetic phase per step {phase} rad exceeds 0.5 rad; reduce dt");
        }
    }
    let kinetic = KineticStep::new(&sg.grid, h.mass, h.hbar, dt);
    let up_phases = h
        .diagonal_basis()
        .map(|_| (potential_phases(&sg.grid, h, dt / lit(2.0)), potential_phases(&sg.grid, h, dt)));
    let conj = |v: &Vec<Complex<T>>| v.iter().map(|p| p.conj()).collect::<Vec<_>>();
    let down_phases = up_phases.as_ref().map(|(h, f)| (conj(h), conj(f)));
    let (up, down) = (&mut sg.up, &mut sg.down);
    let (ru, rd) = std::thread::scope(|scope| {
        let k = kinetic.clone();
        let worker = scope.spawn(move || evolve_component(down, k, down_phases, steps));
        let ru = evolve_component(up, kinetic, up_phases, steps);
        (ru, worker.join().expect("propagation thread panicked"))
    });
    ru?;
    rd?;
    Ok(sg)
}

/// Output of [`run_schedule`].
#[derive(Debug, Clone)]
pub struct ScheduleRun<T> {
    /// State at the screen time, in the S_z basis.
    pub state: SpinorGrid<T>,
    /// `|norm(t) - norm(0)|` of the discrete state.
    pub norm_drift: T,
    pub renormalization: T,
    /// Strang steps taken inside the magnet.
    pub magnet_steps: usize,
}

/// Propagates the slit state through the experiment timeline: free flight
/// on `[0, t_i]`, the scenario's magnet on `[t_i, t_i + t_e]`, free flight to
/// `t`. Without the eraser the flight is free throughout.
///
/// Free segments are a single exact spectral step. The magnet segment uses
/// `ceil(t_e / dt)` equal steps so it ends exactly at `t_i + t_e`.
pub fn run_schedule<T: Real>(p: &PhysParams<T>, scenario: Scenario, g: &GridSpec<T>, dt: T) -> Result<ScheduleRun<T>> {
    let p = p.validate(scenario != Scenario::NoEraser)?;
    if !(dt > T::zero()) {
        return Err(Error::InvalidParams("dt must be positive".into()));
    }
    let initial = crate::analytic::initial_state(&p)?;
    let Discretized { state, renormalization } = discretize(&initial, g)?;
    let n0 = state.norm();
    let free = HamiltonianSpec::free(&p);
    let magnet = match scenario {
        Scenario::NoEraser => None,
        Scenario::Eraser => Some(HamiltonianSpec::eraser(&p)),
        Scenario::WhichWay => Some(HamiltonianSpec::whichway(&p)),
    };
    let mut segments = Vec::new();
    match magnet {
        None => segments.push((free, p.t)),
        Some(h) => {
            segments.push((free, p.t_i));
            segments.push((h, p.t_e));
            segments.push((free, p.t - p.t_i - p.t_e));
        }
    }
    let mut state = state;
    let mut magnet_steps = 0;
    for (h, duration) in segments {
        if duration <= T::zero() {
            continue;
        }
        if h.kind == HamiltonianKind::Free {
            state = split_step(state, &h, duration, 1)?;
        } else {
            let n = (duration / dt - lit(1e-9)).ceil().to_usize().unwrap_or(1).max(1);
            state = split_step(state, &h, duration / from_usize(n), n)?;
            magnet_steps += n;
        }
    }
    let state = state.to_basis(SpinBasis::Z);
    let norm_drift = (state.norm() - n0).abs();
    Ok(ScheduleRun { state, norm_drift, renormalization, magnet_steps })
}

/// Relative L2 residual `||a - b|| / ||a||`.
pub fn compare_l2<T: Real>(a: &DensityField<T>, b: &DensityField<T>) -> Result<T> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    let (num, den) = a
        .values
        .iter()
        .zip(b.values.iter())
        .fold((T::zero(), T::zero()), |(n, d), (&x, &y)| (n + (x - y) * (x - y), d + x * x));
    if den == T::zero() {
        return Err(Error::EmptyDensity);
    }
    Ok((num / den).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{basis_rewrite_sx, initial_state};
    use crate::gaussian::ComplexGaussian;
    use crate::state::{Branch, Spin, ZPart};

    fn params() -> PhysParams<f64> {
        PhysParams::default()
    }

    /// Single product Gaussian with the given spin in the given basis.
    fn single_packet(basis: SpinBasis, spin: Spin, xw: f64, zw: f64) -> SpinorState<f64> {
        let one = Complex::new(1.0, 0.0);
        SpinorState::new(
            basis,
            vec![Branch {
                spin,
                coeff: one,
                xpacket: ComplexGaussian::normalized(0.0, xw, 1.0),
                zparts: vec![ZPart { weight: one, packet: ComplexGaussian::normalized(0.0, zw, 1.0) }],
            }],
        )
        .unwrap()
    }

    fn moments(profile: &[f64], coords: &[f64]) -> (f64, f64) {
        let w: f64 = profile.iter().sum();
        let mean = profile.iter().zip(coords).map(|(p, c)| p * c).sum::<f64>() / w;
        let var = profile.iter().zip(coords).map(|(p, c)| p * (c - mean).powi(2)).sum::<f64>() / w;
        (mean, var.sqrt())
    }

    #[test]
    fn discretize_initial_state_on_small_box() {
        let p = params();
        let g = GridSpec::square(12.0, 512).unwrap();
        let d = discretize(&initial_state(&p).unwrap(), &g).unwrap();
        assert!((d.renormalization - 1.0).abs() < 1e-6);
        assert!((d.state.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn discretized_peak_matches_packet() {
        let p = params();
        let g = GridSpec::square(12.0, 512).unwrap();
        let s = initial_state(&p).unwrap();
        let d = discretize(&s, &g).unwrap();
        let (i, j) = ((-g.x_min / g.dx()).round() as usize, ((p.z0 - g.z_min) / g.dz()).round() as usize);
        let sampled = d.state.up[[j, i]] / d.renormalization;
        let exact = s.component(Spin::Up, g.x(i), g.z(j));
        assert!((sampled - exact).norm() < 1e-14);
        let peak = s.component(Spin::Up, 0.0, p.z0).norm();
        assert!((sampled.norm() - peak).abs() < peak * g.dx().powi(2));
    }

    #[test]
    fn box_missing_the_packets_is_rejected() {
        let p = params();
        let g = GridSpec::new(100.0, 140.0, 64, 100.0, 140.0, 64).unwrap();
        assert!(matches!(discretize(&initial_state(&p).unwrap(), &g), Err(Error::GridTooSmall { .. })));
        let g = GridSpec::square(4.0, 64).unwrap();
        assert!(matches!(discretize(&initial_state(&p).unwrap(), &g), Err(Error::GridTooSmall { .. })));
    }

    #[test]
    fn zero_steps_is_identity() {
        let p = params();
        let g = GridSpec::square(12.0, 64).unwrap();
        let d = discretize(&initial_state(&p).unwrap(), &g).unwrap().state;
        let out = split_step(d.clone(), &HamiltonianSpec::eraser(&p), 0.01, 0).unwrap();
        assert_eq!(out, d);
    }

    #[test]
    fn eraser_kick_on_x_polarized_packet() {
        let p = params();
        let s = single_packet(SpinBasis::X, Spin::Up, 1.0, 1.0);
        let g = GridSpec::new(-16.0, 24.0, 256, -16.0, 16.0, 128).unwrap();
        let d = discretize(&s, &g).unwrap().state;
        let out = split_step(d, &HamiltonianSpec::eraser(&p), 0.005, 400).unwrap();
        let dens = out.density();
        let xs = g.xs();
        let xprof: Vec<f64> = (0..g.nx).map(|i| dens.values.column(i).sum()).collect();
        let (mean, _) = moments(&xprof, &xs);
        let shift = p.beta * p.t_e * p.t_e / (2.0 * p.m);
        assert!((mean - shift).abs() < 0.005 * shift, "centroid {mean}");
        // Mean momentum from the phase increment between neighbouring nodes.
        let comp = out.to_basis(SpinBasis::X).up;
        let mut pm = 0.0;
        let mut n = 0.0;
        for j in 0..g.nz {
            for i in 0..g.nx - 1 {
                let w = (comp[[j, i]].norm_sqr() + comp[[j, i + 1]].norm_sqr()) / 2.0;
                pm += w * (comp[[j, i]].conj() * comp[[j, i + 1]]).arg() / g.dx();
                n += w;
            }
        }
        let kick = p.beta * p.t_e;
        assert!((pm / n - kick).abs() < 0.005 * kick, "momentum {}", pm / n);
    }

    #[test]
    fn free_spread_with_many_steps() {
        let p = params();
        let s = single_packet(SpinBasis::Z, Spin::Up, 1.0, 1.0);
        let g = GridSpec::square(80.0, 256).unwrap();
        let d = discretize(&s, &g).unwrap().state;
        let out = split_step(d, &HamiltonianSpec::free(&p), 0.04, 500).unwrap();
        let dens = out.density();
        let zprof: Vec<f64> = (0..g.nz).map(|j| dens.values.row(j).sum()).collect();
        let (_, width) = moments(&zprof, &g.zs());
        let expected = p.spread(1.0, 20.0);
        assert!((width - expected).abs() < 1e-3 * expected, "{width} vs {expected}");
    }

    #[test]
    fn galilean_translation_on_grid() {
        let one = Complex::new(1.0, 0.0);
        let x = ComplexGaussian::new(0.0, Complex::new(1.0, 0.0), 2.0, one, 1.0).unwrap();
        let s = SpinorState::new(
            SpinBasis::Z,
            vec![Branch {
                spin: Spin::Up,
                coeff: one,
                xpacket: ComplexGaussian { amp: ComplexGaussian::normalized(0.0, 1.0, 1.0).amp, ..x },
                zparts: vec![ZPart { weight: one, packet: ComplexGaussian::normalized(0.0, 1.0, 1.0) }],
            }],
        )
        .unwrap();
        let g = GridSpec::new(-20.0, 40.0, 512, -20.0, 20.0, 128).unwrap();
        let d = discretize(&s, &g).unwrap().state;
        let out = split_step(d, &HamiltonianSpec::free(&params()), 0.01, 500).unwrap();
        let dens = out.density();
        let xprof: Vec<f64> = (0..g.nx).map(|i| dens.values.column(i).sum()).collect();
        let (mean, _) = moments(&xprof, &g.xs());
        assert!((mean - 10.0).abs() < 1e-3 * 10.0, "{mean}");
    }

    #[test]
    fn rotated_and_matrix_potential_steps_agree() {
        let p = params();
        let g = GridSpec::square(12.0, 96).unwrap();
        let s = crate::analytic::free_evolve(&initial_state(&p).unwrap(), &p, 1.0).unwrap();
        let d = discretize(&s, &g).unwrap().state;
        for h in [HamiltonianSpec::eraser(&p), HamiltonianSpec::whichway(&p)] {
            let a = potential_step_rotated(&d, &h, 0.37);
            let b = potential_step_matrix(&d, &h, 0.37).unwrap();
            let diff = a.up.iter().zip(b.up.iter()).chain(a.down.iter().zip(b.down.iter()))
                .fold(0.0f64, |m, (x, y)| m.max((x - y).norm()));
            assert!(diff < 1e-12, "{diff}");
        }
    }

    #[test]
    fn split_step_is_unitary() {
        let p = params();
        let g = GridSpec::square(16.0, 128).unwrap();
        let s = basis_rewrite_sx(&initial_state(&p).unwrap()).unwrap();
        let d = discretize(&s, &g).unwrap().state;
        let n0 = d.norm();
        let out = split_step(d, &HamiltonianSpec::eraser(&p), 0.01, 50).unwrap();
        assert!((out.norm() - n0).abs() < 1e-12);
    }

    #[test]
    fn schedule_at_time_zero_is_initial_state() {
        let p = PhysParams { t: 0.0, t_i: 0.0, t_e: 0.0, ..params() };
        let g = GridSpec::square(12.0, 128).unwrap();
        let run = run_schedule(&p, Scenario::NoEraser, &g, 0.01).unwrap();
        let d = discretize(&initial_state(&p).unwrap(), &g).unwrap().state;
        assert_eq!(run.state, d);
    }

    #[test]
    fn no_eraser_schedule_matches_closed_form() {
        let p = params();
        let g = GridSpec::new(-60.0, 60.0, 256, -84.0, 84.0, 256).unwrap();
        let run = run_schedule(&p, Scenario::NoEraser, &g, 0.005).unwrap();
        let exact = crate::analytic::density_no_eraser(&p, &g).unwrap();
        let r = compare_l2(&exact, &run.state.density()).unwrap();
        assert!(r < 1e-6, "residual {r}");
        assert!(run.norm_drift < 1e-10);
    }

    #[test]
    fn compare_l2_basics() {
        let g = GridSpec::<f64>::square(1.0, 8).unwrap();
        let a = DensityField::from_fn(g, |x, z| 1.0 + x * x + z);
        assert_eq!(compare_l2(&a, &a).unwrap(), 0.0);
        let b = DensityField { grid: g, values: a.values.mapv(|v| v * 1.01) };
        assert!((compare_l2(&a, &b).unwrap() - 0.01).abs() < 1e-12);
        let other = DensityField::from_fn(GridSpec::square(2.0, 8).unwrap(), |_, _| 1.0);
        assert_eq!(compare_l2(&a, &other), Err(Error::GridMismatch));
    }
}
