//! Analytic two-component spinor states built from separable Gaussian
//! branches.

use ndarray::Array2;
use num_complex::Complex;

use crate::density::DensityField;
use crate::error::{Error, Result};
use crate::gaussian::ComplexGaussian;
use crate::grid::GridSpec;
use crate::num::{lit, Real};

/// Spin quantization axis of a state's branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpinBasis {
    Z,
    X,
}

/// Eigenvalue sign within a basis: `|S;+>` or `|S;->`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn sign<T: Real>(self) -> T {
        match self {
            Spin::Up => T::one(),
            Spin::Down => -T::one(),
        }
    }
}

/// Weighted z-packet inside a branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZPart<T> {
    pub weight: Complex<T>,
    pub packet: ComplexGaussian<T>,
}

/// Spatial wavefunction attached to one spin eigenstate:
/// `coeff * xpacket(x) * Σ weight_j zpacket_j(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch<T> {
    pub spin: Spin,
    pub coeff: Complex<T>,
    pub xpacket: ComplexGaussian<T>,
    pub zparts: Vec<ZPart<T>>,
}

impl<T: Real> Branch<T> {
    pub fn z_amplitude(&self, z: T) -> Complex<T> {
        self.zparts
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, p| acc + p.weight * p.packet.eval(z))
    }

    pub fn amplitude(&self, x: T, z: T) -> Complex<T> {
        self.coeff * self.xpacket.eval(x) * self.z_amplitude(z)
    }

    fn map_packets(&self, f: &impl Fn(&ComplexGaussian<T>) -> ComplexGaussian<T>) -> Self {
        Self {
            spin: self.spin,
            coeff: self.coeff,
            xpacket: f(&self.xpacket),
            zparts: self
                .zparts
                .iter()
                .map(|p| ZPart { weight: p.weight, packet: f(&p.packet) })
                .collect(),
        }
    }
}

/// Spinor state as a list of spin branches in a declared basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorState<T> {
    basis: SpinBasis,
    branches: Vec<Branch<T>>,
}

impl<T: Real> SpinorState<T> {
    pub fn new(basis: SpinBasis, branches: Vec<Branch<T>>) -> Result<Self> {
        for (i, b) in branches.iter().enumerate() {
            if branches[..i].iter().any(|o| o.spin == b.spin) {
                return Err(Error::UnsupportedState(format!("two branches share spin {:?}", b.spin)));
            }
        }
        Ok(Self { basis, branches })
    }

    pub fn basis(&self) -> SpinBasis {
        self.basis
    }

    pub fn branches(&self) -> &[Branch<T>] {
        &self.branches
    }

    pub fn branch(&self, spin: Spin) -> Option<&Branch<T>> {
        self.branches.iter().find(|b| b.spin == spin)
    }

    /// Amplitude of the `spin` component in the state's own basis.
    pub fn component(&self, spin: Spin, x: T, z: T) -> Complex<T> {
        self.branch(spin)
            .map(|b| b.amplitude(x, z))
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    /// `Σ_spin |component|^2`; independent of the basis.
    pub fn density_at(&self, x: T, z: T) -> T {
        self.branches.iter().map(|b| b.amplitude(x, z).norm_sqr()).fold(T::zero(), |a, v| a + v)
    }

    /// Applies `f` to every packet, leaving coefficients and weights alone.
    pub fn map_packets(&self, f: impl Fn(&ComplexGaussian<T>) -> ComplexGaussian<T>) -> Self {
        Self {
            basis: self.basis,
            branches: self.branches.iter().map(|b| b.map_packets(&f)).collect(),
        }
    }

    /// Applies `f(spin, xpacket)` to the x-packet of each branch.
    pub fn map_xpackets(&self, f: impl Fn(Spin, &ComplexGaussian<T>) -> ComplexGaussian<T>) -> Self {
        let branches = self
            .branches
            .iter()
            .map(|b| Branch { xpacket: f(b.spin, &b.xpacket), ..b.clone() })
            .collect();
        Self { basis: self.basis, branches }
    }

    /// Re-expresses the state in the other spin basis.
    ///
    /// `|Z±> = (|X+> ± |X->)/√2` and symmetrically, so both directions use
    /// the same combination. Both branches must share their x-packet, which
    /// holds for every state before a spin-dependent magnet acts.
    pub fn rotate_basis(&self) -> Result<Self> {
        let up = self.branch(Spin::Up);
        let down = self.branch(Spin::Down);
        let xpacket = match (up, down) {
            (Some(u), Some(d)) => {
                if !u.xpacket.approx_eq(&d.xpacket, lit(1e-12)) {
                    return Err(Error::UnsupportedState("branches do not share an x-packet".into()));
                }
                u.xpacket
            }
            (Some(b), None) | (None, Some(b)) => b.xpacket,
            (None, None) => return Err(Error::UnsupportedState("state has no branches".into())),
        };
        let parts = |b: Option<&Branch<T>>| -> Vec<ZPart<T>> {
            b.map(|b| {
                b.zparts
                    .iter()
                    .map(|p| ZPart { weight: p.weight * b.coeff, packet: p.packet })
                    .collect()
            })
            .unwrap_or_default()
        };
        let (pu, pd) = (parts(up), parts(down));
        let inv_sqrt2 = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        let mut branches = Vec::with_capacity(2);
        for spin in [Spin::Up, Spin::Down] {
            let s: T = spin.sign();
            let mut zparts: Vec<ZPart<T>> = pu.clone();
            zparts.extend(pd.iter().map(|p| ZPart { weight: p.weight * s, packet: p.packet }));
            let zparts = merge_parts(zparts);
            if zparts.is_empty() {
                continue;
            }
            // Pull the leading weight into the coefficient so the canonical
            // structure (weights ±1) is recovered for equal-weight inputs.
            let lead = zparts[0].weight;
            let zparts = zparts.into_iter().map(|p| ZPart { weight: p.weight / lead, packet: p.packet }).collect();
            branches.push(Branch { spin, coeff: lead * inv_sqrt2, xpacket, zparts });
        }
        let basis = match self.basis {
            SpinBasis::Z => SpinBasis::X,
            SpinBasis::X => SpinBasis::Z,
        };
        Self::new(basis, branches)
    }

    /// Samples `Σ_spin |component|^2` on a grid. Each branch is separable, so
    /// this costs one x- and one z-evaluation per node row.
    pub fn evaluate(&self, grid: &GridSpec<T>) -> DensityField<T> {
        let xs = grid.xs();
        let zs = grid.zs();
        let mut values = Array2::zeros((grid.nz, grid.nx));
        for b in &self.branches {
            let xa: Vec<Complex<T>> = xs.iter().map(|&x| b.coeff * b.xpacket.eval(x)).collect();
            let za: Vec<Complex<T>> = zs.iter().map(|&z| b.z_amplitude(z)).collect();
            for ((j, i), v) in values.indexed_iter_mut() {
                let v: &mut T = v;
                *v = *v + (xa[i] * za[j]).norm_sqr();
            }
        }
        DensityField { grid: *grid, values }
    }

    /// Exact `∫∫ density`, from Gaussian overlap integrals.
    pub fn norm_sqr(&self) -> T {
        self.branches
            .iter()
            .map(|b| {
                let xn = b.coeff.norm_sqr() * b.xpacket.norm_sqr();
                let mut zn = Complex::new(T::zero(), T::zero());
                for p in &b.zparts {
                    for q in &b.zparts {
                        zn = zn + p.weight.conj() * q.weight * overlap(&p.packet, &q.packet);
                    }
                }
                xn * zn.re
            })
            .fold(T::zero(), |a, v| a + v)
    }
}

/// Sums the weights of identical packets and drops cancelled terms.
fn merge_parts<T: Real>(parts: Vec<ZPart<T>>) -> Vec<ZPart<T>> {
    let mut out: Vec<ZPart<T>> = Vec::with_capacity(parts.len());
    for p in parts {
        match out.iter_mut().find(|q| q.packet.approx_eq(&p.packet, lit(1e-12))) {
            Some(q) => q.weight = q.weight + p.weight,
            None => out.push(p),
        }
    }
    let scale = out.iter().fold(T::zero(), |m, p| m.max(p.weight.norm()));
    out.retain(|p| p.weight.norm() > scale * lit(1e-14));
    out
}

/// `∫ conj(a(u)) b(u) du` for two complex Gaussians, in closed form.
pub fn overlap<T: Real>(a: &ComplexGaussian<T>, b: &ComplexGaussian<T>) -> Complex<T> {
    // Exponent: -α u^2 + β u + γ, integral sqrt(π/α) exp(β^2/4α + γ).
    let four = lit::<T>(4.0);
    let ca = Complex::new(T::one(), T::zero()) / (a.cwidth.conj() * four);
    let cb = Complex::new(T::one(), T::zero()) / (b.cwidth * four);
    let alpha = ca + cb;
    let i = Complex::new(T::zero(), T::one());
    let beta = ca * (a.center * lit::<T>(2.0)) + cb * (b.center * lit::<T>(2.0)) + i * (b.kphase / b.hbar - a.kphase / a.hbar);
    let gamma = -(ca * a.center * a.center) - cb * b.center * b.center;
    let pi = Complex::new(T::PI(), T::zero());
    a.amp.conj() * b.amp * (pi / alpha).sqrt() * (beta * beta / (alpha * four) + gamma).exp()
}
