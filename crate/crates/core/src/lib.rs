//! Spin-1/2 Stern-Gerlach quantum eraser.
//!
//! Closed-form evolution of double-slit spinor wave packets through an
//! eraser (or which-way) magnet, a split-operator grid propagator used as an
//! independent check, and fringe analysis of the resulting screen densities.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.

pub mod analytic;
pub mod density;
pub mod error;
pub mod fringes;
pub mod gaussian;
pub mod grid;
pub mod num;
pub mod oracle;
pub mod params;
pub mod state;

pub use analytic::EraserOptions;
pub use error::{Error, Result};
pub use num::Real;
pub use oracle::{HamiltonianKind, Scenario};
pub use state::{Spin, SpinBasis};

pub type PhysParams = params::PhysParams<f64>;
pub type GridSpec = grid::GridSpec<f64>;
pub type ComplexGaussian = gaussian::ComplexGaussian<f64>;
pub type SpinorState = state::SpinorState<f64>;
pub type DensityField = density::DensityField<f64>;
pub type SpinorGrid = oracle::SpinorGrid<f64>;
pub type Profile = density::Profile<f64>;
pub type Interval = grid::Interval<f64>;
pub type FringeReport = fringes::FringeReport<f64>;
pub type HamiltonianSpec = oracle::HamiltonianSpec<f64>;
