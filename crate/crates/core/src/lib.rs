//! Resonance dipole-dipole lattice sums for stacked square lattices.
//!
//! The coupling tensors `a³D_ij(k)` within one plane and between planes come
//! from either a brute-force real-space window ([`direct_sum`]) or
//! exponentially convergent series ([`ewald`]). [`dispersion`] contracts them
//! with the transition dipole to give exciton energies for one, two or many
//! planes.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below cover the common case.
//!
//! ```
//! use latticesum::{dispersion, dispersion::Method, ewald::EwaldConfig, TransitionDipole64, WaveVector64};
//!
//! let dipole = TransitionDipole64::from_theta(std::f64::consts::FRAC_PI_2, 1.0).unwrap();
//! let k = WaveVector64::new(1e-3, 0.0);
//! let jp = dispersion::j_inter(k, &dipole, 10.0, Method::Ewald(EwaldConfig::default())).unwrap();
//! assert!((jp - 6.2206e-3).abs() < 1e-7);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod direct_sum;
pub mod dispersion;
pub mod error;
pub mod ewald;
pub mod model;
pub mod quadrature;
mod real;
pub mod specfun;
pub mod summation;

pub use error::{Error, Result};
pub use real::Real;

pub type WaveVector64 = model::WaveVector<f64>;
pub type CouplingTensor64 = model::CouplingTensor<f64>;
pub type TransitionDipole64 = model::TransitionDipole<f64>;
pub type LatticeGeometry64 = model::LatticeGeometry<f64>;
pub type EnergyScale64 = model::EnergyScale<f64>;
pub type ModeSpectrum64 = dispersion::ModeSpectrum<f64>;

pub type WaveVector32 = model::WaveVector<f32>;
pub type CouplingTensor32 = model::CouplingTensor<f32>;
pub type TransitionDipole32 = model::TransitionDipole<f32>;
