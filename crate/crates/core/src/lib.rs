//! Bound-state spectra and radial wavefunctions of the singular oscillator
//!
//! ```text
//! V(r) = -V0 / r^2 + g r^2,        V0, g > 0,  hbar = 1
//! ```
//!
//! When the inverse-square attraction satisfies
//! `l(l+1) < 2 m V0 < (l + 1/2)^2`, the radial Hamiltonian admits a
//! one-parameter family of self-adjoint boundary conditions at the origin,
//! parametrized here by the projective real `tau`. This crate computes the
//! resulting spectrum from the transcendental Gamma-ratio eigenvalue
//! equation, evaluates the eigenfunctions in three independent
//! representations, and cross-checks everything against a direct Numerov
//! integration oracle that never touches the Gamma machinery.
//!
//! Modules:
//! * [`special`] — gamma / digamma / Kummer / Tricomi / Whittaker.
//! * [`model`] — parameters, derived quantities, regime classification.
//! * [`spectrum`] — the eigenvalue equation and its solver.
//! * [`wavefn`] — radial wavefunctions and the closed-form normalization.
//! * [`oracle`] — Numerov shooting, quadrature, boundary-coefficient fits.
//! * [`verify`] — the f64 verification suite run by tests and the CLI.
//!
//! Everything numeric is generic over the scalar type through
//! [`real::Real`] (`f32` or `f64`); the stated accuracy contracts and the
//! verification suite are for `f64`, aliased below.

pub mod model;
pub mod oracle;
pub mod real;
pub mod special;
pub mod spectrum;
pub mod verify;
pub mod wavefn;

pub use real::Real;

/// `f64` instantiations of the core types.
pub type PhysicalParams64 = model::PhysicalParams<f64>;
pub type DerivedParams64 = model::DerivedParams<f64>;
pub type ExtensionParameter64 = model::ExtensionParameter<f64>;
pub type SpectralProblem64 = spectrum::SpectralProblem<f64>;
pub type EnergyLevel64 = spectrum::EnergyLevel<f64>;
pub type SpectrumSolution64 = spectrum::SpectrumSolution<f64>;
pub type RadialWavefunction64 = wavefn::RadialWavefunction<f64>;
pub type RadialGrid64 = oracle::RadialGrid<f64>;
pub type BoundarySeries64 = oracle::BoundarySeries<f64>;
