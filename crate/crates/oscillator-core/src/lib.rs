//! Classical and quantum harmonic-oscillator dynamics on the complex plane
//! and on its cyclic-quotient cones.
//!
//! The crate is organized around four layers:
//!
//! * [`phase_space`] — the oscillator on the plane: dimensionless coordinate,
//!   Hamiltonian, exact circular flow, and a Runge-Kutta cross-check
//!   integrator.
//! * [`cyclic`] — the order-`n` rotation group, its action and orbits,
//!   period/frequency rescaling under rotational invariance, and the
//!   projector that keeps only invariant coefficients of a state.
//! * [`orbifold`] — the degree-`n` branched covering `z -> z^n` (and its
//!   real-exponent extension), cone metrics, angle deficits, and the
//!   dynamics transported to cone coordinates.
//! * [`bargmann`] — holomorphic states with Gaussian-weighted inner product,
//!   the diagonal Hamiltonian operator and its spectrum, unitary evolution,
//!   and the multivalued eigenfunctions excluded from the state space.
//!
//! [`quadrature`] supplies the Gauss-Laguerre radial rule and the uniform
//! angular grid shared by the integral checks.
//!
//! With the default `parallel` feature the grid-heavy operations fan out over
//! rayon; every parallel path reduces its partial results in a fixed order,
//! so outputs are bit-identical to the sequential fallback.

pub mod bargmann;
pub mod cyclic;
mod error;
mod exec;
pub mod orbifold;
pub mod phase_space;
pub mod quadrature;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type Complex = num_complex::Complex64;
