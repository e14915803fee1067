//! The order-`n` rotation group of the plane, its action and orbits, the
//! period/frequency rescaling it forces on the oscillator, and invariance
//! tests and projections on holomorphic states.
//!
//! Invariance of a power series under rotation by `2 pi / n` is equivalent to
//! its coefficients being supported on indices divisible by `n`; the
//! coefficient-side checks here are exact index arithmetic. The grid form
//! exists to cross-validate that criterion on sampled functions.

use crate::bargmann::HolomorphicState;
use crate::phase_space::OscillatorParams;
use crate::quadrature::GridFunction;
use crate::{Complex, Error, Result};
use std::f64::consts::TAU;

/// Tolerance under which a real exponent counts as an integer.
pub const INTEGER_TOLERANCE: f64 = 1e-12;

/// Default tolerance for grid-sampled invariance checks: comfortably above
/// quadrature rounding, far below any true symmetry breaking.
pub const GRID_INVARIANCE_TOL: f64 = 1e-10;

/// The cyclic group of rotations through multiples of `2 pi / n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicGroup {
    n: usize,
}

impl CyclicGroup {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "cyclic group order must be at least 1".into(),
            ));
        }
        Ok(Self { n })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// The generating primitive root `e^{2 pi i / n}`.
    pub fn root(&self) -> Complex {
        Complex::from_polar(1.0, TAU / self.n as f64)
    }

    /// Rotates `z` by `2 pi ell / n`; `ell` is taken modulo the order. The
    /// phase is formed directly from the reduced exponent, so the modulus is
    /// preserved to rounding for any `ell`.
    pub fn act(&self, ell: i64, z: Complex) -> Complex {
        let reduced = ell.rem_euclid(self.n as i64) as f64;
        Complex::from_polar(1.0, TAU * reduced / self.n as f64) * z
    }

    /// The full orbit `[z, zeta z, ..., zeta^{n-1} z]`.
    pub fn orbit(&self, z: Complex) -> Vec<Complex> {
        (0..self.n as i64).map(|ell| self.act(ell, z)).collect()
    }
}

/// Rescaled period, frequency, and energy of the oscillator once rotational
/// invariance of order `n` is imposed: `tau_n = 2 pi / (omega n)`,
/// `omega_n = omega n`, `E_n = hbar omega n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodScaling {
    pub period: f64,
    pub omega: f64,
    pub energy: f64,
    pub hbar: f64,
}

pub fn invariant_period(params: &OscillatorParams, n: usize) -> PeriodScaling {
    let omega_n = params.omega() * n as f64;
    PeriodScaling {
        period: TAU / omega_n,
        omega: omega_n,
        energy: params.hbar() * omega_n,
        hbar: params.hbar(),
    }
}

/// Symmetry/branch exponent of a cone: either an integer order `n >= 1` or a
/// positive non-integer exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConeIndex {
    Integer(usize),
    Fractional(f64),
}

impl ConeIndex {
    pub fn integer(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "integer cone index must be at least 1; the order-0 point space \
                 is represented by the constant state"
                    .into(),
            ));
        }
        Ok(Self::Integer(n))
    }

    /// A positive exponent that is not within [`INTEGER_TOLERANCE`] of an
    /// integer; integer values must use [`ConeIndex::integer`].
    pub fn fractional(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::NonFinite("gamma"));
        }
        if gamma <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "cone exponent must be positive, got {gamma}"
            )));
        }
        if (gamma - gamma.round()).abs() <= INTEGER_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "exponent {gamma} is an integer within {INTEGER_TOLERANCE:e}; \
                 use the integer constructor"
            )));
        }
        Ok(Self::Fractional(gamma))
    }

    /// The exponent as a real number.
    pub fn value(&self) -> f64 {
        match self {
            Self::Integer(n) => *n as f64,
            Self::Fractional(g) => *g,
        }
    }

    pub fn as_integer(&self) -> Option<usize> {
        match self {
            Self::Integer(n) => Some(*n),
            Self::Fractional(_) => None,
        }
    }
}

/// Coefficient-side invariance: every coefficient whose index is not a
/// multiple of `n` must vanish within `tol`. Exact index arithmetic, no
/// sampling.
pub fn is_invariant_coeffs(state: &HolomorphicState, n: usize, tol: f64) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    if !tol.is_finite() || tol < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be finite and non-negative, got {tol}"
        )));
    }
    Ok(state
        .coeffs()
        .iter()
        .enumerate()
        .all(|(k, c)| k % n == 0 || c.norm() <= tol))
}

/// Grid-side invariance: `max |f(zeta z) - f(z)| <= tol` over the sample
/// grid. The grid must be closed under rotation by `2 pi / n`, which for a
/// uniform angular grid means `n` divides the angular node count.
pub fn is_invariant_grid(grid: &GridFunction, n: usize, tol: f64) -> Result<bool> {
    Ok(grid.max_rotation_defect(n)? <= tol)
}

/// Keeps the coefficients with index divisible by `n` and zeroes the rest.
/// Idempotent; the result is invariant with tolerance zero.
pub fn project_invariant(state: &HolomorphicState, n: usize) -> Result<HolomorphicState> {
    if n == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    let coeffs = state
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| if k % n == 0 { *c } else { Complex::new(0.0, 0.0) })
        .collect();
    HolomorphicState::new(coeffs)
}

/// True when the state is invariant under order `n` but under no larger
/// order up to its truncation. The same `tol` decides both sides.
pub fn is_maximally_invariant(state: &HolomorphicState, n: usize, tol: f64) -> Result<bool> {
    if !is_invariant_coeffs(state, n, tol)? {
        return Ok(false);
    }
    for m in (n + 1)..=state.truncation() {
        if is_invariant_coeffs(state, m, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}
