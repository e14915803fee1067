//! The classical oscillator on the complex plane.
//!
//! A particle of mass `m` circling with angular frequency `omega` is
//! described by the dimensionless coordinate
//!
//! ```text
//! z = (x - i p / (m omega)) / r0,        r0^2 = 2 hbar / (m omega),
//! ```
//!
//! in which the Hamiltonian is `H = hbar omega |z|^2` and the equation of
//! motion `dz/dtau = i omega z` has the exact solution
//! `z(tau) = e^{i omega tau} z`. The Runge-Kutta integrator here exists as an
//! independent cross-check of that closed form, not as a production
//! propagator.

use crate::{Complex, Error, Result};
use std::f64::consts::TAU;

/// Physical constants of the oscillator plus the derived length scale `r0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    mass: f64,
    omega: f64,
    hbar: f64,
    r0: f64,
}

impl OscillatorParams {
    /// Builds a parameter set; all three constants must be finite and
    /// strictly positive. `r0` is derived as `sqrt(2 hbar / (mass omega))`.
    pub fn new(mass: f64, omega: f64, hbar: f64) -> Result<Self> {
        for (value, name) in [(mass, "mass"), (omega, "omega"), (hbar, "hbar")] {
            if !value.is_finite() {
                return Err(Error::NonFinite(name));
            }
            if value <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        let r0 = (2.0 * hbar / (mass * omega)).sqrt();
        Ok(Self {
            mass,
            omega,
            hbar,
            r0,
        })
    }

    /// Natural units `m = omega = hbar = 1` (so `r0 = sqrt(2)`); the default
    /// for tests and experiments.
    pub fn natural() -> Self {
        Self::new(1.0, 1.0, 1.0).expect("unit parameters are valid")
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    /// Maps position and momentum to the dimensionless coordinate
    /// `z = (x - i p/(m omega)) / r0`.
    pub fn to_dimensionless(&self, x: f64, p: f64) -> Result<PhasePoint> {
        if !x.is_finite() {
            return Err(Error::NonFinite("x"));
        }
        if !p.is_finite() {
            return Err(Error::NonFinite("p"));
        }
        let z = Complex::new(x / self.r0, -p / (self.mass * self.omega * self.r0));
        Ok(PhasePoint::new(z))
    }

    /// Inverse of [`to_dimensionless`](Self::to_dimensionless).
    pub fn from_dimensionless(&self, point: PhasePoint) -> (f64, f64) {
        let z = point.z();
        let x = self.r0 * z.re;
        let p = -self.mass * self.omega * self.r0 * z.im;
        (x, p)
    }

    /// Energy `hbar omega |z|^2`.
    pub fn hamiltonian(&self, point: PhasePoint) -> f64 {
        self.hbar * self.omega * point.z().norm_sqr()
    }

    /// The same energy from the quadratic form `p^2/2m + m omega^2 x^2/2`;
    /// kept as an algebraically independent route for cross-checks.
    pub fn hamiltonian_xp(&self, x: f64, p: f64) -> f64 {
        p * p / (2.0 * self.mass) + 0.5 * self.mass * self.omega * self.omega * x * x
    }

    /// The holomorphic component `i omega z` of the Hamiltonian vector
    /// field; the antiholomorphic component is its conjugate.
    pub fn vector_field(&self, point: PhasePoint) -> Complex {
        Complex::I * self.omega * point.z()
    }

    /// Exact flow `z(tau) = e^{i omega tau} z`; preserves `|z|` up to
    /// rounding.
    pub fn exact_flow(&self, point: PhasePoint, tau: f64) -> PhasePoint {
        let rotation = Complex::from_polar(1.0, self.omega * tau);
        PhasePoint::new(rotation * point.z())
    }

    /// Classical fourth-order Runge-Kutta integration of
    /// `dz/dtau = i omega z`, recording every step. Global error is
    /// `O((tau/steps)^4)`; the exact flow is the oracle it converges to.
    pub fn integrate_flow(&self, point: PhasePoint, tau: f64, steps: usize) -> Result<Trajectory> {
        if steps == 0 {
            return Err(Error::ZeroSteps);
        }
        if !tau.is_finite() {
            return Err(Error::NonFinite("tau"));
        }
        let mut samples = Vec::with_capacity(steps + 1);
        samples.push((0.0, point));
        if tau == 0.0 {
            return Ok(Trajectory {
                params: *self,
                samples,
            });
        }
        let h = tau / steps as f64;
        let rhs = |z: Complex| Complex::I * self.omega * z;
        let mut z = point.z();
        for step in 1..=steps {
            let k1 = rhs(z);
            let k2 = rhs(z + 0.5 * h * k1);
            let k3 = rhs(z + 0.5 * h * k2);
            let k4 = rhs(z + h * k3);
            z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            samples.push((step as f64 * h, PhasePoint::new(z)));
        }
        Ok(Trajectory {
            params: *self,
            samples,
        })
    }
}

impl Default for OscillatorParams {
    fn default() -> Self {
        Self::natural()
    }
}

/// A point of the phase plane. Equality is defined on `z` alone; the polar
/// pieces are computed on demand rather than cached.
#[derive(Debug, Clone, Copy)]
pub struct PhasePoint {
    z: Complex,
}

impl PhasePoint {
    pub fn new(z: Complex) -> Self {
        Self { z }
    }

    pub fn from_polar(rho: f64, phi: f64) -> Self {
        Self {
            z: Complex::from_polar(rho, phi),
        }
    }

    pub fn z(&self) -> Complex {
        self.z
    }

    pub fn modulus(&self) -> f64 {
        self.z.norm()
    }

    /// Argument normalized to `[0, 2 pi)`.
    pub fn angle(&self) -> f64 {
        let phi = self.z.arg().rem_euclid(TAU);
        if phi == TAU {
            0.0
        } else {
            phi
        }
    }
}

impl PartialEq for PhasePoint {
    fn eq(&self, other: &Self) -> bool {
        self.z == other.z
    }
}

impl From<Complex> for PhasePoint {
    fn from(z: Complex) -> Self {
        Self::new(z)
    }
}

/// A recorded solution of the equation of motion: samples are ordered
/// strictly monotonically in the evolution parameter.
#[derive(Debug, Clone)]
pub struct Trajectory {
    params: OscillatorParams,
    samples: Vec<(f64, PhasePoint)>,
}

impl Trajectory {
    pub fn params(&self) -> &OscillatorParams {
        &self.params
    }

    pub fn samples(&self) -> &[(f64, PhasePoint)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn final_point(&self) -> PhasePoint {
        self.samples
            .last()
            .expect("trajectory holds at least the initial sample")
            .1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn params() -> OscillatorParams {
        OscillatorParams::natural()
    }

    #[test]
    fn r0_relation_holds_as_constructed() {
        let p = OscillatorParams::new(2.0, 3.0, 0.7).unwrap();
        let expected = 2.0 * p.hbar() / (p.mass() * p.omega());
        // One square root and one product: at most a couple of ulps.
        assert!((p.r0() * p.r0() - expected).abs() <= 4.0 * f64::EPSILON * expected);
    }

    #[test]
    fn rejects_nonpositive_and_nonfinite_parameters() {
        assert!(OscillatorParams::new(0.0, 1.0, 1.0).is_err());
        assert!(OscillatorParams::new(1.0, -1.0, 1.0).is_err());
        assert!(OscillatorParams::new(1.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn dimensionless_map_on_reference_inputs() {
        let p = params();
        // x = r0 on the position axis lands on z = 1.
        let z = p.to_dimensionless(p.r0(), 0.0).unwrap();
        assert!((z.z() - Complex::new(1.0, 0.0)).norm() < TOL);
        // The origin is fixed.
        let z = p.to_dimensionless(0.0, 0.0).unwrap();
        assert_eq!(z.z(), Complex::new(0.0, 0.0));
        // Hand substitution: x = 0, p = -m omega r0 gives z = i.
        let z = p
            .to_dimensionless(0.0, -p.mass() * p.omega() * p.r0())
            .unwrap();
        assert!((z.z() - Complex::I).norm() < TOL);
    }

    #[test]
    fn dimensionless_map_rejects_nonfinite() {
        let p = params();
        assert!(matches!(
            p.to_dimensionless(f64::INFINITY, 0.0),
            Err(Error::NonFinite("x"))
        ));
        assert!(matches!(
            p.to_dimensionless(0.0, f64::NAN),
            Err(Error::NonFinite("p"))
        ));
    }

    #[test]
    fn from_dimensionless_inverts_reference_points() {
        let p = OscillatorParams::new(1.3, 0.8, 2.0).unwrap();
        let (x, pm) = p.from_dimensionless(PhasePoint::new(Complex::new(1.0, 0.0)));
        assert!((x - p.r0()).abs() < TOL && pm.abs() < TOL);
        let (x, pm) = p.from_dimensionless(PhasePoint::new(Complex::I));
        assert!(x.abs() < TOL);
        assert!((pm + p.mass() * p.omega() * p.r0()).abs() < TOL);
    }

    #[test]
    fn round_trip_is_identity_in_both_directions() {
        let p = OscillatorParams::new(0.9, 2.3, 1.7).unwrap();
        for z in [
            Complex::new(0.3, -1.2),
            Complex::new(-2.0, 0.1),
            Complex::new(5.0, 5.0),
        ] {
            let (x, pm) = p.from_dimensionless(PhasePoint::new(z));
            let back = p.to_dimensionless(x, pm).unwrap();
            assert!((back.z() - z).norm() <= 1e-14 * z.norm());
        }
    }

    #[test]
    fn hamiltonian_reference_values() {
        let p = params();
        // |z| = 1 carries energy hbar omega.
        assert!((p.hamiltonian(PhasePoint::new(Complex::new(1.0, 0.0))) - 1.0).abs() < TOL);
        assert_eq!(p.hamiltonian(PhasePoint::new(Complex::new(0.0, 0.0))), 0.0);
        // |z|^2 = 2.5 carries energy 2.5 hbar omega at any angle.
        for theta in [0.0, 0.7, 4.0] {
            let z = PhasePoint::from_polar(2.5f64.sqrt(), theta);
            assert!((p.hamiltonian(z) - 2.5).abs() < 1e-12);
        }
    }

    #[test]
    fn hamiltonian_forms_agree() {
        let p = OscillatorParams::new(1.7, 0.6, 1.1).unwrap();
        for (x, pm) in [(0.4, -0.9), (2.0, 0.0), (-1.3, 3.0)] {
            let z = p.to_dimensionless(x, pm).unwrap();
            let a = p.hamiltonian(z);
            let b = p.hamiltonian_xp(x, pm);
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }

    #[test]
    fn vector_field_reference_values() {
        let p = params();
        let v = p.vector_field(PhasePoint::new(Complex::new(1.0, 0.0)));
        assert!((v - Complex::I).norm() < TOL);
        assert_eq!(
            p.vector_field(PhasePoint::new(Complex::new(0.0, 0.0))),
            Complex::new(0.0, 0.0)
        );
    }

    #[test]
    fn vector_field_is_flow_derivative() {
        // Richardson-extrapolated forward differences of the exact flow
        // converge to i omega z with first-order truncation per difference.
        let p = OscillatorParams::new(1.0, 0.7, 1.0).unwrap();
        let z = PhasePoint::new(Complex::new(1.0, 2.0));
        let diff = |h: f64| (p.exact_flow(z, h).z() - z.z()) / h;
        let d1 = diff(1e-6);
        let d2 = diff(5e-7);
        let richardson = 2.0 * d2 - d1;
        assert!((richardson - p.vector_field(z)).norm() < 1e-9);
    }

    #[test]
    fn exact_flow_periods_and_phases() {
        let p = params();
        let z1 = PhasePoint::new(Complex::new(1.0, 0.0));
        // Full revolution returns to the start.
        let back = p.exact_flow(z1, TAU / p.omega());
        assert!((back.z() - z1.z()).norm() < TOL);
        // Half revolution lands on -1.
        let half = p.exact_flow(z1, std::f64::consts::PI / p.omega());
        assert!((half.z() + Complex::new(1.0, 0.0)).norm() < TOL);
        // Quarter revolution of 2i lands on -2.
        let quarter = p.exact_flow(
            PhasePoint::new(Complex::new(0.0, 2.0)),
            std::f64::consts::FRAC_PI_2 / p.omega(),
        );
        assert!((quarter.z() - Complex::new(-2.0, 0.0)).norm() < TOL);
    }

    #[test]
    fn integrator_matches_exact_flow() {
        let p = params();
        let z = PhasePoint::new(Complex::new(1.0, 0.0));
        let traj = p.integrate_flow(z, TAU, 1000).unwrap();
        assert!((traj.final_point().z() - Complex::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn integrator_zero_time_and_zero_steps() {
        let p = params();
        let z = PhasePoint::new(Complex::new(0.4, 0.2));
        let traj = p.integrate_flow(z, 0.0, 100).unwrap();
        assert_eq!(traj.len(), 1);
        assert_eq!(traj.samples()[0].0, 0.0);
        assert_eq!(traj.samples()[0].1, z);
        assert!(matches!(
            p.integrate_flow(z, 1.0, 0),
            Err(Error::ZeroSteps)
        ));
    }

    #[test]
    fn integrator_has_fourth_order_convergence() {
        let p = params();
        let z = PhasePoint::new(Complex::new(1.0, 0.0));
        let exact = p.exact_flow(z, TAU).z();
        let err = |steps: usize| {
            (p.integrate_flow(z, TAU, steps).unwrap().final_point().z() - exact).norm()
        };
        let order = (err(50) / err(100)).log2();
        assert!(
            (3.9..=4.1).contains(&order),
            "measured order {order} outside [3.9, 4.1]"
        );
    }

    #[test]
    fn trajectory_times_strictly_increase() {
        let p = params();
        let traj = p
            .integrate_flow(PhasePoint::new(Complex::new(1.0, 1.0)), 3.0, 7)
            .unwrap();
        for pair in traj.samples().windows(2) {
            assert!(pair[0].0 < pair[1].0);
        }
    }

    #[test]
    fn phase_point_angle_normalization() {
        let z = PhasePoint::new(Complex::new(0.0, -1.0));
        assert!((z.angle() - 3.0 * std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        let w = PhasePoint::new(Complex::new(1.0, 0.0));
        assert_eq!(w.angle(), 0.0);
    }
}
