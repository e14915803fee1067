//! Holomorphic states of the quantum oscillator.
//!
//! States live in the space of holomorphic functions square-integrable
//! against the Gaussian weight `e^{-|z|^2}`. The monomials `z^n` are
//! orthogonal with squared norm `n!`, so internally a state stores
//! coefficients in the normalized convention
//!
//! ```text
//! psi(z) = sum_n c_n z^n / sqrt(n!),       ||psi||^2 = sum_n |c_n|^2.
//! ```
//!
//! The measure carries a `1/pi` so that the constant function has unit norm;
//! that normalization is forced by requiring the monomial norms `n!` to hold
//! down to `n = 0`, and the raw-monomial quadrature mode reproduces those
//! `n!` literally.
//!
//! The Hamiltonian operator `hbar omega (z d/dz + 1/2)` is diagonal on
//! monomials with eigenvalues `hbar omega (n + 1/2)`; evolution multiplies
//! `c_n` by `e^{i omega (n + 1/2) tau}`. Functions `z^gamma` with non-integer
//! `gamma` satisfy the same eigenvalue relation with `n` replaced by `gamma`
//! but are multivalued across their branch cut and therefore excluded from
//! the state space; [`hilbert_membership`] reports the branch jump as the
//! obstruction witness.

use crate::cyclic::INTEGER_TOLERANCE;
use crate::orbifold::{self, ConeSpace};
use crate::phase_space::OscillatorParams;
use crate::quadrature::PolarQuadrature;
use crate::{Complex, Error, Result};

/// Exact factorial in `f64` (exact as an integer for `n <= 22`, correctly
/// rounded far beyond any truncation used here).
pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product::<f64>().max(1.0)
}

/// `hbar omega (n + 1/2)`, the energy of the `n`-th level.
pub fn level_energy(n: usize, params: &OscillatorParams) -> f64 {
    params.hbar() * params.omega() * (n as f64 + 0.5)
}

/// `hbar omega (gamma + 1/2)`, the eigenvalue of the multivalued state
/// `z^gamma`.
pub fn fractional_energy(gamma: f64, params: &OscillatorParams) -> f64 {
    params.hbar() * params.omega() * (gamma + 0.5)
}

/// A truncated holomorphic state in the normalized coefficient convention.
#[derive(Debug, Clone, PartialEq)]
pub struct HolomorphicState {
    coeffs: Vec<Complex>,
}

impl HolomorphicState {
    /// Wraps a coefficient vector `(c_0, ..., c_N)`; all entries must be
    /// finite and the vector non-empty.
    pub fn new(coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "state needs at least the constant coefficient".into(),
            ));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("state coefficient"));
        }
        Ok(Self { coeffs })
    }

    /// The basis state with `c_n = 1` and truncation `N`.
    pub fn basis(n: usize, truncation: usize) -> Result<Self> {
        if n > truncation {
            return Err(Error::DegreeExceedsTruncation {
                degree: n,
                truncation,
            });
        }
        let mut coeffs = vec![Complex::new(0.0, 0.0); truncation + 1];
        coeffs[n] = Complex::new(1.0, 0.0);
        Ok(Self { coeffs })
    }

    /// The constant state (order-0 component).
    pub fn vacuum(truncation: usize) -> Self {
        Self::basis(0, truncation).expect("degree 0 never exceeds the truncation")
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Maximum representable degree `N`.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(Complex::norm_sqr).sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(Self {
            coeffs: self.coeffs.iter().map(|c| c / norm).collect(),
        })
    }

    /// Evaluates `sum_n c_n z^n / sqrt(n!)` by Horner on the rescaled
    /// coefficients.
    pub fn evaluate(&self, z: Complex) -> Complex {
        let mut acc = Complex::new(0.0, 0.0);
        for (n, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * z + c / factorial(n).sqrt();
        }
        acc
    }

    /// Inner product `sum_n conj(a_n) b_n`, conjugate-linear in `self`;
    /// mismatched truncations are zero-padded.
    pub fn inner_product(&self, other: &Self) -> Complex {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Applies the Hamiltonian: `c_n -> hbar omega (n + 1/2) c_n`.
    pub fn apply_hamiltonian(&self, params: &OscillatorParams) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * level_energy(n, params))
                .collect(),
        }
    }

    /// Unitary evolution: `c_n -> e^{i omega (n + 1/2) tau} c_n`. The
    /// modulus of every coefficient, hence the norm, is preserved to
    /// rounding; after a full period `2 pi / omega` the state returns to
    /// itself up to the overall half-quantum phase.
    pub fn evolve(&self, tau: f64, params: &OscillatorParams) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| {
                    c * Complex::from_polar(1.0, params.omega() * (n as f64 + 0.5) * tau)
                })
                .collect(),
        }
    }

    /// Spectral decomposition `(n, hbar omega (n + 1/2), |c_n|^2 / ||psi||^2)`
    /// for every level up to the truncation. The zero state is rejected.
    pub fn energy_probabilities(&self, params: &OscillatorParams) -> Result<Vec<SpectralLine>> {
        let total = self.norm_sqr();
        if total == 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| SpectralLine {
                index: n,
                energy: level_energy(n, params),
                probability: c.norm_sqr() / total,
            })
            .collect())
    }
}

/// One line of the energy spectrum of a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralLine {
    pub index: usize,
    pub energy: f64,
    pub probability: f64,
}

/// Gaussian-weighted inner product evaluated by sampling both states on the
/// polar grid and integrating; agrees with
/// [`HolomorphicState::inner_product`] to quadrature rounding because the
/// rule is exact on the polynomial integrand.
pub fn inner_product_quadrature(
    a: &HolomorphicState,
    b: &HolomorphicState,
    quad: &PolarQuadrature,
) -> Result<Complex> {
    quad.spec()
        .require_degree(a.truncation().max(b.truncation()))?;
    let ga = quad.sample(|z| a.evaluate(z));
    let gb = quad.sample(|z| b.evaluate(z));
    quad.integrate_product(&ga, &gb)
}

/// Raw-monomial quadrature `<z^n, z^m>`: `n!` on the diagonal, exactly zero
/// off it (see [`PolarQuadrature::monomial_inner_product`]).
pub fn monomial_inner_product_quadrature(
    n: usize,
    m: usize,
    quad: &PolarQuadrature,
) -> Result<f64> {
    quad.monomial_inner_product(n, m)
}

/// Maximum residual of `hbar omega (z psi' + psi/2) = E psi` over the probe
/// points for the covering-map eigenfunction `z^nu` of `cone`, with the
/// derivative taken by radial central differences of step `h` (a radial step
/// never crosses the branch cut). The truncation error is `O(h^2)`.
///
/// Probes at the origin or on the branch cut are rejected, as is a step that
/// reaches the origin.
pub fn hamiltonian_eigen_residual(
    cone: &ConeSpace,
    probes: &[Complex],
    h: f64,
    params: &OscillatorParams,
) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "difference step must be positive and finite, got {h}"
        )));
    }
    let nu = cone.index().value();
    let energy = params.hbar() * params.omega() * (nu + 0.5);
    let mut worst = 0.0f64;
    for &z in probes {
        let rho = z.norm();
        if rho == 0.0 || h >= rho {
            return Err(Error::ProbeOnBranchCut);
        }
        let angular_offset = (z.arg() - cone.branch_cut_angle()).rem_euclid(std::f64::consts::TAU);
        if angular_offset < 1e-12 || std::f64::consts::TAU - angular_offset < 1e-12 {
            return Err(Error::ProbeOnBranchCut);
        }
        let direction = z / rho;
        let step = h * direction;
        let derivative =
            (cone.covering_map(z + step) - cone.covering_map(z - step)) / (2.0 * step);
        let psi = cone.covering_map(z);
        let residual = params.hbar() * params.omega() * (z * derivative + 0.5 * psi) - energy * psi;
        worst = worst.max(residual.norm());
    }
    Ok(worst)
}

/// Whether `z^gamma` belongs to the holomorphic state space, together with
/// the branch jump at unit radius as the obstruction witness: the jump
/// vanishes exactly when `gamma` is an integer, and only then is the
/// function single-valued.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub member: bool,
    pub branch_jump: f64,
}

pub fn hilbert_membership(gamma: f64) -> Result<Membership> {
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "exponent must be positive and finite, got {gamma}"
        )));
    }
    Ok(Membership {
        member: (gamma - gamma.round()).abs() <= INTEGER_TOLERANCE,
        branch_jump: orbifold::branch_discontinuity(gamma, 1.0, 0.0)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::ConeIndex;
    use crate::quadrature::QuadratureSpec;
    use std::f64::consts::{PI, TAU};

    fn params() -> OscillatorParams {
        OscillatorParams::natural()
    }

    #[test]
    fn basis_states_are_orthonormal_analytically() {
        let a = HolomorphicState::basis(3, 6).unwrap();
        let b = HolomorphicState::basis(3, 6).unwrap();
        assert_eq!(a.inner_product(&b), Complex::new(1.0, 0.0));
        let c = HolomorphicState::basis(1, 6).unwrap();
        let d = HolomorphicState::basis(2, 6).unwrap();
        assert_eq!(c.inner_product(&d), Complex::new(0.0, 0.0));
    }

    #[test]
    fn pythagorean_coefficients_have_unit_norm() {
        let state =
            HolomorphicState::new(vec![Complex::new(0.6, 0.0), Complex::new(0.0, 0.8)]).unwrap();
        assert!((state.inner_product(&state).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn state_validation() {
        assert!(HolomorphicState::new(vec![]).is_err());
        assert!(HolomorphicState::new(vec![Complex::new(f64::NAN, 0.0)]).is_err());
        assert!(matches!(
            HolomorphicState::basis(5, 4),
            Err(Error::DegreeExceedsTruncation {
                degree: 5,
                truncation: 4
            })
        ));
    }

    #[test]
    fn evaluation_matches_direct_sum() {
        let state = HolomorphicState::new(vec![
            Complex::new(0.5, -0.2),
            Complex::new(1.0, 0.3),
            Complex::new(-0.7, 0.0),
        ])
        .unwrap();
        let z = Complex::new(0.4, 0.9);
        let direct = state.coeffs()[0]
            + state.coeffs()[1] * z
            + state.coeffs()[2] * z * z / 2.0f64.sqrt();
        assert!((state.evaluate(z) - direct).norm() < 1e-14);
    }

    #[test]
    fn quadrature_reproduces_monomial_norms() {
        let quad = PolarQuadrature::new(QuadratureSpec::for_truncation(5)).unwrap();
        let n3 = monomial_inner_product_quadrature(3, 3, &quad).unwrap();
        assert!((n3 - 6.0).abs() < 1e-12);
        let n0 = monomial_inner_product_quadrature(0, 0, &quad).unwrap();
        assert!((n0 - 1.0).abs() < 1e-14);
        let off = monomial_inner_product_quadrature(2, 5, &quad).unwrap();
        assert!(off.abs() < 1e-12);
    }

    #[test]
    fn quadrature_agrees_with_analytic_inner_product() {
        let quad = PolarQuadrature::new(QuadratureSpec::for_truncation(8)).unwrap();
        let a = HolomorphicState::new(
            (0..9)
                .map(|k| Complex::new(0.3 * k as f64 - 1.0, 0.1 * k as f64))
                .collect(),
        )
        .unwrap()
        .normalized()
        .unwrap();
        let b = HolomorphicState::new(
            (0..9)
                .map(|k| Complex::new((k as f64).sin(), (k as f64).cos()))
                .collect(),
        )
        .unwrap()
        .normalized()
        .unwrap();
        let q = inner_product_quadrature(&a, &b, &quad).unwrap();
        let exact = a.inner_product(&b);
        assert!((q - exact).norm() < 1e-12);
    }

    #[test]
    fn quadrature_rejects_underresolved_states() {
        let quad = PolarQuadrature::new(QuadratureSpec::for_truncation(4)).unwrap();
        let a = HolomorphicState::basis(0, 9).unwrap();
        assert!(matches!(
            inner_product_quadrature(&a, &a, &quad),
            Err(Error::QuadratureUnderresolved { .. })
        ));
    }

    #[test]
    fn hamiltonian_eigenvalues_are_exact() {
        let p = params();
        let ground = HolomorphicState::basis(0, 4).unwrap();
        let acted = ground.apply_hamiltonian(&p);
        assert_eq!(acted.coeffs()[0], Complex::new(0.5, 0.0));

        let seven = HolomorphicState::basis(7, 8).unwrap();
        let acted = seven.apply_hamiltonian(&p);
        assert_eq!(acted.coeffs()[7], Complex::new(7.5, 0.0));
    }

    #[test]
    fn hamiltonian_is_linear() {
        let p = params();
        let a = HolomorphicState::new(vec![Complex::new(1.0, 2.0), Complex::new(0.0, -1.0)])
            .unwrap();
        let b = HolomorphicState::new(vec![Complex::new(-0.5, 0.0), Complex::new(2.0, 2.0)])
            .unwrap();
        let (alpha, beta) = (Complex::new(0.3, -0.4), Complex::new(1.5, 0.2));
        let combined = HolomorphicState::new(
            a.coeffs()
                .iter()
                .zip(b.coeffs())
                .map(|(x, y)| alpha * x + beta * y)
                .collect(),
        )
        .unwrap();
        let lhs = combined.apply_hamiltonian(&p);
        let rhs: Vec<Complex> = a
            .apply_hamiltonian(&p)
            .coeffs()
            .iter()
            .zip(b.apply_hamiltonian(&p).coeffs())
            .map(|(x, y)| alpha * x + beta * y)
            .collect();
        for (l, r) in lhs.coeffs().iter().zip(&rhs) {
            assert!((l - r).norm() <= 1e-14 * r.norm().max(1.0));
        }
    }

    #[test]
    fn zero_point_offset_is_exactly_half() {
        let p = params();
        for n in 0..=32 {
            let state = HolomorphicState::basis(n, 32).unwrap();
            let acted = state.apply_hamiltonian(&p);
            let ratio = acted.coeffs()[n].re / (p.hbar() * p.omega());
            assert_eq!(ratio - n as f64, 0.5);
        }
    }

    #[test]
    fn evolution_identity_and_parseval() {
        let p = params();
        let state = HolomorphicState::new(vec![
            Complex::new(0.3, 0.4),
            Complex::new(-0.5, 0.1),
            Complex::new(0.0, 0.7),
        ])
        .unwrap();
        let same = state.evolve(0.0, &p);
        for (a, b) in state.coeffs().iter().zip(same.coeffs()) {
            assert!((a - b).norm() < 1e-15);
        }
        let later = state.evolve(17.3, &p);
        assert!((later.norm_sqr() - state.norm_sqr()).abs() < 1e-14);
    }

    #[test]
    fn evolution_phase_after_reduced_period() {
        // After tau = 2 pi / (omega n) the degree-n content is back while
        // the observable coefficient phase advances by the half-quantum
        // factor e^{2 pi i (n + 1/2)/n}.
        let p = params();
        for n in [1usize, 2, 5] {
            let state = HolomorphicState::basis(n, 8).unwrap();
            let tau = TAU / (p.omega() * n as f64);
            let evolved = state.evolve(tau, &p);
            let expected = Complex::from_polar(1.0, TAU * (n as f64 + 0.5) / n as f64);
            assert!((evolved.coeffs()[n] - expected).norm() < 1e-13);
        }
    }

    #[test]
    fn evolution_matches_exponentiated_hamiltonian() {
        let p = OscillatorParams::new(1.0, 0.7, 2.0).unwrap();
        let state = HolomorphicState::new(vec![
            Complex::new(0.2, -0.1),
            Complex::new(0.9, 0.3),
            Complex::new(-0.4, 0.6),
            Complex::new(0.0, -1.2),
        ])
        .unwrap();
        let tau = 3.7;
        let evolved = state.evolve(tau, &p);
        let energies = state.apply_hamiltonian(&p);
        for (n, (c, hc)) in state.coeffs().iter().zip(energies.coeffs()).enumerate() {
            // Eigenvalue recovered from the operator action, then
            // exponentiated: e^{i tau E_n / hbar} c_n.
            let energy = if c.norm() > 0.0 {
                (hc / c).re
            } else {
                level_energy(n, &p)
            };
            let expected = c * Complex::from_polar(1.0, tau * energy / p.hbar());
            assert!((evolved.coeffs()[n] - expected).norm() < 1e-13);
        }
    }

    #[test]
    fn probabilities_reference_cases() {
        let p = params();
        let two = HolomorphicState::basis(2, 5).unwrap();
        let lines = two.energy_probabilities(&p).unwrap();
        assert_eq!(lines.len(), 6);
        assert!((lines[2].energy - 2.5).abs() < 1e-15);
        assert!((lines[2].probability - 1.0).abs() < 1e-15);
        assert!(lines
            .iter()
            .filter(|l| l.index != 2)
            .all(|l| l.probability == 0.0));

        let equal = HolomorphicState::new(vec![
            Complex::new(1.0 / 2.0f64.sqrt(), 0.0),
            Complex::new(1.0 / 2.0f64.sqrt(), 0.0),
        ])
        .unwrap();
        let lines = equal.energy_probabilities(&p).unwrap();
        assert!((lines[0].probability - 0.5).abs() < 1e-15);
        assert!((lines[1].probability - 0.5).abs() < 1e-15);
        assert!((lines[0].energy - 0.5).abs() < 1e-15);
        assert!((lines[1].energy - 1.5).abs() < 1e-15);

        // Hand normalization of (1, 2i): probabilities 1/5 and 4/5.
        let state =
            HolomorphicState::new(vec![Complex::new(1.0, 0.0), Complex::new(0.0, 2.0)]).unwrap();
        let lines = state.energy_probabilities(&p).unwrap();
        assert!((lines[0].probability - 0.2).abs() < 1e-15);
        assert!((lines[1].probability - 0.8).abs() < 1e-15);
    }

    #[test]
    fn probabilities_reject_zero_state() {
        let zero = HolomorphicState::new(vec![Complex::new(0.0, 0.0); 3]).unwrap();
        assert!(matches!(
            zero.energy_probabilities(&params()),
            Err(Error::ZeroState)
        ));
    }

    #[test]
    fn eigen_residual_integer_exponent() {
        let cone = ConeSpace::new(ConeIndex::integer(3).unwrap());
        let probes = [Complex::from_polar(1.5, PI / 2.0), Complex::from_polar(0.8, 2.0)];
        let r = hamiltonian_eigen_residual(&cone, &probes, 1e-5, &params()).unwrap();
        assert!(r < 1e-9, "integer residual {r:e}");
    }

    #[test]
    fn eigen_residual_fractional_exponent() {
        let cone = ConeSpace::new(ConeIndex::fractional(2.5).unwrap());
        let probes = [Complex::from_polar(1.5, PI / 2.0)];
        let r = hamiltonian_eigen_residual(&cone, &probes, 1e-5, &params()).unwrap();
        assert!(r < 1e-6, "fractional residual {r:e}");
    }

    #[test]
    fn eigen_residual_against_analytic_derivative() {
        // Independent oracle: with the closed-form derivative
        // gamma z^{gamma-1} the residual collapses to rounding.
        let p = params();
        let gamma = 2.5;
        let cone = ConeSpace::new(ConeIndex::fractional(gamma).unwrap());
        let z = Complex::from_polar(1.5, PI / 2.0);
        let psi = cone.covering_map(z);
        let lower = ConeSpace::new(ConeIndex::fractional(gamma - 1.0).unwrap());
        let derivative = gamma * lower.covering_map(z);
        let residual = (p.hbar() * p.omega() * (z * derivative + 0.5 * psi)
            - fractional_energy(gamma, &p) * psi)
            .norm();
        assert!(residual < 1e-12, "oracle residual {residual:e}");
    }

    #[test]
    fn eigen_residual_is_second_order_in_step() {
        let cone = ConeSpace::new(ConeIndex::fractional(2.5).unwrap());
        let probes = [Complex::from_polar(1.5, PI / 2.0)];
        let p = params();
        let coarse = hamiltonian_eigen_residual(&cone, &probes, 1e-2, &p).unwrap();
        let fine = hamiltonian_eigen_residual(&cone, &probes, 5e-3, &p).unwrap();
        let order = (coarse / fine).log2();
        assert!(
            (1.9..=2.1).contains(&order),
            "measured order {order} outside [1.9, 2.1]"
        );
    }

    #[test]
    fn eigen_residual_rejects_bad_probes() {
        let cone = ConeSpace::new(ConeIndex::fractional(0.5).unwrap());
        let p = params();
        assert!(matches!(
            hamiltonian_eigen_residual(&cone, &[Complex::new(0.0, 0.0)], 1e-5, &p),
            Err(Error::ProbeOnBranchCut)
        ));
        // On the cut (positive real axis).
        assert!(matches!(
            hamiltonian_eigen_residual(&cone, &[Complex::new(1.0, 0.0)], 1e-5, &p),
            Err(Error::ProbeOnBranchCut)
        ));
        // Step reaching past the origin.
        assert!(hamiltonian_eigen_residual(&cone, &[Complex::new(0.0, 1e-6)], 1e-5, &p).is_err());
    }

    #[test]
    fn membership_reference_cases() {
        let m = hilbert_membership(4.0).unwrap();
        assert!(m.member);
        assert!(m.branch_jump < 1e-12);

        let m = hilbert_membership(0.5).unwrap();
        assert!(!m.member);
        assert!((m.branch_jump - 2.0).abs() < 1e-12);

        // Within the integer tolerance.
        let m = hilbert_membership(7.0 + 1e-15).unwrap();
        assert!(m.member);

        assert!(hilbert_membership(-2.0).is_err());
    }
}
