//! The branched covering `z -> z^nu`, cone metrics, and dynamics in cone
//! coordinates.
//!
//! For an integer index `n` the map is the degree-`n` covering of the plane
//! onto the quotient cone with apex angle `2 pi / n`; the fundamental sector
//! is `arg z in [0, 2 pi / n)`. For a positive non-integer exponent the map
//! `exp(gamma log z)` is multivalued and a branch cut (default: the positive
//! real axis) selects a single-valued determination. On the cut itself the
//! value is taken from the counterclockwise side.
//!
//! The restricted flat metric in cone coordinates is conformally flat with
//! factor `(1/nu^2) rho_nu^{2(1-nu)/nu}`, `rho_nu = rho^nu`. The exponent
//! follows from `d(rho^nu) = nu rho^{nu-1} drho`; the module tests pin the
//! identity between this form and the direct form
//! `drho^2 + (rho^2/nu^2) dphi_nu^2` numerically.

use crate::cyclic::ConeIndex;
use crate::{Complex, Error, Result};
use std::f64::consts::TAU;

/// A cone together with the branch-cut location used by its inverse or
/// fractional covering map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeSpace {
    index: ConeIndex,
    branch_cut_angle: f64,
}

impl ConeSpace {
    /// Cone with the cut on the positive real axis.
    pub fn new(index: ConeIndex) -> Self {
        Self {
            index,
            branch_cut_angle: 0.0,
        }
    }

    /// Cone with the cut at the given angle, normalized into `[0, 2 pi)`.
    pub fn with_branch_cut(index: ConeIndex, angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::NonFinite("branch cut angle"));
        }
        let normalized = angle.rem_euclid(TAU);
        let normalized = if normalized == TAU { 0.0 } else { normalized };
        Ok(Self {
            index,
            branch_cut_angle: normalized,
        })
    }

    pub fn index(&self) -> ConeIndex {
        self.index
    }

    pub fn branch_cut_angle(&self) -> f64 {
        self.branch_cut_angle
    }

    /// Apex opening `2 pi / nu`.
    pub fn cone_angle(&self) -> f64 {
        TAU / self.index.value()
    }

    /// Argument of `z` referred to the cut: lies in `[cut, cut + 2 pi)`,
    /// taking the counterclockwise limit on the cut itself.
    fn branch_angle(&self, z: Complex) -> f64 {
        let raw = (z.arg() - self.branch_cut_angle).rem_euclid(TAU);
        let raw = if raw == TAU { 0.0 } else { raw };
        self.branch_cut_angle + raw
    }

    /// The covering map on the principal branch: `z^n` for an integer index
    /// (entire, branch-independent), `exp(gamma log z)` with the cut-selected
    /// logarithm otherwise. `0` maps to `0`.
    pub fn covering_map(&self, z: Complex) -> Complex {
        self.covering_map_sheet(z, 0)
    }

    /// Covering map on a chosen branch: for a fractional exponent each unit
    /// of `sheet` multiplies the value by `e^{2 pi i gamma}`; an integer
    /// index is single-valued and ignores the sheet.
    pub fn covering_map_sheet(&self, z: Complex, sheet: i64) -> Complex {
        match self.index {
            ConeIndex::Integer(n) => z.powu(n as u32),
            ConeIndex::Fractional(gamma) => {
                if z.norm() == 0.0 {
                    return Complex::new(0.0, 0.0);
                }
                let theta = self.branch_angle(z) + TAU * sheet as f64;
                let log = Complex::new(z.norm().ln(), theta);
                (gamma * log).exp()
            }
        }
    }

    /// The `sheet`-th preimage of `psi` under `z -> z^n`: sheet 0 lies in
    /// the sector `[cut, cut + 2 pi / n)` and each following sheet is the
    /// previous one rotated by `2 pi / n`. The branch point `psi = 0` maps
    /// to `0` on every sheet. Integer index only.
    pub fn inverse_branch(&self, psi: Complex, sheet: usize) -> Result<Complex> {
        let n = self.index.as_integer().ok_or(Error::FractionalIndex)?;
        if sheet >= n {
            return Err(Error::SheetOutOfRange { sheet, degree: n });
        }
        if psi.norm() == 0.0 {
            return Ok(Complex::new(0.0, 0.0));
        }
        let base = n as f64 * self.branch_cut_angle;
        let arg = base + (psi.arg() - base).rem_euclid(TAU);
        let rho = psi.norm().powf(1.0 / n as f64);
        let angle = arg / n as f64 + TAU * sheet as f64 / n as f64;
        Ok(Complex::from_polar(rho, angle))
    }

    /// The flat metric restricted to the fundamental sector, reported in
    /// cone coordinates. `z` must be a nonzero point with argument inside
    /// `[0, 2 pi / nu)`.
    pub fn restricted_metric(&self, z: Complex) -> Result<MetricSample> {
        let nu = self.index.value();
        let rho = z.norm();
        if rho == 0.0 {
            return Err(Error::ApexSingular);
        }
        let phi = z.arg().rem_euclid(TAU);
        let phi = if phi == TAU { 0.0 } else { phi };
        if phi >= TAU / nu {
            return Err(Error::InvalidParameter(format!(
                "point at angle {phi} lies outside the fundamental sector [0, {})",
                TAU / nu
            )));
        }
        let rho_nu = rho.powf(nu);
        let conformal_factor = rho_nu.powf(2.0 * (1.0 - nu) / nu) / (nu * nu);
        Ok(MetricSample {
            at: self.covering_map(z),
            conformal_factor,
            metric_components: [
                [conformal_factor, 0.0],
                [0.0, conformal_factor * rho_nu * rho_nu],
            ],
            direct_components: [[1.0, 0.0], [0.0, rho * rho / (nu * nu)]],
        })
    }

    /// `2 pi (nu - 1) / nu`: the angle missing around the apex (negative for
    /// `nu < 1`, where the cone has an angle surplus).
    pub fn angle_deficit(&self) -> f64 {
        let nu = self.index.value();
        TAU * (nu - 1.0) / nu
    }

    /// Flow in cone coordinates: `psi(tau) = e^{i omega nu tau} psi`.
    pub fn flow(&self, psi: Complex, tau: f64, omega: f64) -> Complex {
        Complex::from_polar(1.0, omega * self.index.value() * tau) * psi
    }

    /// Cone Hamiltonian `hbar (omega nu) |psi|^2`.
    pub fn hamiltonian(&self, psi: Complex, omega: f64, hbar: f64) -> f64 {
        hbar * omega * self.index.value() * psi.norm_sqr()
    }

    /// Holomorphic component `i omega nu psi` of the cone vector field.
    pub fn vector_field(&self, psi: Complex, omega: f64) -> Complex {
        Complex::I * omega * self.index.value() * psi
    }

    /// Jump of the covering map across the branch cut at radius `rho`,
    /// evaluated from the two one-sided branch values; closed form
    /// `rho^nu |e^{2 pi i nu} - 1|`, zero (to rounding) exactly when the
    /// index is an integer.
    pub fn branch_discontinuity(&self, rho: f64) -> Result<f64> {
        branch_discontinuity(self.index.value(), rho, self.branch_cut_angle)
    }
}

/// Metric data at one cone point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSample {
    /// Cone coordinate of the sampled point.
    pub at: Complex,
    /// Conformal factor `(1/nu^2) rho_nu^{2(1-nu)/nu}` multiplying the flat
    /// form `d rho_nu^2 + rho_nu^2 d phi_nu^2`.
    pub conformal_factor: f64,
    /// Components in cone coordinates `(rho_nu, phi_nu)`.
    pub metric_components: [[f64; 2]; 2],
    /// Equivalent direct form in `(rho, phi_nu)` coordinates:
    /// `drho^2 + (rho^2 / nu^2) dphi_nu^2`.
    pub direct_components: [[f64; 2]; 2],
}

/// Branch-cut jump `|psi(rho e^{i(cut + 2 pi)^-}) - psi(rho e^{i cut^+})|` of
/// `z^gamma`, computed from the two one-sided values.
pub fn branch_discontinuity(gamma: f64, rho: f64, branch_cut_angle: f64) -> Result<f64> {
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "exponent must be positive and finite, got {gamma}"
        )));
    }
    if !rho.is_finite() || rho <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "radius must be positive and finite, got {rho}"
        )));
    }
    let log_rho = rho.ln();
    let above = (gamma * Complex::new(log_rho, branch_cut_angle)).exp();
    let below = (gamma * Complex::new(log_rho, branch_cut_angle + TAU)).exp();
    Ok((below - above).norm())
}

/// Arc length of the cone circle at plane radius `rho`, integrated
/// numerically from the direct-form metric sampled along the circle; the
/// exact value is `2 pi rho / nu`.
pub fn circumference(cone: &ConeSpace, rho: f64, segments: usize) -> Result<f64> {
    if rho <= 0.0 || !rho.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "radius must be positive and finite, got {rho}"
        )));
    }
    if segments == 0 {
        return Err(Error::InvalidParameter(
            "circumference needs at least one segment".into(),
        ));
    }
    let nu = cone.index().value();
    let step = TAU / segments as f64;
    let mut total = 0.0;
    for k in 0..segments {
        // Midpoint of the k-th angular segment, mapped back into the sector.
        let phi_nu = (k as f64 + 0.5) * step;
        let z = Complex::from_polar(rho, phi_nu / nu);
        let sample = cone.restricted_metric(z)?;
        total += sample.direct_components[1][1].sqrt() * step;
    }
    Ok(total)
}

/// Gaussian curvature of the restricted metric at plane radius `rho`,
/// estimated by a second difference of `ln` of the conformal factor on a
/// logarithmic radial grid: for a radial conformal metric
/// `K = -(Lap ln Lambda) / (2 Lambda)` with
/// `Lap f = d^2 f / ds^2 / rho_nu^2` at `s = ln rho_nu`. Away from the apex
/// the cone is flat, so this estimate vanishes to differencing accuracy.
pub fn gaussian_curvature_estimate(cone: &ConeSpace, rho: f64, log_step: f64) -> Result<f64> {
    if !(log_step > 0.0) || !log_step.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "log step must be positive and finite, got {log_step}"
        )));
    }
    let nu = cone.index().value();
    let factor_at = |r: f64| -> Result<f64> {
        let sample = cone.restricted_metric(Complex::new(r, 0.0))?;
        Ok(sample.conformal_factor.ln())
    };
    // rho_nu e^{+-h} corresponds to rho e^{+-h/nu} in the plane.
    let up = factor_at(rho * (log_step / nu).exp())?;
    let mid = factor_at(rho)?;
    let down = factor_at(rho * (-log_step / nu).exp())?;
    let second = (up - 2.0 * mid + down) / (log_step * log_step);
    let rho_nu = rho.powf(nu);
    let lambda = rho_nu.powf(2.0 * (1.0 - nu) / nu) / (nu * nu);
    Ok(-second / (2.0 * lambda * rho_nu * rho_nu))
}
