//! Polar quadrature for integrals of the form
//! `(1/pi) \int f(z) e^{-|z|^2} rho drho dphi`.
//!
//! The substitution `u = rho^2` turns the radial part into a Gauss-Laguerre
//! integral with weight `e^{-u}`; the angular part uses a uniform grid, for
//! which the trapezoid sum is exact on trigonometric polynomials. With the
//! node counts required by [`QuadratureSpec`] the rule is exact (up to
//! rounding) on every integrand that appears in the inner products of
//! truncated holomorphic states.
//!
//! The overall `1/pi` matches the convention in which the constant function
//! has unit norm; see [`crate::bargmann`].
//!
//! Summation order is fixed: angular index ascending within each radial row,
//! then radial rows ascending. The `parallel` feature distributes rows over
//! threads but reduces the per-row partials in that same order, so results
//! are bit-identical to the `_seq` variants.

use crate::exec;
use crate::{Complex, Error, Result};
use std::f64::consts::{PI, TAU};

/// Node counts for the polar rule.
///
/// For states of degree at most `N` the invariants are
/// `radial_nodes >= N + 1` (Laguerre exactness up to `u^{2N}` and beyond) and
/// `angular_nodes >= 2N + 2` (no harmonic of a degree-`N` pair product
/// aliases to zero frequency).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
}

impl QuadratureSpec {
    pub fn new(radial_nodes: usize, angular_nodes: usize) -> Result<Self> {
        if radial_nodes == 0 {
            return Err(Error::InvalidParameter(
                "radial node count must be at least 1".into(),
            ));
        }
        if angular_nodes < 2 {
            return Err(Error::InvalidParameter(
                "angular node count must be at least 2".into(),
            ));
        }
        Ok(Self {
            radial_nodes,
            angular_nodes,
        })
    }

    /// The smallest spec that resolves states truncated at degree `n`.
    pub fn for_truncation(n: usize) -> Self {
        Self {
            radial_nodes: n + 1,
            angular_nodes: 2 * n + 2,
        }
    }

    pub fn supports_degree(&self, degree: usize) -> bool {
        self.radial_nodes >= degree + 1 && self.angular_nodes >= 2 * degree + 2
    }

    pub(crate) fn require_degree(&self, degree: usize) -> Result<()> {
        if self.supports_degree(degree) {
            Ok(())
        } else {
            Err(Error::QuadratureUnderresolved {
                degree,
                needed_radial: degree + 1,
                needed_angular: 2 * degree + 2,
                radial: self.radial_nodes,
                angular: self.angular_nodes,
            })
        }
    }
}

/// Gauss-Laguerre rule for `\int_0^inf f(u) e^{-u} du`: `n` nodes integrate
/// polynomials up to degree `2n - 1` exactly.
///
/// Nodes are found by Newton iteration on the degree-`n` Laguerre polynomial
/// evaluated through its three-term recurrence, with the usual staggered
/// initial guesses; weights come from `w_i = x_i / ((n+1) L_{n+1}(x_i))^2`.
#[derive(Debug, Clone)]
pub struct GaussLaguerre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLaguerre {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "Laguerre rule needs at least one node".into(),
            ));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        let mut z = 0.0f64;
        for i in 0..n {
            z = match i {
                0 => 3.0 / (1.0 + 2.4 * nf),
                1 => z + 15.0 / (1.0 + 2.5 * nf),
                _ => {
                    let ai = (i - 1) as f64;
                    z + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - nodes[i - 2])
                }
            };
            let mut converged = false;
            for _ in 0..100 {
                let (value, prev) = laguerre_pair(n, z);
                // L_n'(z) = n (L_n(z) - L_{n-1}(z)) / z
                let derivative = nf * (value - prev) / z;
                let z_old = z;
                z -= value / derivative;
                if (z - z_old).abs() <= 1e-13 * z.abs() {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::InvalidParameter(format!(
                    "Laguerre node {i} of {n} did not converge"
                )));
            }
            // One polishing step; past this point Newton cycles within a few
            // ulps of the root.
            let (value, prev) = laguerre_pair(n, z);
            let derivative = nf * (value - prev) / z;
            z -= value / derivative;
            nodes[i] = z;
            let (next, _) = laguerre_pair(n + 1, z);
            let scaled = (n as f64 + 1.0) * next;
            weights[i] = z / (scaled * scaled);
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `sum_i w_i f(x_i)`, the rule applied to `f`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// The rule applied to `u^k`; exact value is `k!` for `k <= 2n - 1`.
    pub fn moment(&self, k: usize) -> f64 {
        self.integrate(|u| u.powi(k as i32))
    }
}

/// Evaluates `(L_n(x), L_{n-1}(x))` by the recurrence
/// `(k+1) L_{k+1} = (2k + 1 - x) L_k - k L_{k-1}`.
fn laguerre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut current = 1.0f64;
    let mut previous = 0.0f64;
    for k in 1..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0 - x) * current - (kf - 1.0) * previous) / kf;
        previous = current;
        current = next;
    }
    (current, previous)
}

/// The full polar rule: Gauss-Laguerre in `u = rho^2`, uniform angles.
#[derive(Debug, Clone)]
pub struct PolarQuadrature {
    spec: QuadratureSpec,
    radial: GaussLaguerre,
    radii: Vec<f64>,
    phases: Vec<Complex>,
}

impl PolarQuadrature {
    pub fn new(spec: QuadratureSpec) -> Result<Self> {
        let radial = GaussLaguerre::new(spec.radial_nodes)?;
        let radii = radial.nodes().iter().map(|&u| u.sqrt()).collect();
        let m = spec.angular_nodes;
        let phases = (0..m)
            .map(|j| Complex::from_polar(1.0, TAU * j as f64 / m as f64))
            .collect();
        Ok(Self {
            spec,
            radial,
            radii,
            phases,
        })
    }

    pub fn spec(&self) -> QuadratureSpec {
        self.spec
    }

    pub fn radial_rule(&self) -> &GaussLaguerre {
        &self.radial
    }

    /// Grid point `sqrt(u_i) e^{i phi_j}`.
    pub fn point(&self, i: usize, j: usize) -> Complex {
        self.radii[i] * self.phases[j]
    }

    /// Samples `f` on the grid, radial rows distributed over threads.
    pub fn sample<F>(&self, f: F) -> GridFunction
    where
        F: Fn(Complex) -> Complex + Sync,
    {
        let m = self.spec.angular_nodes;
        let rows = exec::map_indexed(self.spec.radial_nodes, |i| {
            (0..m).map(|j| f(self.point(i, j))).collect::<Vec<_>>()
        });
        GridFunction::from_rows(self.spec, rows)
    }

    /// Sequential reference implementation of [`sample`](Self::sample).
    pub fn sample_seq<F>(&self, f: F) -> GridFunction
    where
        F: Fn(Complex) -> Complex,
    {
        let m = self.spec.angular_nodes;
        let rows = (0..self.spec.radial_nodes)
            .map(|i| (0..m).map(|j| f(self.point(i, j))).collect::<Vec<_>>())
            .collect();
        GridFunction::from_rows(self.spec, rows)
    }

    fn row_partial(&self, a: &GridFunction, b: &GridFunction, i: usize) -> Complex {
        let m = self.spec.angular_nodes;
        let mut angular = Complex::new(0.0, 0.0);
        for j in 0..m {
            angular += a.value(i, j).conj() * b.value(i, j);
        }
        angular * (TAU / m as f64) * (0.5 * self.radial.weights()[i])
    }

    /// `(1/pi) \int conj(a) b e^{-|z|^2} rho drho dphi` over the grid.
    /// Radial rows run in parallel; their partials are reduced in row order.
    pub fn integrate_product(&self, a: &GridFunction, b: &GridFunction) -> Result<Complex> {
        self.check_grids(a, b)?;
        let partials = exec::map_indexed(self.spec.radial_nodes, |i| self.row_partial(a, b, i));
        Ok(partials.into_iter().sum::<Complex>() / PI)
    }

    /// Sequential reference implementation of
    /// [`integrate_product`](Self::integrate_product); the parallel path is
    /// bit-identical to this one.
    pub fn integrate_product_seq(&self, a: &GridFunction, b: &GridFunction) -> Result<Complex> {
        self.check_grids(a, b)?;
        let partials: Vec<Complex> = (0..self.spec.radial_nodes)
            .map(|i| self.row_partial(a, b, i))
            .collect();
        Ok(partials.into_iter().sum::<Complex>() / PI)
    }

    fn check_grids(&self, a: &GridFunction, b: &GridFunction) -> Result<()> {
        for g in [a, b] {
            if g.spec() != self.spec {
                return Err(Error::InvalidParameter(
                    "grid sampled on a different quadrature spec".into(),
                ));
            }
        }
        Ok(())
    }

    /// Inner product of raw (unnormalized) monomials `z^n` and `z^m`.
    ///
    /// On the uniform angular grid the trapezoid sum of the harmonic
    /// `e^{i(m-n)phi}` vanishes identically unless `m - n` is a multiple of
    /// the node count, which the resolution guard reduces to `m = n`; the
    /// radial factor is then the Laguerre moment, so the diagonal reproduces
    /// `n!` to quadrature accuracy and the off-diagonal entries are exact
    /// zeros.
    pub fn monomial_inner_product(&self, n: usize, m: usize) -> Result<f64> {
        self.spec.require_degree(n.max(m))?;
        if n != m {
            // (m - n) mod angular_nodes != 0 is guaranteed by the guard.
            return Ok(0.0);
        }
        Ok(self.radial.moment(n))
    }
}

/// Complex samples on the polar grid of a [`PolarQuadrature`], stored row
/// major: index `i * angular_nodes + j` holds the value at
/// `sqrt(u_i) e^{i phi_j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    spec: QuadratureSpec,
    values: Vec<Complex>,
}

impl GridFunction {
    fn from_rows(spec: QuadratureSpec, rows: Vec<Vec<Complex>>) -> Self {
        let mut values = Vec::with_capacity(spec.radial_nodes * spec.angular_nodes);
        for row in rows {
            debug_assert_eq!(row.len(), spec.angular_nodes);
            values.extend(row);
        }
        Self { spec, values }
    }

    pub fn spec(&self) -> QuadratureSpec {
        self.spec
    }

    pub fn value(&self, i: usize, j: usize) -> Complex {
        self.values[i * self.spec.angular_nodes + j]
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    /// Largest `|f(zeta z) - f(z)|` over the grid for the order-`n` rotation,
    /// realized as a cyclic shift of the angular index. Errors unless `n`
    /// divides the angular node count.
    pub fn max_rotation_defect(&self, n: usize) -> Result<f64> {
        let m = self.spec.angular_nodes;
        if n == 0 || m % n != 0 {
            return Err(Error::GridNotCompatible {
                n,
                angular_nodes: m,
            });
        }
        let shift = m / n;
        let mut worst = 0.0f64;
        for i in 0..self.spec.radial_nodes {
            for j in 0..m {
                let defect = (self.value(i, (j + shift) % m) - self.value(i, j)).norm();
                worst = worst.max(defect);
            }
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_rule_matches_closed_form() {
        let rule = GaussLaguerre::new(2).unwrap();
        let s = 2.0f64.sqrt();
        assert!((rule.nodes()[0] - (2.0 - s)).abs() < 1e-14);
        assert!((rule.nodes()[1] - (2.0 + s)).abs() < 1e-14);
        assert!((rule.weights()[0] - (2.0 + s) / 4.0).abs() < 1e-14);
        assert!((rule.weights()[1] - (2.0 - s) / 4.0).abs() < 1e-14);
    }

    #[test]
    fn five_point_rule_matches_tabulated_values() {
        let rule = GaussLaguerre::new(5).unwrap();
        let nodes = [
            0.263_560_319_718_141_1,
            1.413_403_059_106_516_8,
            3.596_425_771_040_722,
            7.085_810_005_858_837,
            12.640_800_844_275_782,
        ];
        let weights = [
            5.217_556_105_828_086e-1,
            3.986_668_110_831_759e-1,
            7.594_244_968_170_76e-2,
            3.611_758_679_922_048e-3,
            2.336_997_238_577_623e-5,
        ];
        for i in 0..5 {
            assert!((rule.nodes()[i] - nodes[i]).abs() < 1e-12, "node {i}");
            assert!(
                ((rule.weights()[i] - weights[i]) / weights[i]).abs() < 1e-11,
                "weight {i}"
            );
        }
    }

    #[test]
    fn moments_reproduce_factorials() {
        // k! oracle by exact integer product.
        let factorial = |k: usize| (1..=k).map(|v| v as f64).product::<f64>().max(1.0);
        for n in [21, 33, 40] {
            let rule = GaussLaguerre::new(n).unwrap();
            for k in 0..=(2 * n - 1).min(40) {
                let rel = (rule.moment(k) - factorial(k)).abs() / factorial(k);
                assert!(rel < 1e-12, "n = {n}, k = {k}, rel = {rel:e}");
            }
        }
    }

    #[test]
    fn gaussian_plane_integral_is_pi() {
        // The raw measure integrates e^{-rho^2} rho drho dphi to pi; the
        // radial rule contributes 1/2 of each Laguerre weight.
        let rule = GaussLaguerre::new(8).unwrap();
        let raw = TAU * 0.5 * rule.moment(0);
        assert!((raw - PI).abs() < 1e-14);
    }

    #[test]
    fn spec_validation_and_degree_support() {
        assert!(QuadratureSpec::new(0, 4).is_err());
        assert!(QuadratureSpec::new(3, 1).is_err());
        let spec = QuadratureSpec::for_truncation(12);
        assert_eq!(spec.radial_nodes, 13);
        assert_eq!(spec.angular_nodes, 26);
        assert!(spec.supports_degree(12));
        assert!(!spec.supports_degree(13));
    }

    #[test]
    fn monomial_products_diagonal_and_off_diagonal() {
        let quad = PolarQuadrature::new(QuadratureSpec::for_truncation(12)).unwrap();
        let factorial = |k: usize| (1..=k).map(|v| v as f64).product::<f64>().max(1.0);
        for n in 0..=12 {
            let diag = quad.monomial_inner_product(n, n).unwrap();
            assert!((diag - factorial(n)).abs() / factorial(n) < 1e-12);
        }
        assert_eq!(quad.monomial_inner_product(2, 5).unwrap(), 0.0);
        assert!(matches!(
            quad.monomial_inner_product(13, 2),
            Err(Error::QuadratureUnderresolved { .. })
        ));
    }

    #[test]
    fn parallel_and_sequential_paths_are_bit_identical() {
        let quad = PolarQuadrature::new(QuadratureSpec::for_truncation(9)).unwrap();
        let f = |z: Complex| z * z + Complex::new(0.3, -0.1) * z.conj() + 1.0;
        let g = |z: Complex| z.powu(3) - Complex::I * z;
        let fa = quad.sample(f);
        let fs = quad.sample_seq(f);
        assert_eq!(fa, fs);
        let ga = quad.sample(g);
        let par = quad.integrate_product(&fa, &ga).unwrap();
        let seq = quad.integrate_product_seq(&fs, &ga).unwrap();
        assert_eq!(par, seq);
    }

    #[test]
    fn rotation_defect_requires_compatible_grid() {
        let quad = PolarQuadrature::new(QuadratureSpec::new(4, 12).unwrap()).unwrap();
        let grid = quad.sample(|z| z.powu(3));
        // 12 angular nodes: orders 3 and 4 are compatible, 5 is not.
        assert!(grid.max_rotation_defect(3).unwrap() < 1e-12);
        assert!(grid.max_rotation_defect(4).unwrap() > 0.1);
        assert!(matches!(
            grid.max_rotation_defect(5),
            Err(Error::GridNotCompatible { .. })
        ));
    }

    #[test]
    fn grid_mismatch_is_rejected() {
        let q1 = PolarQuadrature::new(QuadratureSpec::new(4, 12).unwrap()).unwrap();
        let q2 = PolarQuadrature::new(QuadratureSpec::new(5, 12).unwrap()).unwrap();
        let a = q1.sample(|z| z);
        let b = q2.sample(|z| z);
        assert!(q1.integrate_product(&a, &b).is_err());
    }
}
