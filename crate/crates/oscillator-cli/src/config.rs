//! Experiment configuration: defaults, the strict key-value file format, and
//! the named tolerance map.
//!
//! The file format is flat `key = value` lines grouped under `[section]`
//! headers, with `#` comments. Parsing is strict: unknown sections, unknown
//! keys, duplicate keys, and malformed values are all errors, so a typo can
//! never silently weaken a verification run. Every key is optional and
//! defaults to the values documented in the README.

use anyhow::{anyhow, bail, Context, Result};
use oscillator_core::phase_space::OscillatorParams;
use oscillator_core::quadrature::QuadratureSpec;
use std::path::{Path, PathBuf};

/// Everything an experiment run needs. A fixed seed makes every output byte
/// reproducible.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub oscillator: OscillatorParams,
    /// Integer cone orders exercised by the period and geometry experiments.
    pub cone_integers: Vec<usize>,
    /// Non-integer exponents for the cone-geometry deficits.
    pub geometry_gammas: Vec<f64>,
    /// Non-integer exponents for the multivalued-eigenstate experiment.
    pub fractional_gammas: Vec<f64>,
    /// Maximum coefficient degree of states.
    pub truncation: usize,
    pub quadrature: QuadratureSpec,
    /// Highest degree checked against the factorial norms.
    pub norms_max_degree: usize,
    pub figures: FigureSettings,
    pub tolerances: Tolerances,
    pub output_dir: PathBuf,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct FigureSettings {
    /// Rotation order marked on the trajectory figure.
    pub trajectory_order: usize,
    /// Cone order of the sector-to-cone figure.
    pub sector_order: usize,
    /// Basis state shown in the spectrum figure.
    pub spectrum_basis: usize,
}

impl Default for FigureSettings {
    fn default() -> Self {
        Self {
            trajectory_order: 6,
            sector_order: 4,
            spectrum_basis: 2,
        }
    }
}

/// Named tolerances, one per verified claim family. All strictly positive.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Flow modulus/period conservation (relative).
    pub flow: f64,
    /// Agreement of the quadratic and holomorphic Hamiltonian forms
    /// (relative).
    pub hamiltonian_forms: f64,
    /// Richardson check of the vector field against the flow derivative.
    pub vector_field: f64,
    /// Final error of the Runge-Kutta cross-check at 1000 steps.
    pub rk4_final: f64,
    /// Half-width of the accepted window around a measured convergence
    /// order.
    pub order_window: f64,
    /// Reduced-period return of the cone flow.
    pub period: f64,
    /// Energy rescaling law (exact arithmetic; tolerance guards rounding).
    pub energy_law: f64,
    /// Phase return of degree-k content after the reduced period.
    pub phase_return: f64,
    /// Covering/flow conjugation sweep.
    pub conjugation: f64,
    /// Preimage-orbit set matching.
    pub orbit_match: f64,
    /// Angle deficit from the integrated circumference.
    pub deficit: f64,
    /// Identity between the direct and cone-coordinate metric forms
    /// (relative).
    pub conformal_identity: f64,
    /// Numerically estimated curvature away from the apex.
    pub flatness: f64,
    /// Diagonal of the raw Gram matrix vs factorials (relative).
    pub norms_diagonal: f64,
    /// Off-diagonal raw Gram entries (absolute).
    pub gram_offdiagonal: f64,
    /// Operator eigenvalues by coefficient arithmetic (exact; guard).
    pub spectrum_exact: f64,
    /// Operator eigenvalues recovered by numerical differentiation.
    pub spectrum_differenced: f64,
    /// Eigen-relation residual of the covering-map states.
    pub eigen_residual: f64,
    /// Branch-cut jump against its closed form (absolute).
    pub branch_jump: f64,
    /// Probability normalization and its conservation under evolution.
    pub parseval: f64,
    /// Projection/evolution commutation (exact; guard).
    pub projection: f64,
    /// Coefficient phases of evolution against the exponentiated operator.
    pub spectral_consistency: f64,
    /// Zero-point offset between the classical and quantum energy columns.
    pub zero_point: f64,
    /// Grid-sampled invariance defect.
    pub grid_invariance: f64,
    /// Agreement of the grid quadrature with the analytic inner product for
    /// normalized states.
    pub quadrature_agreement: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            flow: 1e-12,
            hamiltonian_forms: 1e-12,
            vector_field: 1e-9,
            rk4_final: 1e-10,
            order_window: 0.1,
            period: 1e-12,
            energy_law: 1e-15,
            phase_return: 1e-12,
            conjugation: 1e-11,
            orbit_match: 1e-12,
            deficit: 1e-9,
            conformal_identity: 1e-10,
            flatness: 1e-6,
            norms_diagonal: 1e-9,
            gram_offdiagonal: 1e-10,
            spectrum_exact: 1e-15,
            spectrum_differenced: 1e-8,
            eigen_residual: 1e-6,
            branch_jump: 1e-10,
            parseval: 1e-12,
            projection: 1e-15,
            spectral_consistency: 1e-13,
            zero_point: 1e-12,
            grid_invariance: 1e-10,
            quadrature_agreement: 2e-10,
        }
    }
}

impl Tolerances {
    fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value > 0.0) || !value.is_finite() {
            bail!("tolerance `{key}` must be positive and finite, got {value}");
        }
        let slot = match key {
            "flow" => &mut self.flow,
            "hamiltonian_forms" => &mut self.hamiltonian_forms,
            "vector_field" => &mut self.vector_field,
            "rk4_final" => &mut self.rk4_final,
            "order_window" => &mut self.order_window,
            "period" => &mut self.period,
            "energy_law" => &mut self.energy_law,
            "phase_return" => &mut self.phase_return,
            "conjugation" => &mut self.conjugation,
            "orbit_match" => &mut self.orbit_match,
            "deficit" => &mut self.deficit,
            "conformal_identity" => &mut self.conformal_identity,
            "flatness" => &mut self.flatness,
            "norms_diagonal" => &mut self.norms_diagonal,
            "gram_offdiagonal" => &mut self.gram_offdiagonal,
            "spectrum_exact" => &mut self.spectrum_exact,
            "spectrum_differenced" => &mut self.spectrum_differenced,
            "eigen_residual" => &mut self.eigen_residual,
            "branch_jump" => &mut self.branch_jump,
            "parseval" => &mut self.parseval,
            "projection" => &mut self.projection,
            "spectral_consistency" => &mut self.spectral_consistency,
            "zero_point" => &mut self.zero_point,
            "grid_invariance" => &mut self.grid_invariance,
            "quadrature_agreement" => &mut self.quadrature_agreement,
            _ => bail!("unknown tolerance key `{key}`"),
        };
        *slot = value;
        Ok(())
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            oscillator: OscillatorParams::natural(),
            cone_integers: (1..=8).collect(),
            geometry_gammas: vec![0.5, 1.5, 2.5],
            fractional_gammas: vec![0.5, 1.7, 2.5],
            truncation: 32,
            quadrature: QuadratureSpec::for_truncation(32),
            norms_max_degree: 20,
            figures: FigureSettings::default(),
            tolerances: Tolerances::default(),
            output_dir: PathBuf::from("out"),
            seed: 42,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text)
    }

    /// Parses the strict key-value format over the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = Self::default();
        let mut section = String::new();
        let mut seen: Vec<String> = Vec::new();

        // Raw oscillator constants are collected first so that r0 stays
        // consistent however many of them the file overrides.
        let (mut mass, mut omega, mut hbar) = (1.0f64, 1.0f64, 1.0f64);

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| anyhow!("line {}: malformed section header", lineno + 1))?
                    .trim();
                match name {
                    "oscillator" | "cones" | "bargmann" | "figures" | "run" | "tolerances" => {
                        section = name.to_string();
                    }
                    _ => bail!("line {}: unknown section `[{name}]`", lineno + 1),
                }
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected `key = value`", lineno + 1))?;
            let key = key.trim();
            let value = value.trim();
            let qualified = format!("{section}.{key}");
            if seen.contains(&qualified) {
                bail!("line {}: duplicate key `{qualified}`", lineno + 1);
            }
            seen.push(qualified.clone());

            let parse_f64 = || -> Result<f64> {
                value
                    .parse::<f64>()
                    .with_context(|| format!("line {}: `{key}` expects a number", lineno + 1))
            };
            let parse_usize = || -> Result<usize> {
                value
                    .parse::<usize>()
                    .with_context(|| format!("line {}: `{key}` expects an integer", lineno + 1))
            };

            match (section.as_str(), key) {
                ("oscillator", "mass") => mass = parse_f64()?,
                ("oscillator", "omega") => omega = parse_f64()?,
                ("oscillator", "hbar") => hbar = parse_f64()?,
                ("cones", "integers") => {
                    config.cone_integers = parse_list::<usize>(value)
                        .with_context(|| format!("line {}: `integers`", lineno + 1))?;
                }
                ("cones", "geometry_gammas") => {
                    config.geometry_gammas = parse_list::<f64>(value)
                        .with_context(|| format!("line {}: `geometry_gammas`", lineno + 1))?;
                }
                ("cones", "fractional_gammas") => {
                    config.fractional_gammas = parse_list::<f64>(value)
                        .with_context(|| format!("line {}: `fractional_gammas`", lineno + 1))?;
                }
                ("bargmann", "truncation") => config.truncation = parse_usize()?,
                ("bargmann", "radial_nodes") => config.quadrature.radial_nodes = parse_usize()?,
                ("bargmann", "angular_nodes") => config.quadrature.angular_nodes = parse_usize()?,
                ("bargmann", "norms_max_degree") => config.norms_max_degree = parse_usize()?,
                ("figures", "trajectory_order") => {
                    config.figures.trajectory_order = parse_usize()?;
                }
                ("figures", "sector_order") => config.figures.sector_order = parse_usize()?,
                ("figures", "spectrum_basis") => config.figures.spectrum_basis = parse_usize()?,
                ("run", "seed") => {
                    config.seed = value.parse::<u64>().with_context(|| {
                        format!("line {}: `seed` expects an unsigned integer", lineno + 1)
                    })?;
                }
                ("run", "output_dir") => config.output_dir = PathBuf::from(value),
                ("tolerances", key) => {
                    let v = parse_f64()?;
                    config.tolerances.set(key, v)?;
                }
                ("", key) => bail!("line {}: key `{key}` outside any section", lineno + 1),
                (_, key) => bail!(
                    "line {}: unknown key `{key}` in section `[{section}]`",
                    lineno + 1
                ),
            }
        }

        config.oscillator = OscillatorParams::new(mass, omega, hbar)
            .map_err(|e| anyhow!("invalid oscillator constants: {e}"))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cone_integers.is_empty() {
            bail!("at least one integer cone order is required");
        }
        if self.cone_integers.iter().any(|&n| n == 0) {
            bail!("cone orders must be at least 1");
        }
        for &g in self.geometry_gammas.iter().chain(&self.fractional_gammas) {
            if !(g > 0.0) || !g.is_finite() {
                bail!("cone exponents must be positive and finite, got {g}");
            }
            if (g - g.round()).abs() <= 1e-12 {
                bail!("cone exponent {g} is an integer; list it under `integers`");
            }
        }
        if !self.quadrature.supports_degree(self.truncation) {
            bail!(
                "quadrature ({} radial, {} angular) cannot resolve truncation {}: \
                 needs at least {} radial and {} angular nodes",
                self.quadrature.radial_nodes,
                self.quadrature.angular_nodes,
                self.truncation,
                self.truncation + 1,
                2 * self.truncation + 2
            );
        }
        if self.norms_max_degree > self.truncation {
            bail!(
                "norms_max_degree {} exceeds truncation {}",
                self.norms_max_degree,
                self.truncation
            );
        }
        if self.figures.spectrum_basis > self.truncation {
            bail!(
                "spectrum_basis {} exceeds truncation {}",
                self.figures.spectrum_basis,
                self.truncation
            );
        }
        if self.figures.sector_order == 0 || self.figures.trajectory_order == 0 {
            bail!("figure orders must be at least 1");
        }
        Ok(())
    }
}

fn parse_list<T: std::str::FromStr>(value: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    let items: Result<Vec<T>> = value
        .split(',')
        .map(|piece| {
            piece
                .trim()
                .parse::<T>()
                .map_err(|e| anyhow!("bad list item `{}`: {e}", piece.trim()))
        })
        .collect();
    let items = items?;
    if items.is_empty() {
        bail!("list must not be empty");
    }
    Ok(items)
}
