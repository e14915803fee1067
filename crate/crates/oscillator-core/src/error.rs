use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integration requires at least one step")]
    ZeroSteps,

    #[error("grid not Z_n-compatible: {angular_nodes} angular nodes, order {n}")]
    GridNotCompatible { n: usize, angular_nodes: usize },

    #[error(
        "quadrature underresolved: degree {degree} needs at least {needed_radial} radial and \
         {needed_angular} angular nodes (rule has {radial}/{angular})"
    )]
    QuadratureUnderresolved {
        degree: usize,
        needed_radial: usize,
        needed_angular: usize,
        radial: usize,
        angular: usize,
    },

    #[error("coefficient degree {degree} exceeds truncation {truncation}")]
    DegreeExceedsTruncation { degree: usize, truncation: usize },

    #[error("zero state has no spectral decomposition")]
    ZeroState,

    #[error("probe point at the origin or on the branch cut")]
    ProbeOnBranchCut,

    #[error("sheet {sheet} out of range for a covering of degree {degree}")]
    SheetOutOfRange { sheet: usize, degree: usize },

    #[error("operation requires an integer cone index")]
    FractionalIndex,

    #[error("metric is singular at the cone apex")]
    ApexSingular,
}

pub type Result<T> = std::result::Result<T, Error>;
